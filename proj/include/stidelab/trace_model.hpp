#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stidelab {

/// One event of a trace, e.g. a system-call number. Meaning is dataset-scoped.
using Symbol = std::uint32_t;
using SymbolView = std::span<const Symbol>;

/// Contiguous events sharing one process identity. No window spans two traces.
struct Trace {
  std::string process_id;
  std::vector<Symbol> events;

  bool operator==(const Trace&) const = default;
};

enum class Role { normal, training, test, intrusive };

std::string_view to_string(Role role);
Role parse_role(std::string_view text);

struct Dataset {
  std::string name;
  Role role = Role::normal;
  std::vector<Trace> traces;

  std::size_t event_count() const;
  std::size_t longest_trace() const;
};

struct DatasetStats {
  std::size_t trace_count = 0;
  std::size_t event_count = 0;
  std::size_t alphabet_size = 0;

  bool operator==(const DatasetStats&) const = default;
};

DatasetStats stats(const Dataset& dataset);

// Trace file formats.
//
//   unm:     one "PID CALL" pair per line; a change of PID starts a new trace,
//            so identical PIDs in non-adjacent runs are distinct traces.
//   generic: one integer per line; one or more blank lines end a trace.
//
// Both accept LF or CRLF line ends. Blank lines are ignored in unm files.
enum class TraceFormat { unm, generic };

std::string_view to_string(TraceFormat format);
TraceFormat parse_format(std::string_view text);

std::vector<Trace> parse_traces(std::istream& in, TraceFormat format);
std::vector<Trace> parse_trace_text(std::string_view text, TraceFormat format);

/// Canonical text form: single-space separated, LF line ends.
std::string serialize_traces(const std::vector<Trace>& traces, TraceFormat format);

/// Reads a trace file from disk. Throws IoError naming the path.
std::vector<Trace> read_trace_file(const std::filesystem::path& path, TraceFormat format);

// Manifest: "key=value" lines, '#' starts a comment line. Required keys are
// `role` and `name`; `file` may repeat and is resolved against the manifest's
// directory. Optional `format` selects the trace format (default unm).
struct Manifest {
  std::string name;
  Role role = Role::normal;
  TraceFormat format = TraceFormat::unm;
  std::vector<std::filesystem::path> files;
};

Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir = {});
Manifest read_manifest(const std::filesystem::path& path);

Dataset load_dataset(const Manifest& manifest);
Dataset load_dataset(const std::filesystem::path& manifest_path);

/// The ⊙ concatenation: b's traces follow a's, each keeping its own identity,
/// so the window sets of the result are the unions of the operands' sets.
Dataset concat(const Dataset& a, const Dataset& b);

/// Symbol tables ("INT NAME" per line) are presentation-only.
using SymbolTable = std::map<Symbol, std::string>;

SymbolTable parse_symbol_table(std::string_view text);
SymbolTable read_symbol_table(const std::filesystem::path& path);

/// Calls `fn(trace_index, end_index, window)` for every length-`length` window
/// lying inside a single trace, in trace order then position order.
template <typename Fn>
void for_each_window(const Dataset& dataset, std::size_t length, Fn&& fn) {
  if (length == 0) return;
  for (std::size_t t = 0; t < dataset.traces.size(); ++t) {
    const auto& events = dataset.traces[t].events;
    if (events.size() < length) continue;
    for (std::size_t end = length - 1; end < events.size(); ++end) {
      fn(t, end, SymbolView(events).subspan(end + 1 - length, length));
    }
  }
}

}  // namespace stidelab

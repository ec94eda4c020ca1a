#include "stidelab/trace_model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "stidelab/error.hpp"

namespace stidelab {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  constexpr std::string_view ws = " \t\r\f\v";
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto begin = s.find_first_not_of(ws, pos);
    if (begin == std::string_view::npos) break;
    auto end = s.find_first_of(ws, begin);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(begin, end - begin));
    pos = end;
  }
  return out;
}

bool all_digits(std::string_view token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Symbol parse_symbol(std::string_view token, std::size_t line) {
  if (!all_digits(token)) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  Symbol value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "integer out of 32-bit range: '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::normal: return "normal";
    case Role::training: return "training";
    case Role::test: return "test";
    case Role::intrusive: return "intrusive";
  }
  return "normal";
}

Role parse_role(std::string_view text) {
  if (text == "normal") return Role::normal;
  if (text == "training") return Role::training;
  if (text == "test") return Role::test;
  if (text == "intrusive") return Role::intrusive;
  throw ValidationError("unknown role '" + std::string(text) + "'");
}

std::size_t Dataset::event_count() const {
  std::size_t n = 0;
  for (const auto& t : traces) n += t.events.size();
  return n;
}

std::size_t Dataset::longest_trace() const {
  std::size_t n = 0;
  for (const auto& t : traces) n = std::max(n, t.events.size());
  return n;
}

DatasetStats stats(const Dataset& dataset) {
  DatasetStats s;
  s.trace_count = dataset.traces.size();
  std::unordered_set<Symbol> alphabet;
  for (const auto& t : dataset.traces) {
    s.event_count += t.events.size();
    alphabet.insert(t.events.begin(), t.events.end());
  }
  s.alphabet_size = alphabet.size();
  return s;
}

std::string_view to_string(TraceFormat format) {
  return format == TraceFormat::unm ? "unm" : "generic";
}

TraceFormat parse_format(std::string_view text) {
  if (text == "unm") return TraceFormat::unm;
  if (text == "generic") return TraceFormat::generic;
  throw ValidationError("unknown trace format '" + std::string(text) + "'");
}

std::vector<Trace> parse_traces(std::istream& in, TraceFormat format) {
  std::vector<Trace> traces;
  std::string raw;
  std::size_t line_no = 0;
  bool open = false;  // generic format: a trace is being filled

  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (format == TraceFormat::unm) {
      if (line.empty()) continue;
      const auto tokens = split_ws(line);
      if (tokens.size() != 2) {
        throw ParseError(line_no, "expected 'PID CALL', got " + std::to_string(tokens.size()) +
                                      " token(s)");
      }
      if (!all_digits(tokens[0])) {
        throw ParseError(line_no, "expected an integer pid, got '" + std::string(tokens[0]) + "'");
      }
      const Symbol call = parse_symbol(tokens[1], line_no);
      if (traces.empty() || traces.back().process_id != tokens[0]) {
        traces.push_back(Trace{std::string(tokens[0]), {}});
      }
      traces.back().events.push_back(call);
    } else {
      if (line.empty()) {
        open = false;
        continue;
      }
      const Symbol call = parse_symbol(line, line_no);
      if (!open) {
        traces.push_back(Trace{std::to_string(traces.size()), {}});
        open = true;
      }
      traces.back().events.push_back(call);
    }
  }
  return traces;
}

std::vector<Trace> parse_trace_text(std::string_view text, TraceFormat format) {
  std::istringstream in{std::string(text)};
  return parse_traces(in, format);
}

std::string serialize_traces(const std::vector<Trace>& traces, TraceFormat format) {
  std::string out;
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const auto& trace = traces[t];
    if (format == TraceFormat::generic && t > 0) out += '\n';
    for (Symbol s : trace.events) {
      if (format == TraceFormat::unm) {
        out += trace.process_id;
        out += ' ';
      }
      out += std::to_string(s);
      out += '\n';
    }
  }
  return out;
}

std::vector<Trace> read_trace_file(const std::filesystem::path& path, TraceFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file '" + path.string() + "'");
  try {
    return parse_traces(in, format);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  Manifest m;
  bool has_role = false;
  bool has_name = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "role") {
      m.role = parse_role(value);
      has_role = true;
    } else if (key == "name") {
      m.name = std::string(value);
      has_name = true;
    } else if (key == "file") {
      if (value.empty()) throw ParseError(line_no, "empty file path");
      std::filesystem::path p{std::string(value)};
      m.files.push_back(p.is_absolute() || base_dir.empty() ? p : base_dir / p);
    } else if (key == "format") {
      m.format = parse_format(value);
    } else {
      throw ParseError(line_no, "unknown manifest key '" + std::string(key) + "'");
    }
  }
  if (!has_role) throw ValidationError("manifest is missing required key 'role'");
  if (!has_name) throw ValidationError("manifest is missing required key 'name'");
  return m;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

Dataset load_dataset(const Manifest& manifest) {
  Dataset d{manifest.name, manifest.role, {}};
  for (const auto& file : manifest.files) {
    auto traces = read_trace_file(file, manifest.format);
    d.traces.insert(d.traces.end(), std::make_move_iterator(traces.begin()),
                    std::make_move_iterator(traces.end()));
  }
  return d;
}

Dataset load_dataset(const std::filesystem::path& manifest_path) {
  return load_dataset(read_manifest(manifest_path));
}

Dataset concat(const Dataset& a, const Dataset& b) {
  Dataset out{a.name + ";" + b.name, a.role, a.traces};
  out.traces.insert(out.traces.end(), b.traces.begin(), b.traces.end());
  return out;
}

SymbolTable parse_symbol_table(std::string_view text) {
  SymbolTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() != 2) throw ParseError(line_no, "expected 'INT NAME'");
    table[parse_symbol(tokens[0], line_no)] = std::string(tokens[1]);
  }
  return table;
}

SymbolTable read_symbol_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open symbol table '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_symbol_table(buf.str());
}

}  // namespace stidelab

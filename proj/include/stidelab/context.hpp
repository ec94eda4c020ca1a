#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stidelab/sequence.hpp"
#include "stidelab/sequence_model.hpp"
#include "stidelab/trace_model.hpp"

namespace stidelab {

/// Per-event foreign sequence lengths of one dataset, one vector per trace.
/// Values lie in 1..cap+1; cap+1 means no foreign suffix within the cap.
struct FslSeries {
  std::size_t cap = 0;
  std::vector<std::vector<std::uint32_t>> traces;
};

/// FSL(e_i): length of the shortest foreign window ending at e_i, never
/// reaching before the trace start. The model's depth levels play the role of
/// the per-length normal models.
std::vector<std::uint32_t> fsl_series(const SequenceModel& normal, SymbolView trace);
FslSeries fsl_series(const SequenceModel& normal, const Dataset& dataset, std::size_t threads = 1);

/// Collects the windows marked by `fsl`, dropping suffix extensions
/// (FSL(e_i) = FSL(e_{i-1}) + 1). The filter restarts at every trace.
SequenceSet harvest_mfs(std::span<const std::uint32_t> fsl, SymbolView trace, std::size_t cap);
SequenceSet harvest_mfs(const FslSeries& series, const Dataset& dataset);

struct SharedMfs {
  std::vector<std::size_t> run_counts;
  SequenceSet shared;
};

/// Intersection of the MFS sets of two or more runs of one intrusion.
SharedMfs shared_mfs(std::span<const SequenceSet> runs);

/// Distinct MFSs across `sets`, by length. Both vectors are indexed by window
/// 0..max_window; cumulative[w] counts MFSs of length <= w.
struct MfsHistogram {
  std::vector<std::size_t> exact;
  std::vector<std::size_t> cumulative;
};

MfsHistogram mfs_count_by_window(std::span<const SequenceSet> sets, std::size_t max_window);

inline constexpr std::int32_t process_separator = -1;
inline constexpr std::int32_t dataset_separator = -4;

struct FsgPoint {
  std::size_t global_idx = 0;
  std::string dataset;
  std::string process;
  std::int64_t event_idx = -1;  // -1 on separator rows
  std::int32_t fsl = 0;

  bool separator() const noexcept { return fsl < 0; }
};

/// FSL values of several datasets laid end to end, with -1 rows between the
/// processes of one dataset and -4 rows between datasets.
struct ForeignSequenceGraph {
  std::size_t cap = 0;
  std::vector<FsgPoint> points;
};

struct FsgInput {
  const Dataset* dataset;
  const FslSeries* series;
};

ForeignSequenceGraph build_fsg(std::span<const FsgInput> inputs);

void write_fsg_csv(std::ostream& out, const ForeignSequenceGraph& graph);
std::string render_fsg_svg(const ForeignSequenceGraph& graph);

}  // namespace stidelab

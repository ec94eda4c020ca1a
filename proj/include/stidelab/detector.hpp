#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "stidelab/sequence.hpp"
#include "stidelab/sequence_core.hpp"
#include "stidelab/trace_model.hpp"

namespace stidelab {

/// Fixed-window normal model: a set of sequences, all of length window().
class StideModel {
 public:
  explicit StideModel(std::size_t window);

  std::size_t window() const noexcept { return window_; }
  std::size_t size() const noexcept { return normal_.size(); }
  bool empty() const noexcept { return normal_.empty(); }

  /// Throws ValidationError if |seq| != window().
  void insert(SymbolView seq);
  bool contains(SymbolView seq) const { return normal_.find(seq) != normal_.end(); }
  bool contains(const Sequence& seq) const { return contains(seq.view()); }

  SequenceSet sequences() const;

 private:
  std::size_t window_;
  std::unordered_set<Sequence, SequenceHash, SequenceEqual> normal_;
};

/// SS(trn, window). A window longer than every trace yields an empty model.
StideModel train(const Dataset& training, std::size_t window);

/// t-stide: keeps windows occurring at least `threshold` times. Thresholds 0
/// and 1 reduce to train().
StideModel train_tstide(const Dataset& training, std::size_t window, std::size_t threshold);

struct TraceScan {
  std::vector<std::uint8_t> flags;  // per event; set at the last event of a foreign window
  std::size_t windows = 0;
  std::size_t mismatches = 0;
  bool too_short = false;  // fewer events than the window
};

struct ScanResult {
  std::size_t window = 0;
  std::vector<TraceScan> traces;
  SequenceSet foreign;  // FS(d | trn, window)
  std::size_t windows = 0;
  std::size_t mismatches = 0;
  std::size_t short_traces = 0;
};

ScanResult scan(const StideModel& model, const Dataset& dataset, std::size_t threads = 1);

/// The four sequence sets of one detection run at a fixed window.
struct DetectionPartition {
  std::size_t window = 0;
  SequenceSet tpss;  // SS(int) - SS(trn)
  SequenceSet fnss;  // SS(int) ∩ SS(trn)
  SequenceSet fpss;  // SS(tst) - SS(trn)
  SequenceSet tnss;  // SS(tst) ∩ SS(trn)
};

DetectionPartition classify(const Dataset& training, const Dataset& test, const Dataset& intrusive,
                            std::size_t window);

/// Some intrusive window is flagged (TPSS non-empty).
bool is_effective(const Dataset& training, const Dataset& intrusive, std::size_t window);
/// No test window is flagged (FPSS empty).
bool is_complete(const Dataset& training, const Dataset& test, std::size_t window);

enum class WindowCase {
  efficient,       // effective and complete
  effective_only,  // window above the completeness bound
  complete_only,   // window below the effectiveness bound
  neither,         // only possible when the efficiency window is empty
};

std::string_view to_string(WindowCase c);

/// [|MFS|min(int | trn), |MSS|min(tst | trn)]: the windows that are both
/// effective and complete.
struct EfficiencyWindow {
  MinLength lo = MinLength::unbounded();
  MinLength hi = MinLength::unbounded();
  std::optional<bool> nonempty;  // nullopt when both bounds are capped

  /// nullopt when a capped bound makes the case undecidable at this window.
  std::optional<WindowCase> classify(std::size_t window) const;
};

EfficiencyWindow efficiency_window(const Dataset& training, const Dataset& test,
                                   const Dataset& intrusive,
                                   std::size_t cap = SequenceModel::default_cap);

/// Tumbling locality frames aligned to each trace start; the last partial frame
/// is kept. A frame alarms when its mismatch count reaches the threshold.
struct LocalityFrameConfig {
  std::size_t frame_length = 20;  // LF, events
  std::size_t threshold = 1;      // LFC, mismatches

  void validate() const;
};

struct FrameCount {
  std::size_t trace_idx = 0;
  std::size_t frame_idx = 0;
  std::size_t mismatches = 0;
  bool alarm = false;
};

struct LfcResult {
  std::vector<FrameCount> frames;
  std::size_t alarms = 0;
  std::size_t short_traces = 0;
};

LfcResult lfc_frames(const ScanResult& scan, const LocalityFrameConfig& config);
LfcResult lfc_scan(const StideModel& model, const Dataset& dataset,
                   const LocalityFrameConfig& config);

/// Fewest mismatches a window of `window` events produces over `count`
/// maximally overlapped MFSs whose shortest member has `mfs_length` events.
constexpr std::size_t overlap_mismatch_floor(std::size_t window, std::size_t mfs_length,
                                             std::size_t count) {
  return window - mfs_length + count;
}

}  // namespace stidelab

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stidelab/sequence_core.hpp"
#include "stidelab/sequence_model.hpp"
#include "stidelab/trace_model.hpp"

namespace stidelab {

/// How ring cut points are placed.
///   trace: cuts snap outward to trace boundaries; the training side takes every
///          trace the arc touches, so no trace is split.
///   event: cuts fall exactly on event indices; cut traces become fragments.
enum class SplitGranularity { trace, event };

std::string_view to_string(SplitGranularity g);
SplitGranularity parse_granularity(std::string_view text);

/// Split positions and sizes as percentages of the normal dataset's events.
struct SplitSpec {
  std::vector<double> positions;
  std::vector<double> sizes;

  /// `steps` values start, start+stride, ...; the default is 1%..99% by 7%.
  static SplitSpec grid(std::size_t steps = 15, double stride = 7.0, double start = 1.0);

  /// Percentages must lie in [0, 100).
  void validate() const;
};

/// An event arc [start, start+length) on the ring of `total` events.
struct RingArc {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t total = 0;

  /// Ring arc in percent, e.g. "[92,100]U[0,84]".
  std::string describe() const;
};

RingArc ring_arc(std::size_t total_events, double position_pct, double size_pct);

struct SplitResult {
  Dataset training;
  Dataset test;
  RingArc arc;
  /// Normal trace indices on each side (trace granularity only).
  std::vector<std::size_t> training_traces;
  std::vector<std::size_t> test_traces;
};

/// Training = wrap-around arc [pos, pos+size), test = the remainder.
/// Throws ValidationError for an empty normal dataset or size >= 100%.
SplitResult split_ring(const Dataset& normal, double position_pct, double size_pct,
                       SplitGranularity granularity = SplitGranularity::trace);

/// |MSS|min(tst | trn) and per-intrusive |MFS|min(int | trn) for one split.
struct SplitCell {
  MinLength mss_min = MinLength::unbounded();
  std::vector<MinLength> mfs_min;
  std::size_t training_events = 0;
  std::size_t test_events = 0;

  friend bool operator==(const SplitCell&, const SplitCell&) = default;
};

/// One cell recomputed from scratch (split, build both models, query). Used for
/// event granularity and as the reference for the incremental grid.
SplitCell analyze_split(const Dataset& normal, std::span<const Dataset> intrusives,
                        double position_pct, double size_pct, std::size_t cap,
                        SplitGranularity granularity);

struct GridOptions {
  std::size_t cap = SequenceModel::default_cap;
  SplitGranularity granularity = SplitGranularity::trace;
  std::size_t threads = 1;
};

/// cells[i][j] for position i and size j. At trace granularity each row is
/// computed incrementally over one shared index of the normal dataset; the
/// values equal analyze_split exactly.
std::vector<std::vector<SplitCell>> analyze_grid(const Dataset& normal,
                                                 std::span<const Dataset> intrusives,
                                                 const SplitSpec& spec,
                                                 const GridOptions& options = {});

/// Capped and unbounded results enter averages as the cap.
double average_value(const MinLength& m, std::size_t cap);

struct MmacPoint {
  double size_pct = 0;
  double mss_avg = 0;
  std::size_t mss_capped = 0;  // cells entering the average at the cap
  std::vector<double> mfs_avg;
  std::vector<std::size_t> mfs_capped;
};

struct MMACCurve {
  std::size_t cap = 0;
  std::vector<std::string> intrusive_names;
  std::vector<MmacPoint> points;  // one per size
};

MMACCurve mmac(const Dataset& normal, std::span<const Dataset> intrusives, const SplitSpec& spec,
               const GridOptions& options = {});

struct MmmCell {
  MinLength mss_min = MinLength::unbounded();
  bool efficient = false;  // |MSS|min >= lambda
  std::size_t training_events = 0;
};

struct CriticalSection {
  std::size_t position_index = 0;
  std::size_t size_index = 0;
  double position_pct = 0;
  double size_pct = 0;
  RingArc arc;
  std::size_t event_count = 0;  // events actually in the training side
  std::size_t lambda = 0;
};

struct MMMatrix {
  SplitSpec spec;
  std::size_t cap = 0;
  std::size_t lambda = 0;
  std::vector<std::vector<MmmCell>> cells;            // [position][size]
  std::vector<CriticalSection> critical_sections;     // at most one per row

  /// cell(i, j) inefficient and cell(i, j+1) efficient.
  bool transition(std::size_t i, std::size_t j) const;
};

inline constexpr std::size_t default_lambda = 6;

/// Grid of |MSS|min with efficiency flags; each row's critical section is at
/// its first efficient size (a row efficient from the smallest size yields it).
/// Requires 1 <= lambda <= cap.
MMMatrix mmm(const Dataset& normal, std::size_t lambda, const SplitSpec& spec,
             const GridOptions& options = {});

/// Most compact critical section: fewest training events, then the smallest
/// position index. nullopt when no row has an efficient cell.
std::optional<CriticalSection> mccs(const MMMatrix& matrix);

struct TrimProbe {
  Dataset new_normal;
  Dataset intrusive;
};

enum class TrimStatus {
  holds,            // premise and conclusion both hold
  vacuous,          // |MSS|min(new | nml) < bound, implication trivially true
  out_of_contract,  // |MFS|min(int | nml ⊙ new) > lambda
  undecided,        // a capped value leaves a comparison open
  counterexample,
};

std::string_view to_string(TrimStatus s);

struct TrimCheck {
  MinLength bound = MinLength::unbounded();        // |MFS|min(int | nml ⊙ new)
  MinLength new_mss = MinLength::unbounded();      // |MSS|min(new | nml)
  MinLength trimmed_mss = MinLength::unbounded();  // |MSS|min(tst_cs ⊙ new | trn_cs)
  TrimStatus status = TrimStatus::holds;
};

struct TrimReport {
  std::size_t lambda = 0;
  MinLength section_mss = MinLength::unbounded();  // |MSS|min(tst_cs | trn_cs)
  bool section_efficient = false;                  // section_mss >= lambda
  std::size_t section_events = 0;
  std::vector<TrimCheck> checks;

  std::size_t count(TrimStatus s) const;
};

/// Checks that training on the critical section alone loses no efficiency for
/// future normal data and intrusions within lambda.
TrimReport validate_trim(const Dataset& normal, const CriticalSection& section,
                         std::span<const TrimProbe> probes,
                         std::size_t cap = SequenceModel::default_cap,
                         SplitGranularity granularity = SplitGranularity::trace);

}  // namespace stidelab

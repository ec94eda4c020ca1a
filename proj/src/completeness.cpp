#include "stidelab/completeness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "stidelab/error.hpp"
#include "stidelab/parallel.hpp"

namespace stidelab {

using NodeId = SequenceModel::NodeId;

std::string_view to_string(SplitGranularity g) {
  return g == SplitGranularity::trace ? "trace" : "event";
}

SplitGranularity parse_granularity(std::string_view text) {
  if (text == "trace") return SplitGranularity::trace;
  if (text == "event") return SplitGranularity::event;
  throw ValidationError("unknown split granularity '" + std::string(text) + "'");
}

SplitSpec SplitSpec::grid(std::size_t steps, double stride, double start) {
  SplitSpec s;
  for (std::size_t k = 0; k < steps; ++k) {
    const double v = start + stride * static_cast<double>(k);
    s.positions.push_back(v);
    s.sizes.push_back(v);
  }
  s.validate();
  return s;
}

void SplitSpec::validate() const {
  if (positions.empty() || sizes.empty()) throw ValidationError("split grid is empty");
  auto check = [](double v, const char* what) {
    if (!(v >= 0.0 && v < 100.0)) {
      throw ValidationError(std::string(what) + " percentage out of [0,100): " +
                            std::to_string(v));
    }
  };
  for (double p : positions) check(p, "position");
  for (double s : sizes) check(s, "size");
}

namespace {

std::size_t percent_of(double pct, std::size_t total) {
  return static_cast<std::size_t>(std::floor(pct * static_cast<double>(total) / 100.0 + 1e-9));
}

std::string pct(std::size_t events, std::size_t total) {
  const double v = total == 0 ? 0.0 : 100.0 * static_cast<double>(events) / static_cast<double>(total);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// The arc as at most two half-open event intervals.
std::vector<std::pair<std::size_t, std::size_t>> segments(const RingArc& arc) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (arc.length == 0) return out;
  const std::size_t end = arc.start + arc.length;
  if (end <= arc.total) {
    out.emplace_back(arc.start, end);
  } else {
    out.emplace_back(arc.start, arc.total);
    out.emplace_back(0, end - arc.total);
  }
  return out;
}

std::vector<std::size_t> trace_offsets(const Dataset& d) {
  std::vector<std::size_t> off(d.traces.size() + 1, 0);
  for (std::size_t t = 0; t < d.traces.size(); ++t) off[t + 1] = off[t] + d.traces[t].events.size();
  return off;
}

// Trace t belongs to the training side iff the arc touches one of its events.
std::vector<std::uint8_t> arc_membership(const std::vector<std::size_t>& off, const RingArc& arc) {
  const std::size_t n = off.size() - 1;
  std::vector<std::uint8_t> in(n, 0);
  for (auto [a, b] : segments(arc)) {
    auto first = std::upper_bound(off.begin(), off.end(), a) - off.begin() - 1;
    for (std::size_t t = static_cast<std::size_t>(std::max<std::ptrdiff_t>(first, 0)); t < n;
         ++t) {
      if (off[t] >= b) break;
      if (off[t + 1] > a && off[t + 1] > off[t]) in[t] = 1;
    }
  }
  return in;
}

void require_normal(const Dataset& normal) {
  if (normal.event_count() == 0) throw ValidationError("normal dataset is empty");
}

}  // namespace

std::string RingArc::describe() const {
  const auto segs = segments(*this);
  if (segs.empty()) return "[]";
  std::string out;
  for (const auto& [a, b] : segs) {
    if (!out.empty()) out += "U";
    out += "[" + pct(a, total) + "," + pct(b, total) + "]";
  }
  return out;
}

RingArc ring_arc(std::size_t total_events, double position_pct, double size_pct) {
  if (!(size_pct >= 0.0 && size_pct < 100.0)) {
    throw ValidationError("split size must lie in [0,100): " + std::to_string(size_pct));
  }
  if (!(position_pct >= 0.0 && position_pct < 100.0)) {
    throw ValidationError("split position must lie in [0,100): " + std::to_string(position_pct));
  }
  RingArc arc;
  arc.total = total_events;
  arc.start = std::min(percent_of(position_pct, total_events), total_events);
  if (arc.start == total_events) arc.start = 0;
  arc.length = std::min(percent_of(size_pct, total_events), total_events);
  return arc;
}

SplitResult split_ring(const Dataset& normal, double position_pct, double size_pct,
                       SplitGranularity granularity) {
  require_normal(normal);
  SplitResult r;
  r.arc = ring_arc(normal.event_count(), position_pct, size_pct);
  r.training.name = normal.name + "[trn]";
  r.training.role = Role::training;
  r.test.name = normal.name + "[tst]";
  r.test.role = Role::test;
  const auto off = trace_offsets(normal);

  if (granularity == SplitGranularity::trace) {
    const auto in = arc_membership(off, r.arc);
    for (std::size_t t = 0; t < normal.traces.size(); ++t) {
      if (in[t]) {
        r.training.traces.push_back(normal.traces[t]);
        r.training_traces.push_back(t);
      } else {
        r.test.traces.push_back(normal.traces[t]);
        r.test_traces.push_back(t);
      }
    }
    return r;
  }

  // Event granularity: every maximal run of a trace on one side becomes a trace.
  const auto segs = segments(r.arc);
  auto in_arc = [&](std::size_t g) {
    for (auto [a, b] : segs) {
      if (g >= a && g < b) return true;
    }
    return false;
  };
  for (std::size_t t = 0; t < normal.traces.size(); ++t) {
    const auto& src = normal.traces[t];
    std::size_t e = 0;
    while (e < src.events.size()) {
      const bool side = in_arc(off[t] + e);
      std::size_t f = e + 1;
      while (f < src.events.size() && in_arc(off[t] + f) == side) ++f;
      Trace piece{src.process_id,
                  std::vector<Symbol>(src.events.begin() + static_cast<std::ptrdiff_t>(e),
                                      src.events.begin() + static_cast<std::ptrdiff_t>(f))};
      (side ? r.training : r.test).traces.push_back(std::move(piece));
      e = f;
    }
  }
  return r;
}

SplitCell analyze_split(const Dataset& normal, std::span<const Dataset> intrusives,
                        double position_pct, double size_pct, std::size_t cap,
                        SplitGranularity granularity) {
  const auto split = split_ring(normal, position_pct, size_pct, granularity);
  const SequenceModel trn(split.training, cap);
  const SequenceModel tst(split.test, cap);
  SplitCell cell;
  cell.mss_min = mss_min_len(tst, trn);
  for (const auto& d : intrusives) cell.mfs_min.push_back(mfs_min_len(SequenceModel(d, cap), trn));
  cell.training_events = split.training.event_count();
  cell.test_events = split.test.event_count();
  return cell;
}

namespace {

// Shared index for trace-granularity grids. Normal traces are inserted first,
// so node ids below normal_nodes are exactly the normal windows; intrusive-only
// windows get larger ids and can never be covered by a training side.
class RingIndex {
 public:
  RingIndex(const Dataset& normal, std::span<const Dataset> intrusives, std::size_t cap)
      : cap_(cap), model_(cap), offsets_(trace_offsets(normal)) {
    if (intrusives.size() > 64) throw ValidationError("at most 64 intrusive datasets per grid");
    // Identical traces share one node list.
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
    canon_.resize(normal.traces.size());
    for (std::size_t t = 0; t < normal.traces.size(); ++t) {
      const auto& ev = normal.traces[t].events;
      lengths_.push_back(ev.size());
      const auto h = SequenceHash{}(SymbolView(ev));
      auto& bucket = by_hash[h];
      std::size_t c = static_cast<std::size_t>(-1);
      for (std::size_t k : bucket) {
        if (normal.traces[reps_[k]].events == ev) {
          c = k;
          break;
        }
      }
      if (c == static_cast<std::size_t>(-1)) {
        c = reps_.size();
        reps_.push_back(t);
        bucket.push_back(c);
        model_.add_trace(ev);
      }
      canon_[t] = c;
    }
    normal_nodes_ = model_.node_count();
    nodes_.resize(reps_.size());
    for (std::size_t c = 0; c < reps_.size(); ++c) {
      nodes_[c] = distinct_nodes(normal.traces[reps_[c]].events);
    }
    normal_level_.assign(cap_ + 1, 0);
    for (NodeId n = 1; n < normal_nodes_; ++n) ++normal_level_[model_.depth(n)];

    masks_.assign(normal_nodes_, 0);
    int_level_.assign(intrusives.size(), std::vector<std::size_t>(cap_ + 1, 0));
    for (std::size_t k = 0; k < intrusives.size(); ++k) {
      const std::uint64_t bit = std::uint64_t{1} << k;
      std::vector<NodeId> seen;
      for (const auto& tr : intrusives[k].traces) {
        for (NodeId n : walk(tr.events, /*extend=*/true)) seen.push_back(n);
      }
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      for (NodeId n : seen) {
        ++int_level_[k][model_.depth(n)];
        if (n < normal_nodes_) masks_[n] |= bit;
      }
      int_exhaustive_.push_back(intrusives[k].longest_trace() <= cap_);
    }
  }

  std::size_t total_events() const { return offsets_.back(); }

  std::vector<SplitCell> row(double position, std::span<const double> sizes) const {
    std::vector<SplitCell> out(sizes.size());
    std::vector<std::size_t> order(sizes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });

    const std::size_t traces = lengths_.size();
    std::vector<std::uint8_t> covered(normal_nodes_, 0);
    std::vector<std::uint8_t> canon_done(reps_.size(), 0);
    std::vector<std::uint8_t> in_trn(traces, 0);
    auto normal_left = normal_level_;
    auto int_left = int_level_;
    std::size_t trn_events = 0;

    for (std::size_t j : order) {
      const auto arc = ring_arc(total_events(), position, sizes[j]);
      const auto in = arc_membership(offsets_, arc);
      for (std::size_t t = 0; t < traces; ++t) {
        if (!in[t] || in_trn[t]) continue;
        in_trn[t] = 1;
        trn_events += lengths_[t];
        const std::size_t c = canon_[t];
        if (canon_done[c]) continue;
        canon_done[c] = 1;
        for (NodeId n : nodes_[c]) {
          if (covered[n]) continue;
          covered[n] = 1;
          const std::size_t d = model_.depth(n);
          --normal_left[d];
          for (std::uint64_t m = masks_[n]; m != 0; m &= m - 1) {
            --int_left[static_cast<std::size_t>(std::countr_zero(m))][d];
          }
        }
      }
      // Sides are monotone in the size, so anything covered earlier stays in.
      for (std::size_t t = 0; t < traces; ++t) {
        if (in_trn[t] && !in[t]) throw Error("ring arcs are not nested");
      }

      SplitCell& cell = out[j];
      cell.training_events = trn_events;
      cell.test_events = total_events() - trn_events;
      std::size_t longest_test = 0;
      for (std::size_t t = 0; t < traces; ++t) {
        if (!in_trn[t]) longest_test = std::max(longest_test, lengths_[t]);
      }
      cell.mss_min = first_nonzero(normal_left)
                         ? MinLength::finite(*first_nonzero(normal_left) - 1)
                         : (longest_test <= cap_ ? MinLength::unbounded()
                                                 : MinLength::capped(cap_, cap_));
      for (std::size_t k = 0; k < int_left.size(); ++k) {
        const auto d = first_nonzero(int_left[k]);
        cell.mfs_min.push_back(d ? MinLength::finite(*d)
                                 : (int_exhaustive_[k] ? MinLength::unbounded()
                                                       : MinLength::capped(cap_, cap_ + 1)));
      }
    }
    return out;
  }

 private:
  static std::optional<std::size_t> first_nonzero(const std::vector<std::size_t>& v) {
    for (std::size_t d = 1; d < v.size(); ++d) {
      if (v[d] != 0) return d;
    }
    return std::nullopt;
  }

  // Every node reached by a window of `events` (depth 1..cap). With `extend`,
  // windows missing from the index are inserted.
  std::vector<NodeId> walk(const std::vector<Symbol>& events, bool extend) {
    std::vector<NodeId> out;
    for (std::size_t p = 0; p < events.size(); ++p) {
      NodeId node = SequenceModel::root;
      const std::size_t end = std::min(events.size(), p + cap_);
      for (std::size_t q = p; q < end; ++q) {
        NodeId next = model_.child(node, events[q]);
        if (next == SequenceModel::npos) {
          if (!extend) break;
          next = model_.insert(SymbolView(events).subspan(p, q - p + 1));
        }
        node = next;
        out.push_back(node);
      }
    }
    return out;
  }

  std::vector<NodeId> distinct_nodes(const std::vector<Symbol>& events) {
    auto out = walk(events, false);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::size_t cap_;
  SequenceModel model_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> lengths_;
  std::vector<std::size_t> canon_;
  std::vector<std::size_t> reps_;
  std::vector<std::vector<NodeId>> nodes_;
  NodeId normal_nodes_ = 0;
  std::vector<std::size_t> normal_level_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::size_t>> int_level_;
  std::vector<bool> int_exhaustive_;
};

}  // namespace

std::vector<std::vector<SplitCell>> analyze_grid(const Dataset& normal,
                                                 std::span<const Dataset> intrusives,
                                                 const SplitSpec& spec,
                                                 const GridOptions& options) {
  spec.validate();
  require_normal(normal);
  if (options.cap == 0) throw ValidationError("cap must be at least 1");
  const std::size_t rows = spec.positions.size();
  const std::size_t cols = spec.sizes.size();
  std::vector<std::vector<SplitCell>> grid(rows);

  if (options.granularity == SplitGranularity::trace) {
    const RingIndex index(normal, intrusives, options.cap);
    parallel_for(rows, options.threads, [&](std::size_t i) {
      grid[i] = index.row(spec.positions[i], spec.sizes);
    });
    return grid;
  }

  for (auto& r : grid) r.resize(cols);
  parallel_for(rows * cols, options.threads, [&](std::size_t k) {
    const std::size_t i = k / cols, j = k % cols;
    grid[i][j] = analyze_split(normal, intrusives, spec.positions[i], spec.sizes[j], options.cap,
                               options.granularity);
  });
  return grid;
}

double average_value(const MinLength& m, std::size_t cap) {
  if (m.is_finite()) return static_cast<double>(m.value());
  return static_cast<double>(cap);
}

MMACCurve mmac(const Dataset& normal, std::span<const Dataset> intrusives, const SplitSpec& spec,
               const GridOptions& options) {
  const auto grid = analyze_grid(normal, intrusives, spec, options);
  MMACCurve curve;
  curve.cap = options.cap;
  for (const auto& d : intrusives) curve.intrusive_names.push_back(d.name);
  const double n = static_cast<double>(spec.positions.size());
  for (std::size_t j = 0; j < spec.sizes.size(); ++j) {
    MmacPoint p;
    p.size_pct = spec.sizes[j];
    p.mfs_avg.assign(intrusives.size(), 0.0);
    p.mfs_capped.assign(intrusives.size(), 0);
    double mss_sum = 0;
    std::vector<double> mfs_sum(intrusives.size(), 0.0);
    for (std::size_t i = 0; i < spec.positions.size(); ++i) {
      const auto& cell = grid[i][j];
      mss_sum += average_value(cell.mss_min, options.cap);
      if (!cell.mss_min.is_finite()) ++p.mss_capped;
      for (std::size_t k = 0; k < intrusives.size(); ++k) {
        mfs_sum[k] += average_value(cell.mfs_min[k], options.cap);
        if (!cell.mfs_min[k].is_finite()) ++p.mfs_capped[k];
      }
    }
    p.mss_avg = mss_sum / n;
    for (std::size_t k = 0; k < intrusives.size(); ++k) p.mfs_avg[k] = mfs_sum[k] / n;
    curve.points.push_back(std::move(p));
  }
  return curve;
}

bool MMMatrix::transition(std::size_t i, std::size_t j) const {
  const auto& row = cells.at(i);
  if (j + 1 >= row.size()) return false;
  return !row[j].efficient && row[j + 1].efficient;
}

MMMatrix mmm(const Dataset& normal, std::size_t lambda, const SplitSpec& spec,
             const GridOptions& options) {
  if (lambda == 0) throw ValidationError("lambda must be at least 1");
  if (lambda > options.cap) {
    throw ValidationError("lambda " + std::to_string(lambda) + " exceeds the cap " +
                          std::to_string(options.cap));
  }
  const auto grid = analyze_grid(normal, {}, spec, options);
  MMMatrix m;
  m.spec = spec;
  m.cap = options.cap;
  m.lambda = lambda;
  const std::size_t total = normal.event_count();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<MmmCell> row;
    for (const auto& c : grid[i]) {
      // lambda <= cap, so a capped value (true minimum >= cap) is decided.
      row.push_back({c.mss_min, c.mss_min.at_least(lambda).value_or(false), c.training_events});
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].efficient) continue;
      CriticalSection cs;
      cs.position_index = i;
      cs.size_index = j;
      cs.position_pct = spec.positions[i];
      cs.size_pct = spec.sizes[j];
      cs.arc = ring_arc(total, cs.position_pct, cs.size_pct);
      cs.event_count = row[j].training_events;
      cs.lambda = lambda;
      m.critical_sections.push_back(cs);
      break;
    }
    m.cells.push_back(std::move(row));
  }
  return m;
}

std::optional<CriticalSection> mccs(const MMMatrix& matrix) {
  std::optional<CriticalSection> best;
  for (const auto& cs : matrix.critical_sections) {
    if (!best || cs.event_count < best->event_count ||
        (cs.event_count == best->event_count && cs.position_index < best->position_index)) {
      best = cs;
    }
  }
  return best;
}

std::string_view to_string(TrimStatus s) {
  switch (s) {
    case TrimStatus::holds: return "holds";
    case TrimStatus::vacuous: return "vacuous";
    case TrimStatus::out_of_contract: return "out_of_contract";
    case TrimStatus::undecided: return "undecided";
    case TrimStatus::counterexample: return "counterexample";
  }
  return "?";
}

std::size_t TrimReport::count(TrimStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const TrimCheck& c) { return c.status == s; }));
}

TrimReport validate_trim(const Dataset& normal, const CriticalSection& section,
                         std::span<const TrimProbe> probes, std::size_t cap,
                         SplitGranularity granularity) {
  const auto split = split_ring(normal, section.position_pct, section.size_pct, granularity);
  const SequenceModel trn(split.training, cap);
  const SequenceModel tst(split.test, cap);
  const SequenceModel nml(normal, cap);

  TrimReport report;
  report.lambda = section.lambda;
  report.section_mss = mss_min_len(tst, trn);
  report.section_efficient = report.section_mss.at_least(section.lambda).value_or(false);
  report.section_events = split.training.event_count();

  for (const auto& probe : probes) {
    const SequenceModel fresh(probe.new_normal, cap);
    const SequenceModel attack(probe.intrusive, cap);
    TrimCheck c;
    c.bound = mfs_min_len(attack, SequenceModel::merge(nml, fresh));
    c.new_mss = mss_min_len(fresh, nml);
    c.trimmed_mss = mss_min_len(SequenceModel::merge(tst, fresh), trn);

    if (c.bound.at_most(section.lambda) != std::optional<bool>(true)) {
      c.status = TrimStatus::out_of_contract;
    } else {
      const auto premise = less_equal(c.bound, c.new_mss);
      if (!premise) {
        c.status = TrimStatus::undecided;
      } else if (!*premise) {
        c.status = TrimStatus::vacuous;
      } else {
        const auto conclusion = less_equal(c.bound, c.trimmed_mss);
        c.status = !conclusion ? TrimStatus::undecided
                   : *conclusion ? TrimStatus::holds
                                 : TrimStatus::counterexample;
      }
    }
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace stidelab

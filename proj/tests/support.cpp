#include "support.hpp"

#include <algorithm>

#include "stidelab/completeness.hpp"
#include "stidelab/context.hpp"
#include "stidelab/detector.hpp"
#include "stidelab/sequence_core.hpp"
#include "stidelab/sequence_model.hpp"

namespace stidelab::testing {

Sequence seq(std::string_view letters) {
  std::vector<Symbol> v;
  for (char c : letters) v.push_back(static_cast<Symbol>(c - 'a' + 1));
  return Sequence(v);
}

SequenceSet seqs(std::initializer_list<std::string_view> letters) {
  SequenceSet out;
  for (auto l : letters) out.insert(seq(l));
  return out;
}

std::string letters(const Sequence& s) {
  std::string out;
  for (Symbol x : s) out += static_cast<char>('a' + x - 1);
  return s.empty() ? "φ" : out;
}

Dataset letters_dataset(std::initializer_list<std::string_view> traces, Role role,
                        std::string name) {
  Dataset d{std::move(name), role, {}};
  std::size_t k = 0;
  for (auto t : traces) {
    const auto s = seq(t);
    d.traces.push_back({std::to_string(k++), std::vector<Symbol>(s.begin(), s.end())});
  }
  return d;
}

namespace {

std::vector<std::size_t> trace_lengths(std::mt19937_64& rng, std::size_t min_trace,
                                       std::size_t max_total) {
  const std::size_t fit = std::max<std::size_t>(1, max_total / std::max<std::size_t>(min_trace, 1));
  std::uniform_int_distribution<std::size_t> count(1, std::min<std::size_t>(4, fit));
  const std::size_t k = count(rng);
  const std::size_t share = max_total / k;
  std::uniform_int_distribution<std::size_t> len(std::min(min_trace, share), share);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(len(rng));
  return out;
}

}  // namespace

Dataset long_traces(std::mt19937_64& rng, std::size_t alphabet, std::size_t min_trace,
                    std::size_t max_total) {
  std::uniform_int_distribution<Symbol> sym(1, static_cast<Symbol>(alphabet));
  Dataset d{"long", Role::normal, {}};
  for (std::size_t n : trace_lengths(rng, min_trace, max_total)) {
    Trace t{std::to_string(d.traces.size()), {}};
    for (std::size_t i = 0; i < n; ++i) t.events.push_back(sym(rng));
    d.traces.push_back(std::move(t));
  }
  return d;
}

Dataset derived_traces(std::mt19937_64& rng, const Dataset& ref, std::size_t alphabet,
                       std::size_t min_trace, std::size_t max_total, double mutation_rate) {
  std::vector<const Trace*> sources;
  for (const auto& t : ref.traces) {
    if (!t.events.empty()) sources.push_back(&t);
  }
  if (sources.empty()) return long_traces(rng, alphabet, min_trace, max_total);
  std::uniform_int_distribution<std::size_t> pick(0, sources.size() - 1);
  std::uniform_int_distribution<Symbol> sym(1, static_cast<Symbol>(alphabet));
  std::bernoulli_distribution mutate(mutation_rate);
  Dataset d{"derived", Role::test, {}};
  for (std::size_t n : trace_lengths(rng, min_trace, max_total)) {
    Trace t{std::to_string(d.traces.size()), {}};
    while (t.events.size() < n) {
      const auto& src = sources[pick(rng)]->events;
      std::uniform_int_distribution<std::size_t> at(0, src.size() - 1);
      const std::size_t begin = at(rng);
      std::uniform_int_distribution<std::size_t> take(1, src.size() - begin);
      const std::size_t len = std::min(take(rng), n - t.events.size());
      t.events.insert(t.events.end(), src.begin() + static_cast<std::ptrdiff_t>(begin),
                      src.begin() + static_cast<std::ptrdiff_t>(begin + len));
    }
    for (auto& e : t.events) {
      if (mutate(rng)) e = sym(rng);
    }
    d.traces.push_back(std::move(t));
  }
  return d;
}

Dataset cyclic_traces(std::mt19937_64& rng, const std::vector<Symbol>& pattern,
                      std::size_t traces, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> offset(0, pattern.size() - 1);
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  Dataset d{"cyclic", Role::normal, {}};
  for (std::size_t k = 0; k < traces; ++k) {
    Trace t{std::to_string(k), {}};
    const std::size_t off = offset(rng), n = len(rng);
    for (std::size_t i = 0; i < n; ++i) t.events.push_back(pattern[(off + i) % pattern.size()]);
    d.traces.push_back(std::move(t));
  }
  return d;
}

std::vector<Symbol> random_pattern(std::mt19937_64& rng, std::size_t alphabet, std::size_t length) {
  std::uniform_int_distribution<Symbol> sym(1, static_cast<Symbol>(alphabet));
  std::vector<Symbol> p;
  for (std::size_t i = 0; i < length; ++i) p.push_back(sym(rng));
  return p;
}

OverlapFixture overlap_fixture(std::size_t window, std::size_t mfs_length, std::size_t count) {
  // All symbols distinct, so the only windows shared with training are the
  // ones the training traces copy. Training holds every (l_k - 1)-window of the
  // intrusive trace and every l_k-window outside [s, s+n).
  const std::size_t s = window - mfs_length + 1;
  const std::size_t total = s + count + window + 2;
  std::vector<Symbol> in(total);
  for (std::size_t i = 0; i < total; ++i) in[i] = static_cast<Symbol>(i + 1);
  auto slice = [&](std::size_t a, std::size_t b) {
    return std::vector<Symbol>(in.begin() + static_cast<std::ptrdiff_t>(a),
                               in.begin() + static_cast<std::ptrdiff_t>(b));
  };
  OverlapFixture f;
  f.start = s;
  f.intrusive = {"overlap", Role::intrusive, {{"0", in}}};
  f.training = {"overlap-trn", Role::training, {}};
  f.training.traces.push_back({"head", slice(0, s + mfs_length - 1)});
  for (std::size_t q = 0; q <= count; ++q) {
    if (mfs_length > 1) {
      f.training.traces.push_back({"piece" + std::to_string(q), slice(s + q, s + q + mfs_length - 1)});
    }
  }
  f.training.traces.push_back({"tail", slice(s + count, total)});
  return f;
}

void PropertyStats::check(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  ++violations;
  if (details.size() < 10) details.push_back(what);
}

namespace {

std::string describe(const Dataset& d) {
  std::string out;
  for (const auto& t : d.traces) {
    if (!out.empty()) out += "|";
    out += letters(Sequence(t.events));
  }
  return out;
}

std::size_t pick_alphabet(std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(1, 4)(rng);
}

// A reference dataset and a target that partly reuses it.
std::pair<Dataset, Dataset> random_pair(std::mt19937_64& rng, std::size_t alphabet,
                                        std::size_t min_trace) {
  static constexpr double rates[] = {0.0, 0.05, 0.15, 0.3};
  const auto ref = long_traces(rng, alphabet, min_trace, 40);
  const auto kind = std::uniform_int_distribution<int>(0, 4)(rng);
  if (kind == 0) return {ref, long_traces(rng, alphabet, min_trace, 40)};
  return {ref, derived_traces(rng, ref, alphabet, min_trace, 40, rates[kind - 1])};
}

}  // namespace

PropertyStats mss_gap_suite(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  PropertyStats st{"mss_gap"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    // Short traces are allowed here; the identity does not depend on them.
    const auto a = pick_alphabet(rng);
    const auto [ref, tgt] = random_pair(rng, a, c % 2 ? 1 : cap);
    const SequenceModel t(tgt, cap), r(ref, cap);
    const auto mfs = mfs_min_len(t, r);
    const auto mss = mss_min_len(t, r);
    if (mfs.is_finite()) {
      ++st.premise_instances;
      st.check(mss.is_finite() && mss.value() + 1 == mfs.value(),
               "tgt=" + describe(tgt) + " ref=" + describe(ref) + " mfs=" + mfs.to_string() +
                   " mss=" + mss.to_string());
    }
    // The exact identity, without the cap.
    const auto exact = oracle_enumerate(tgt, ref);
    if (exact.mfs_min) {
      st.check(exact.mss_min && *exact.mss_min + 1 == *exact.mfs_min,
               "oracle: tgt=" + describe(tgt) + " ref=" + describe(ref));
    }
    oracle_compare(tgt, ref, cap, st.oracle);
    ++st.instances;
  }
  return st;
}

PropertyStats tpss_bridge_suite(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  PropertyStats st{"tpss_bridge"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const auto a = pick_alphabet(rng);
    const auto [nml, in] = random_pair(rng, a, cap);
    const auto mfs = mfs_min_len(SequenceModel(in, cap), SequenceModel(nml, cap));
    if (in.longest_trace() >= cap) ++st.premise_instances;
    for (std::size_t w = 1; w <= cap; ++w) {
      // Windows of length w must exist in every trace for the bridge to apply.
      bool long_enough = true;
      for (const auto& t : in.traces) long_enough = long_enough && t.events.size() >= w;
      if (!long_enough) continue;
      const bool fs = !scan(train(nml, w), in).foreign.empty();
      const auto predicted = mfs.at_most(w);
      st.check(predicted.has_value() && *predicted == fs,
               "w=" + std::to_string(w) + " int=" + describe(in) + " nml=" + describe(nml));
    }
    oracle_compare(in, nml, cap, st.oracle);
    ++st.instances;
  }
  return st;
}

PropertyStats effectiveness_suite(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  PropertyStats st{"effectiveness"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const auto a = pick_alphabet(rng);
    const auto [trn, in] = random_pair(rng, a, cap);
    const auto mfs = mfs_min_len(SequenceModel(in, cap), SequenceModel(trn, cap));
    ++st.premise_instances;
    for (std::size_t w = 1; w <= cap; ++w) {
      const bool effective = is_effective(trn, in, w);
      const bool tp = !classify(trn, in, in, w).tpss.empty();
      const auto predicted = mfs.at_most(w);
      st.check(predicted && *predicted == effective && effective == tp,
               "w=" + std::to_string(w) + " int=" + describe(in) + " trn=" + describe(trn));
    }
    oracle_compare(in, trn, cap, st.oracle);
    ++st.instances;
  }
  return st;
}

PropertyStats completeness_suite(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  PropertyStats st{"completeness"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const auto a = pick_alphabet(rng);
    const auto [trn, tst] = random_pair(rng, a, cap);
    const auto mss = mss_min_len(SequenceModel(tst, cap), SequenceModel(trn, cap));
    ++st.premise_instances;
    for (std::size_t w = 1; w <= cap; ++w) {
      const bool complete = is_complete(trn, tst, w);
      const bool no_fp = classify(trn, tst, tst, w).fpss.empty();
      const auto predicted = mss.at_least(w);
      st.check(predicted && *predicted == complete && complete == no_fp,
               "w=" + std::to_string(w) + " tst=" + describe(tst) + " trn=" + describe(trn));
    }
    oracle_compare(tst, trn, cap, st.oracle);
    ++st.instances;
  }
  return st;
}

PropertyStats window_suite(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  PropertyStats st{"window"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const auto a = pick_alphabet(rng);
    const auto trn = long_traces(rng, a, cap, 40);
    const auto tst = derived_traces(rng, trn, a, cap, 40, c % 3 ? 0.02 : 0.0);
    const auto in = derived_traces(rng, trn, a, cap, 40, 0.2);
    const auto w = efficiency_window(trn, tst, in, cap);
    if (w.nonempty == std::optional<bool>(true)) ++st.premise_instances;
    bool any_efficient = false;
    for (std::size_t om = 1; om <= cap; ++om) {
      const bool eff = is_effective(trn, in, om);
      const bool comp = is_complete(trn, tst, om);
      any_efficient = any_efficient || (eff && comp);
      const auto lo_ok = w.lo.at_most(om);
      const auto hi_ok = w.hi.at_least(om);
      const std::string where = "w=" + std::to_string(om) + " trn=" + describe(trn) +
                                " tst=" + describe(tst) + " int=" + describe(in);
      st.check(lo_ok && hi_ok && (*lo_ok && *hi_ok) == (eff && comp), "inside/outside " + where);
      // Regions below, inside and above the window.
      const auto region = w.classify(om);
      const WindowCase expected = eff && comp ? WindowCase::efficient
                                  : eff       ? WindowCase::effective_only
                                  : comp      ? WindowCase::complete_only
                                              : WindowCase::neither;
      st.check(region && *region == expected, "window region " + where);
      if (region == WindowCase::neither) st.check(w.nonempty == std::optional<bool>(false), where);
    }
    // Nonempty within the cap matches the existence of an efficient window.
    if (w.lo.at_most(cap).value_or(false)) {
      st.check(w.nonempty.has_value() && *w.nonempty == any_efficient,
               "nonempty flag trn=" + describe(trn) + " tst=" + describe(tst) +
                   " int=" + describe(in));
    }
    oracle_compare(in, trn, cap, st.oracle);
    oracle_compare(tst, trn, cap, st.oracle);
    ++st.instances;
  }
  return st;
}

PropertyStats cfps_suite(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  PropertyStats st{"cfps"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const auto a = pick_alphabet(rng);
    const auto trn = long_traces(rng, a, c % 2 ? 1 : cap, 40);
    const auto tst = derived_traces(rng, trn, a, 1, 40, 0.1);
    const auto in = derived_traces(rng, tst, a, 1, 40, 0.1);
    const SequenceModel mi(in, cap), ms(tst, cap), mt(trn, cap);
    const auto dec = mfs_min_decomposition(mi, ms, mt);
    const auto direct = mfs_min_len(mi, mt);
    ++st.premise_instances;
    st.check(dec.combined == direct, "trn=" + describe(trn) + " tst=" + describe(tst) +
                                         " int=" + describe(in) + " combined=" +
                                         dec.combined.to_string() + " direct=" + direct.to_string());
    // CFPS against its definition.
    const auto got = cfps(mi, ms, mt);
    for (std::size_t l = 1; l <= cap; ++l) {
      const auto expect = set_op(set_op(sequence_set(tst, l), sequence_set(trn, l), SetOp::subtract),
                                 sequence_set(in, l), SetOp::intersect);
      st.check(got.by_length[l] == expect, "cfps length " + std::to_string(l));
    }
    oracle_compare(in, trn, cap, st.oracle);
    ++st.instances;
  }
  return st;
}

PropertyStats trim_suite(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  PropertyStats st{"trim"};
  std::mt19937_64 rng(seed);
  const auto grid = SplitSpec::grid();
  std::uniform_int_distribution<std::size_t> cell(0, grid.positions.size() - 1);
  for (std::size_t c = 0; c < cases; ++c) {
    const auto a = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    const auto pattern = random_pattern(rng, a, std::uniform_int_distribution<std::size_t>(3, 7)(rng));
    auto normal = cyclic_traces(rng, pattern, std::uniform_int_distribution<std::size_t>(2, 5)(rng), 3, 8);
    if (c % 4 == 0) normal = derived_traces(rng, normal, a, 3, 40, 0.05);
    const std::size_t lambda = std::uniform_int_distribution<std::size_t>(1, 3)(rng);

    // A critical section candidate: an efficient split of this normal data.
    std::optional<CriticalSection> cs;
    for (int attempt = 0; attempt < 12 && !cs; ++attempt) {
      const std::size_t i = cell(rng), j = cell(rng);
      const auto split = split_ring(normal, grid.positions[i], grid.sizes[j]);
      const auto m = mss_min_len(SequenceModel(split.test, cap), SequenceModel(split.training, cap));
      if (m.at_least(lambda).value_or(false)) {
        cs = CriticalSection{i, j, grid.positions[i], grid.sizes[j],
                             ring_arc(normal.event_count(), grid.positions[i], grid.sizes[j]),
                             split.training.event_count(), lambda};
      }
    }
    ++st.instances;
    if (!cs) continue;

    std::vector<TrimProbe> probes;
    for (int k = 0; k < 3; ++k) {
      Dataset fresh = k == 0 && c % 5 == 0
                          ? Dataset{"new", Role::normal, {}}
                          : derived_traces(rng, normal, a, 2, 20, k == 2 ? 0.1 : 0.0);
      Dataset in = derived_traces(rng, concat(normal, fresh), a, 2, 20, 0.15);
      probes.push_back({std::move(fresh), std::move(in)});
    }
    const auto report = validate_trim(normal, *cs, probes, cap);
    st.check(report.section_efficient, "section lost efficiency");
    for (const auto& check : report.checks) {
      if (check.status == TrimStatus::holds || check.status == TrimStatus::counterexample) {
        ++st.premise_instances;
      }
      st.check(check.status != TrimStatus::counterexample,
               "normal=" + describe(normal) + " bound=" + check.bound.to_string() +
                   " trimmed=" + check.trimmed_mss.to_string());
      st.check(check.status != TrimStatus::undecided, "undecided comparison");
    }
  }
  return st;
}

PropertyStats oracle_suite(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  PropertyStats st{"oracle"};
  st.oracle = oracle_check(seed, cases, cap);
  st.instances = st.oracle.cases;
  st.checks = st.oracle.comparisons;
  st.violations = st.oracle.mismatches;
  st.details = st.oracle.details;
  return st;
}

PropertyStats context_suite(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  PropertyStats st{"context"};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const auto a = pick_alphabet(rng);
    const auto [ref, tgt] = random_pair(rng, a, c % 2 ? 1 : cap);
    const SequenceModel rm(ref, cap), tm(tgt, cap);
    const auto series = fsl_series(rm, tgt);
    const auto harvested = harvest_mfs(series, tgt);
    const auto mfs = mfs_set(tm, rm);
    const std::string where = "tgt=" + describe(tgt) + " ref=" + describe(ref);
    st.check(harvested == mfs, "harvest != mfs_set " + where);

    for (std::size_t t = 0; t < tgt.traces.size(); ++t) {
      const auto& ev = tgt.traces[t].events;
      const auto& f = series.traces[t];
      st.check(f == oracle_fsl(ev, ref, cap), "fsl " + where);
      for (std::size_t i = 0; i < ev.size(); ++i) {
        st.check(f[i] >= 1 && f[i] <= cap + 1, "fsl range " + where);
        if (f[i] > cap) continue;
        // Shortest: no proper suffix of the marked window is foreign.
        const auto window = SymbolView(ev).subspan(i + 1 - f[i], f[i]);
        st.check(!rm.contains(window) && (f[i] == 1 || rm.contains(window.subspan(1))),
                 "shortest suffix " + where);
      }
      // Lowest-point rule at every MFS occurrence e_a..e_b.
      for (std::size_t b = 0; b < ev.size(); ++b) {
        for (std::size_t m = 1; m <= std::min(cap, b + 1); ++m) {
          if (!mfs.contains(Sequence(SymbolView(ev).subspan(b + 1 - m, m)))) continue;
          st.check(f[b] == m, "FSL at MFS end " + where);
          if (b > 0) st.check(f[b - 1] >= m, "FSL before MFS end " + where);
          if (b + 1 < ev.size() && f[b + 1] < m) {
            // Only a shorter MFS ending at the next event can dip below.
            const auto next = Sequence(SymbolView(ev).subspan(b + 2 - f[b + 1], f[b + 1]));
            st.check(mfs.contains(next), "FSL after MFS end " + where);
          }
        }
      }
    }
    ++st.instances;
  }
  return st;
}

}  // namespace stidelab::testing

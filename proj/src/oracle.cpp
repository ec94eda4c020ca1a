#include "stidelab/oracle.hpp"

#include <algorithm>
#include <set>

#include "stidelab/context.hpp"
#include "stidelab/error.hpp"
#include "stidelab/sequence_core.hpp"
#include "stidelab/sequence_model.hpp"

namespace stidelab {

namespace {

using Window = std::vector<Symbol>;
using WindowSet = std::set<Window>;

// Every window of the given length, materialized. Deliberately independent of
// for_each_window and of the trie.
WindowSet windows_of(const Dataset& d, std::size_t length) {
  WindowSet out;
  if (length == 0) {
    out.insert(Window{});
    return out;
  }
  for (const auto& trace : d.traces) {
    const auto& e = trace.events;
    for (std::size_t start = 0; start + length <= e.size(); ++start) {
      out.insert(Window(e.begin() + static_cast<std::ptrdiff_t>(start),
                        e.begin() + static_cast<std::ptrdiff_t>(start + length)));
    }
  }
  return out;
}

}  // namespace

OracleResult oracle_enumerate(const Dataset& tgt, const Dataset& ref,
                              std::optional<std::size_t> max_length) {
  if (tgt.event_count() + ref.event_count() > oracle_event_guard) {
    throw GuardError("oracle refuses inputs over " + std::to_string(oracle_event_guard) +
                     " events");
  }
  std::size_t longest = 0;
  for (const auto& t : tgt.traces) longest = std::max(longest, t.events.size());
  OracleResult r;
  r.max_length = max_length.value_or(longest);
  r.exhaustive = r.max_length >= longest;

  // One extra length so that the MSS witnesses of the longest sequences exist.
  std::vector<WindowSet> tgt_w(r.max_length + 2), ref_w(r.max_length + 2);
  for (std::size_t l = 0; l <= r.max_length + 1; ++l) {
    tgt_w[l] = windows_of(tgt, l);
    ref_w[l] = windows_of(ref, l);
  }
  auto is_self = [&](const Window& w) { return ref_w[w.size()].count(w) > 0; };

  r.foreign.resize(r.max_length + 1);
  r.self.resize(r.max_length + 1);
  for (std::size_t l = 0; l <= r.max_length; ++l) {
    for (const auto& w : tgt_w[l]) {
      if (l == 0 || is_self(w)) {
        r.self[l].insert(Sequence{w});
      } else {
        r.foreign[l].insert(Sequence{w});
      }
    }
  }

  // MFS: foreign and every proper contiguous subsequence is self.
  for (std::size_t l = 1; l <= r.max_length; ++l) {
    for (const auto& w : tgt_w[l]) {
      if (is_self(w)) continue;
      bool minimal = true;
      for (std::size_t sub = 1; sub < l && minimal; ++sub) {
        for (std::size_t start = 0; start + sub <= l; ++start) {
          Window part(w.begin() + static_cast<std::ptrdiff_t>(start),
                      w.begin() + static_cast<std::ptrdiff_t>(start + sub));
          if (!is_self(part)) {
            minimal = false;
            break;
          }
        }
      }
      if (minimal) {
        r.mfs.insert(Sequence{w});
        if (!r.mfs_min) r.mfs_min = l;
      }
    }
  }

  // MSS: self, with a one-event-longer tgt window containing it that is foreign.
  for (std::size_t l = 0; l <= r.max_length; ++l) {
    for (const auto& s : tgt_w[l]) {
      if (l > 0 && !is_self(s)) continue;
      bool witness = false;
      for (const auto& sup : tgt_w[l + 1]) {
        if (is_self(sup)) continue;
        const bool as_prefix = std::equal(s.begin(), s.end(), sup.begin());
        const bool as_suffix = std::equal(s.begin(), s.end(), sup.begin() + 1);
        if (as_prefix || as_suffix) {
          witness = true;
          break;
        }
      }
      if (witness) {
        r.mss.insert(Sequence{s});
        if (!r.mss_min || l < *r.mss_min) r.mss_min = l;
      }
    }
  }
  return r;
}

std::vector<std::uint32_t> oracle_fsl(SymbolView trace, const Dataset& ref, std::size_t cap) {
  std::vector<WindowSet> ref_w(cap + 1);
  for (std::size_t l = 1; l <= cap; ++l) ref_w[l] = windows_of(ref, l);
  std::vector<std::uint32_t> out(trace.size(), static_cast<std::uint32_t>(cap + 1));
  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (std::size_t len = 1; len <= cap && len <= i + 1; ++len) {
      Window w(trace.begin() + static_cast<std::ptrdiff_t>(i + 1 - len),
               trace.begin() + static_cast<std::ptrdiff_t>(i + 1));
      if (!ref_w[len].count(w)) {
        out[i] = static_cast<std::uint32_t>(len);
        break;
      }
    }
  }
  return out;
}

Dataset random_dataset(std::mt19937_64& rng, std::size_t alphabet, std::size_t max_length,
                       std::size_t max_traces) {
  std::uniform_int_distribution<std::size_t> trace_count(1, std::max<std::size_t>(1, max_traces));
  std::uniform_int_distribution<Symbol> symbol(0, static_cast<Symbol>(alphabet - 1));
  Dataset d{"random", Role::normal, {}};
  const auto traces = trace_count(rng);
  std::size_t budget = max_length;
  for (std::size_t t = 0; t < traces; ++t) {
    std::uniform_int_distribution<std::size_t> len(0, budget);
    const auto n = t + 1 == traces ? len(rng) : len(rng) / 2;
    budget -= n;
    Trace trace{std::to_string(t), {}};
    for (std::size_t i = 0; i < n; ++i) trace.events.push_back(symbol(rng));
    d.traces.push_back(std::move(trace));
  }
  return d;
}

Dataset mutated_dataset(std::mt19937_64& rng, const Dataset& ref, std::size_t alphabet,
                        std::size_t max_length) {
  std::vector<const Trace*> sources;
  for (const auto& t : ref.traces) {
    if (!t.events.empty()) sources.push_back(&t);
  }
  if (sources.empty()) return random_dataset(rng, alphabet, max_length);
  std::uniform_int_distribution<std::size_t> pick(0, sources.size() - 1);
  std::uniform_int_distribution<Symbol> symbol(0, static_cast<Symbol>(alphabet - 1));
  Dataset d{"mutated", Role::intrusive, {}};
  const auto& src = sources[pick(rng)]->events;
  std::uniform_int_distribution<std::size_t> start_dist(0, src.size() - 1);
  const auto start = start_dist(rng);
  std::uniform_int_distribution<std::size_t> len_dist(1, std::min(max_length, src.size() - start));
  Trace trace{"0", std::vector<Symbol>(src.begin() + static_cast<std::ptrdiff_t>(start),
                                       src.begin() + static_cast<std::ptrdiff_t>(start) +
                                           static_cast<std::ptrdiff_t>(len_dist(rng)))};
  std::uniform_int_distribution<int> mutations(0, 2);
  const int m = mutations(rng);
  for (int i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> at(0, trace.events.size() - 1);
    trace.events[at(rng)] = symbol(rng);
  }
  d.traces.push_back(std::move(trace));
  return d;
}

namespace {

void note(OracleCheckReport& report, bool ok, const std::string& what) {
  ++report.comparisons;
  if (ok) return;
  ++report.mismatches;
  if (report.details.size() < 20) report.details.push_back(what);
}

SequenceSet up_to(const SequenceSet& s, std::size_t max_len) {
  SequenceSet out;
  for (const auto& x : s) {
    if (x.size() <= max_len) out.insert(x);
  }
  return out;
}

// Trie result agrees with the exact oracle minimum under the capped semantics.
bool consistent(const MinLength& trie, std::optional<std::size_t> exact) {
  if (trie.is_unbounded()) return !exact.has_value();
  if (trie.is_finite()) return exact && *exact == trie.value();
  return !exact || *exact >= trie.lower_bound();
}

}  // namespace

void oracle_compare(const Dataset& tgt, const Dataset& ref, std::size_t cap,
                    OracleCheckReport& report) {
  const auto exact = oracle_enumerate(tgt, ref);
  const SequenceModel tgt_model(tgt, cap);
  const SequenceModel ref_model(ref, cap);
  const auto fs = foreign_self(tgt_model, ref_model);
  const auto label = [&](const std::string& what) {
    return "case " + std::to_string(report.cases) + ": " + what;
  };
  for (std::size_t l = 0; l <= cap; ++l) {
    const SequenceSet empty;
    const auto& of = l < exact.foreign.size() ? exact.foreign[l] : empty;
    const auto& os = l < exact.self.size() ? exact.self[l] : empty;
    note(report, fs.foreign[l] == of, label("FRGN length " + std::to_string(l)));
    note(report, fs.self[l] == os, label("SELF length " + std::to_string(l)));
  }
  note(report, mfs_set(tgt_model, ref_model) == up_to(exact.mfs, cap), label("MFS set"));
  note(report, mss_set(tgt_model, ref_model) == up_to(exact.mss, cap - 1), label("MSS set"));
  note(report, consistent(mfs_min_len(tgt_model, ref_model), exact.mfs_min), label("|MFS|min"));
  note(report, consistent(mss_min_len(tgt_model, ref_model), exact.mss_min), label("|MSS|min"));
  for (const auto& trace : tgt.traces) {
    note(report, fsl_series(ref_model, trace.events) == oracle_fsl(trace.events, ref, cap),
         label("FSL series"));
  }
  ++report.cases;
}

OracleCheckReport oracle_check(std::uint64_t seed, std::size_t cases, std::size_t cap) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> alphabet_dist(1, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  OracleCheckReport report;
  for (std::size_t c = 0; c < cases; ++c) {
    const auto alphabet = alphabet_dist(rng);
    const auto ref = random_dataset(rng, alphabet, 40);
    const auto tgt = coin(rng) ? mutated_dataset(rng, ref, alphabet, 40)
                               : random_dataset(rng, alphabet, 40);
    oracle_compare(tgt, ref, cap, report);
  }
  return report;
}

}  // namespace stidelab

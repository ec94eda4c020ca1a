#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "stidelab/oracle.hpp"
#include "stidelab/sequence.hpp"
#include "stidelab/trace_model.hpp"

namespace stidelab::testing {

/// 'a' -> 1, 'b' -> 2, ...
Sequence seq(std::string_view letters);
SequenceSet seqs(std::initializer_list<std::string_view> letters);
std::string letters(const Sequence& s);

/// One trace per argument.
Dataset letters_dataset(std::initializer_list<std::string_view> traces,
                        Role role = Role::normal, std::string name = "fixture");

/// Traces of length >= min_trace (when the budget allows one), total events
/// <= max_total, symbols 1..alphabet.
Dataset long_traces(std::mt19937_64& rng, std::size_t alphabet, std::size_t min_trace,
                    std::size_t max_total);

/// Traces stitched from slices of `ref` with occasional substitutions, so the
/// result shares most windows with `ref` but has foreign sequences of varied
/// length. Same length rules as long_traces.
Dataset derived_traces(std::mt19937_64& rng, const Dataset& ref, std::size_t alphabet,
                       std::size_t min_trace, std::size_t max_total, double mutation_rate);

/// Normal data cut from one short cyclic pattern; splits of it are often
/// efficient, which the trimming suite needs.
Dataset cyclic_traces(std::mt19937_64& rng, const std::vector<Symbol>& pattern,
                      std::size_t traces, std::size_t min_len, std::size_t max_len);

std::vector<Symbol> random_pattern(std::mt19937_64& rng, std::size_t alphabet, std::size_t length);

/// The maximal-overlap fixture: an intrusive trace whose n MFSs of length
/// mfs_length overlap maximally, and a training set making exactly those MFSs
/// foreign. Used to check the w - l_k + n mismatch count.
struct OverlapFixture {
  Dataset training;
  Dataset intrusive;
  std::size_t start = 0;  // index of the first MFS in the intrusive trace
};

OverlapFixture overlap_fixture(std::size_t window, std::size_t mfs_length, std::size_t count);

/// Outcome of one property suite.
struct PropertyStats {
  std::string name;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t premise_instances = 0;  // instances meeting the property's premise
  std::size_t violations = 0;
  std::vector<std::string> details;
  OracleCheckReport oracle;  // trie vs oracle on this suite's instances

  void check(bool ok, const std::string& what);
};

// Every suite draws instances with alphabet <= 4 and datasets of <= 40 events.
PropertyStats mss_gap_suite(std::uint64_t seed, std::size_t cases, std::size_t cap);
PropertyStats tpss_bridge_suite(std::uint64_t seed, std::size_t cases, std::size_t cap);
PropertyStats effectiveness_suite(std::uint64_t seed, std::size_t cases, std::size_t cap);
PropertyStats completeness_suite(std::uint64_t seed, std::size_t cases, std::size_t cap);
PropertyStats window_suite(std::uint64_t seed, std::size_t cases, std::size_t cap);
PropertyStats cfps_suite(std::uint64_t seed, std::size_t cases, std::size_t cap);
PropertyStats trim_suite(std::uint64_t seed, std::size_t cases, std::size_t cap);
PropertyStats oracle_suite(std::uint64_t seed, std::size_t cases, std::size_t cap);
PropertyStats context_suite(std::uint64_t seed, std::size_t cases, std::size_t cap);

}  // namespace stidelab::testing

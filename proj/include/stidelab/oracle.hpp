#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stidelab/sequence.hpp"
#include "stidelab/trace_model.hpp"

namespace stidelab {

/// Inputs larger than this (tgt + ref events) are refused by the oracle.
inline constexpr std::size_t oracle_event_guard = 10'000;

/// Everything the oracle materializes for one (tgt, ref) pair. Set vectors are
/// indexed by length 0..max_length.
struct OracleResult {
  std::size_t max_length = 0;
  bool exhaustive = false;  // max_length covers the longest tgt trace
  std::vector<SequenceSet> foreign;
  std::vector<SequenceSet> self;
  SequenceSet mfs;
  SequenceSet mss;
  std::optional<std::size_t> mfs_min;  // nullopt: none within max_length
  std::optional<std::size_t> mss_min;
};

/// Brute-force enumeration of every window of every length 1..max_length.
/// Defaults to the longest tgt trace, which makes the result exact.
/// Shares no code with the trie path. Throws GuardError past the event guard.
OracleResult oracle_enumerate(const Dataset& tgt, const Dataset& ref,
                              std::optional<std::size_t> max_length = std::nullopt);

/// Per-event shortest foreign suffix length of `trace` against `ref`, or
/// cap + 1 when every suffix up to the cap is a window of `ref`.
std::vector<std::uint32_t> oracle_fsl(SymbolView trace, const Dataset& ref, std::size_t cap);

/// Random small dataset: 1..max_traces traces of length 0..max_length over
/// symbols 0..alphabet-1.
Dataset random_dataset(std::mt19937_64& rng, std::size_t alphabet, std::size_t max_length,
                       std::size_t max_traces = 3);

/// A target derived from `ref` by copying a stretch of one trace and mutating
/// a few events, which yields long minimum foreign sequences.
Dataset mutated_dataset(std::mt19937_64& rng, const Dataset& ref, std::size_t alphabet,
                        std::size_t max_length);

struct OracleCheckReport {
  std::size_t cases = 0;
  std::size_t comparisons = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> details;  // first few mismatch descriptions
};

/// Compares the trie-based FRGN/SELF/MFS/MSS/minimum lengths and FSL series
/// with the oracle on one pair, appending to `report`.
void oracle_compare(const Dataset& tgt, const Dataset& ref, std::size_t cap,
                    OracleCheckReport& report);

/// Runs oracle_compare on `cases` generated pairs (alphabet <= 4, datasets of
/// at most 40 events).
OracleCheckReport oracle_check(std::uint64_t seed, std::size_t cases, std::size_t cap);

}  // namespace stidelab

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stidelab/sequence.hpp"
#include "stidelab/sequence_model.hpp"
#include "stidelab/trace_model.hpp"

namespace stidelab {

/// A finite non-negative length or +∞. Unbounded compares above every Finite.
class LengthBound {
 public:
  static constexpr LengthBound finite(std::size_t k) noexcept { return LengthBound(k, false); }
  static constexpr LengthBound unbounded() noexcept { return LengthBound(0, true); }

  constexpr bool is_finite() const noexcept { return !unbounded_; }
  constexpr bool is_unbounded() const noexcept { return unbounded_; }
  /// Requires is_finite().
  std::size_t value() const;

  /// Finite(k) - 1 requires k >= 1; Unbounded - 1 stays Unbounded.
  LengthBound minus_one() const;

  std::string to_string() const;

  friend constexpr bool operator==(const LengthBound&, const LengthBound&) = default;
  friend constexpr std::strong_ordering operator<=>(const LengthBound& a, const LengthBound& b) {
    if (a.unbounded_ || b.unbounded_) return a.unbounded_ <=> b.unbounded_;
    return a.value_ <=> b.value_;
  }

 private:
  constexpr LengthBound(std::size_t v, bool u) noexcept : value_(v), unbounded_(u) {}
  std::size_t value_;
  bool unbounded_;
};

/// Result of a minimum-length query under a length cap N.
///
/// Either resolved (a LengthBound) or capped: the scan reached N without
/// resolving, value() is N and the true minimum is known to be at least
/// lower_bound().
class MinLength {
 public:
  static MinLength finite(std::size_t k) { return MinLength(LengthBound::finite(k), false, k); }
  static MinLength unbounded() { return MinLength(LengthBound::unbounded(), false, 0); }
  static MinLength capped(std::size_t cap, std::size_t lower_bound) {
    return MinLength(LengthBound::finite(cap), true, lower_bound);
  }

  bool capped() const noexcept { return capped_; }
  bool resolved() const noexcept { return !capped_; }
  bool is_finite() const noexcept { return !capped_ && bound_.is_finite(); }
  bool is_unbounded() const noexcept { return !capped_ && bound_.is_unbounded(); }

  /// The resolved bound; for a capped result, Finite(N).
  LengthBound bound() const noexcept { return bound_; }
  /// Finite value or cap; throws for Unbounded.
  std::size_t value() const { return bound_.value(); }
  std::size_t lower_bound() const noexcept { return capped_ ? lower_ : bound_.is_finite() ? bound_.value() : 0; }

  /// Decides `*this >= k` when the information allows it.
  std::optional<bool> at_least(std::size_t k) const;
  /// Decides `*this <= k` when the information allows it.
  std::optional<bool> at_most(std::size_t k) const;

  /// "3", "inf", or ">=N" for capped results.
  std::string to_string() const;

  friend bool operator==(const MinLength&, const MinLength&) = default;

 private:
  MinLength(LengthBound b, bool c, std::size_t lower) : bound_(b), capped_(c), lower_(lower) {}
  LengthBound bound_;
  bool capped_;
  std::size_t lower_;
};

/// Decides a <= b when the information allows it.
std::optional<bool> less_equal(const MinLength& a, const MinLength& b);

/// Minimum of two results; Unbounded is the identity and capped absorbs
/// everything except a smaller finite value.
MinLength min_of(const MinLength& a, const MinLength& b);

/// SS(Σ, length) by direct window enumeration. length 0 gives {φ}.
SequenceSet sequence_set(const Dataset& dataset, std::size_t length);

enum class SetOp { unite, intersect, subtract };

/// Per-length set algebra. Throws ValidationError when members differ in length.
SequenceSet set_op(const SequenceSet& a, const SequenceSet& b, SetOp op);

/// FRGN and SELF per length, indexed 0..cap. self[0] = {φ}, foreign[0] = ∅.
struct ForeignSelf {
  std::vector<SequenceSet> foreign;
  std::vector<SequenceSet> self;
};

/// Throws ValidationError when the caps differ.
ForeignSelf foreign_self(const SequenceModel& tgt, const SequenceModel& ref);

/// Minimum foreign sequences of length <= cap.
SequenceSet mfs_set(const SequenceModel& tgt, const SequenceModel& ref);

/// Maximum self sequences of length <= cap-1 (the longest resolvable under the
/// cap, since a witness supersequence is one event longer). A sequence with a
/// foreign one-event extension on either side qualifies.
SequenceSet mss_set(const SequenceModel& tgt, const SequenceModel& ref);

MinLength mfs_min_len(const SequenceModel& tgt, const SequenceModel& ref);
MinLength mss_min_len(const SequenceModel& tgt, const SequenceModel& ref);

struct CfpsResult {
  std::vector<SequenceSet> by_length;  // index 0..cap
  MinLength min_length = MinLength::unbounded();

  SequenceSet all() const;
};

/// CFPS(int, tst | trn) = FRGN(tst | trn) ∩ SS(int), per length.
CfpsResult cfps(const SequenceModel& intrusive, const SequenceModel& test,
                const SequenceModel& training);

struct MfsDecomposition {
  MinLength cfps_min = MinLength::unbounded();
  MinLength concat_mfs_min = MinLength::unbounded();  // |MFS|min(int | trn ⊙ tst)
  MinLength combined = MinLength::unbounded();        // min of the two
};

/// Splits |MFS|min(int | trn) into the false-positive and intrusion parts.
MfsDecomposition mfs_min_decomposition(const SequenceModel& intrusive, const SequenceModel& test,
                                       const SequenceModel& training);

}  // namespace stidelab

#include "stidelab/sequence_core.hpp"

#include <algorithm>
#include <iterator>

#include "stidelab/error.hpp"

namespace stidelab {

using NodeId = SequenceModel::NodeId;

std::size_t LengthBound::value() const {
  if (unbounded_) throw ValidationError("unbounded length has no finite value");
  return value_;
}

LengthBound LengthBound::minus_one() const {
  if (unbounded_) return *this;
  if (value_ == 0) throw ValidationError("cannot decrement a zero length");
  return finite(value_ - 1);
}

std::string LengthBound::to_string() const {
  return unbounded_ ? "inf" : std::to_string(value_);
}

std::optional<bool> MinLength::at_least(std::size_t k) const {
  if (capped_) {
    if (lower_ >= k) return true;
    return std::nullopt;
  }
  if (bound_.is_unbounded()) return true;
  return bound_.value() >= k;
}

std::optional<bool> MinLength::at_most(std::size_t k) const {
  if (capped_) {
    if (lower_ > k) return false;
    return std::nullopt;
  }
  if (bound_.is_unbounded()) return false;
  return bound_.value() <= k;
}

std::string MinLength::to_string() const {
  if (capped_) return ">=" + std::to_string(lower_);
  return bound_.to_string();
}

std::optional<bool> less_equal(const MinLength& a, const MinLength& b) {
  if (b.is_unbounded()) return true;
  if (a.is_unbounded()) {
    if (b.capped()) return std::nullopt;
    return false;
  }
  if (a.is_finite()) {
    if (b.is_finite()) return a.value() <= b.value();
    return b.at_least(a.value());
  }
  // a capped, b finite or capped
  if (b.is_finite()) return a.at_most(b.value());
  return std::nullopt;
}

MinLength min_of(const MinLength& a, const MinLength& b) {
  if (a.is_unbounded()) return b;
  if (b.is_unbounded()) return a;
  if (a.is_finite() && b.is_finite()) return a.value() <= b.value() ? a : b;
  if (a.capped() && b.capped()) {
    return MinLength::capped(std::max(a.value(), b.value()),
                             std::min(a.lower_bound(), b.lower_bound()));
  }
  const MinLength& fin = a.is_finite() ? a : b;
  const MinLength& cap = a.is_finite() ? b : a;
  if (fin.value() <= cap.lower_bound()) return fin;
  return cap;
}

SequenceSet sequence_set(const Dataset& dataset, std::size_t length) {
  SequenceSet out;
  if (length == 0) {
    out.insert(Sequence{});
    return out;
  }
  for_each_window(dataset, length,
                  [&](std::size_t, std::size_t, SymbolView w) { out.emplace(w); });
  return out;
}

SequenceSet set_op(const SequenceSet& a, const SequenceSet& b, SetOp op) {
  std::optional<std::size_t> length;
  auto check = [&](const SequenceSet& s) {
    for (const auto& seq : s) {
      if (!length) length = seq.size();
      if (*length != seq.size()) {
        throw ValidationError("set operations require sequences of a single length");
      }
    }
  };
  check(a);
  check(b);
  SequenceSet out;
  switch (op) {
    case SetOp::unite:
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
      break;
    case SetOp::intersect:
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::inserter(out, out.end()));
      break;
    case SetOp::subtract:
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
      break;
  }
  return out;
}

namespace {

void require_same_cap(const SequenceModel& a, const SequenceModel& b) {
  if (a.cap() != b.cap()) {
    throw ValidationError("sequence models have different caps (" + std::to_string(a.cap()) +
                          " vs " + std::to_string(b.cap()) + ")");
  }
}

/// Suffix of `node` dropping its first event is a member of `ref`.
bool suffix_is_self(const SequenceModel& tgt, NodeId node, const SequenceModel& ref) {
  const auto seq = tgt.sequence(node);
  return ref.contains(seq.view().subspan(1));
}

}  // namespace

ForeignSelf foreign_self(const SequenceModel& tgt, const SequenceModel& ref) {
  require_same_cap(tgt, ref);
  const auto proj = project(tgt, ref);
  ForeignSelf out;
  out.foreign.resize(tgt.cap() + 1);
  out.self.resize(tgt.cap() + 1);
  out.self[0].insert(Sequence{});
  for (std::size_t l = 1; l <= tgt.cap(); ++l) {
    for (NodeId n : tgt.level(l)) {
      (proj[n] == SequenceModel::npos ? out.foreign[l] : out.self[l]).insert(tgt.sequence(n));
    }
  }
  return out;
}

SequenceSet mfs_set(const SequenceModel& tgt, const SequenceModel& ref) {
  require_same_cap(tgt, ref);
  const auto proj = project(tgt, ref);
  SequenceSet out;
  for (std::size_t l = 1; l <= tgt.cap(); ++l) {
    for (NodeId n : tgt.level(l)) {
      if (proj[n] != SequenceModel::npos) continue;
      // Foreignness is closed under extension, so checking both one-event
      // shorter subsequences covers every proper subsequence.
      if (proj[tgt.parent(n)] == SequenceModel::npos) continue;
      if (!suffix_is_self(tgt, n, ref)) continue;
      out.insert(tgt.sequence(n));
    }
  }
  return out;
}

SequenceSet mss_set(const SequenceModel& tgt, const SequenceModel& ref) {
  require_same_cap(tgt, ref);
  const auto proj = project(tgt, ref);
  SequenceSet out;
  for (std::size_t l = 1; l <= tgt.cap(); ++l) {
    for (NodeId n : tgt.level(l)) {
      if (proj[n] != SequenceModel::npos) continue;
      // n is a foreign one-event extension of its prefix (right extension)
      // and of its suffix (left extension).
      if (proj[tgt.parent(n)] != SequenceModel::npos) out.insert(tgt.sequence(tgt.parent(n)));
      const auto seq = tgt.sequence(n);
      const auto suffix = seq.view().subspan(1);
      if (ref.contains(suffix)) out.emplace(suffix);
    }
  }
  return out;
}

MinLength mfs_min_len(const SequenceModel& tgt, const SequenceModel& ref) {
  require_same_cap(tgt, ref);
  const auto proj = project(tgt, ref);
  for (std::size_t l = 1; l <= tgt.cap(); ++l) {
    for (NodeId n : tgt.level(l)) {
      if (proj[n] == SequenceModel::npos) return MinLength::finite(l);
    }
  }
  if (tgt.exhaustive()) return MinLength::unbounded();
  return MinLength::capped(tgt.cap(), tgt.cap() + 1);
}

MinLength mss_min_len(const SequenceModel& tgt, const SequenceModel& ref) {
  require_same_cap(tgt, ref);
  const auto proj = project(tgt, ref);
  for (std::size_t l = 1; l <= tgt.cap(); ++l) {
    for (NodeId n : tgt.level(l)) {
      if (proj[n] != SequenceModel::npos) continue;
      if (proj[tgt.parent(n)] != SequenceModel::npos || suffix_is_self(tgt, n, ref)) {
        return MinLength::finite(l - 1);
      }
    }
  }
  if (tgt.exhaustive()) return MinLength::unbounded();
  return MinLength::capped(tgt.cap(), tgt.cap());
}

SequenceSet CfpsResult::all() const {
  SequenceSet out;
  for (const auto& s : by_length) out.insert(s.begin(), s.end());
  return out;
}

CfpsResult cfps(const SequenceModel& intrusive, const SequenceModel& test,
                const SequenceModel& training) {
  require_same_cap(intrusive, test);
  require_same_cap(intrusive, training);
  const auto in_test = project(intrusive, test);
  const auto in_training = project(intrusive, training);
  CfpsResult out;
  out.by_length.resize(intrusive.cap() + 1);
  std::optional<std::size_t> shortest;
  for (std::size_t l = 1; l <= intrusive.cap(); ++l) {
    for (NodeId n : intrusive.level(l)) {
      if (in_test[n] != SequenceModel::npos && in_training[n] == SequenceModel::npos) {
        out.by_length[l].insert(intrusive.sequence(n));
        if (!shortest) shortest = l;
      }
    }
  }
  if (shortest) {
    out.min_length = MinLength::finite(*shortest);
  } else if (!intrusive.exhaustive()) {
    out.min_length = MinLength::capped(intrusive.cap(), intrusive.cap() + 1);
  }
  return out;
}

MfsDecomposition mfs_min_decomposition(const SequenceModel& intrusive, const SequenceModel& test,
                                       const SequenceModel& training) {
  MfsDecomposition out;
  out.cfps_min = cfps(intrusive, test, training).min_length;
  out.concat_mfs_min = mfs_min_len(intrusive, SequenceModel::merge(training, test));
  out.combined = min_of(out.cfps_min, out.concat_mfs_min);
  return out;
}

}  // namespace stidelab

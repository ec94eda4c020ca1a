#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stidelab/trace_model.hpp"

namespace stidelab {

/// A contiguous run of events. The empty sequence is φ.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  explicit Sequence(SymbolView symbols) : symbols_(symbols.begin(), symbols.end()) {}
  Sequence(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  SymbolView view() const noexcept { return symbols_; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  /// Contiguous subsequence test (ac is not inside abc).
  bool contains(const Sequence& sub) const;

  /// Hyphen-joined integers, e.g. "2-95-6". φ renders as "".
  std::string to_string() const;
  static Sequence parse(std::string_view text);

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend auto operator<=>(const Sequence&, const Sequence&) = default;

 private:
  std::vector<Symbol> symbols_;
};

using SequenceSet = std::set<Sequence>;

/// Transparent hashing so hash sets of Sequence can be probed with a SymbolView.
struct SequenceHash {
  using is_transparent = void;
  std::size_t operator()(SymbolView v) const noexcept;
  std::size_t operator()(const Sequence& s) const noexcept { return (*this)(s.view()); }
};

struct SequenceEqual {
  using is_transparent = void;
  static SymbolView as_view(SymbolView v) { return v; }
  static SymbolView as_view(const Sequence& s) { return s.view(); }
  template <typename A, typename B>
  bool operator()(const A& a, const B& b) const {
    const auto va = as_view(a);
    const auto vb = as_view(b);
    return va.size() == vb.size() && std::equal(va.begin(), va.end(), vb.begin());
  }
};

}  // namespace stidelab

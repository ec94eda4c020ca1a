#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stidelab/sequence.hpp"
#include "stidelab/trace_model.hpp"

namespace stidelab {

/// Membership index over every contiguous window of length 1..cap of a dataset.
///
/// Realized as a trie: each node at depth l is one member of SS(Σ, l) and the
/// root is φ. The index is prefix-closed and, because windows are inserted per
/// trace, never contains a sequence spanning two traces.
class SequenceModel {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId root = 0;
  static constexpr NodeId npos = static_cast<NodeId>(-1);
  static constexpr std::size_t default_cap = 25;

  explicit SequenceModel(std::size_t cap = default_cap);
  explicit SequenceModel(const Dataset& dataset, std::size_t cap = default_cap);

  /// Indexes every window of `events` up to the cap.
  void add_trace(SymbolView events);

  /// Inserts one sequence (and hence its prefixes). |seq| must not exceed the cap.
  NodeId insert(SymbolView seq);

  /// ⊙ at model level: the union of two indexes with the same cap.
  static SequenceModel merge(const SequenceModel& a, const SequenceModel& b);

  std::size_t cap() const noexcept { return cap_; }
  std::size_t node_count() const noexcept { return parent_.size(); }

  NodeId child(NodeId node, Symbol s) const noexcept;
  NodeId parent(NodeId node) const { return parent_[node]; }
  Symbol symbol(NodeId node) const { return symbol_[node]; }
  std::size_t depth(NodeId node) const { return depth_[node]; }

  /// Node for `seq`, or npos. Throws ValidationError if |seq| > cap.
  NodeId find(SymbolView seq) const;
  bool contains(SymbolView seq) const { return find(seq) != npos; }
  bool contains(const Sequence& seq) const { return contains(seq.view()); }

  /// Nodes at depth `length` in insertion order; length 0 yields the root.
  std::span<const NodeId> level(std::size_t length) const;

  Sequence sequence(NodeId node) const;
  SequenceSet sequences(std::size_t length) const;

  /// Length of the longest trace passed to add_trace.
  std::size_t longest_trace() const noexcept { return longest_trace_; }

  /// True when every window of every length of the source is indexed, i.e.
  /// the source has no trace longer than the cap.
  bool exhaustive() const noexcept { return longest_trace_ <= cap_; }

 private:
  NodeId get_or_add(NodeId parent, Symbol s);
  void rehash(std::size_t capacity);

  static std::uint64_t key(NodeId parent, Symbol s) noexcept {
    return ((static_cast<std::uint64_t>(parent) + 1) << 32) | s;
  }

  std::size_t cap_;
  std::size_t longest_trace_ = 0;
  std::vector<NodeId> parent_;
  std::vector<Symbol> symbol_;
  std::vector<std::uint16_t> depth_;
  std::vector<std::vector<NodeId>> levels_;

  // Open-addressing child table keyed by (parent, symbol); key 0 marks empty.
  std::vector<std::uint64_t> slot_keys_;
  std::vector<NodeId> slot_values_;
  std::size_t slot_mask_ = 0;
};

/// Maps every node of `tgt` to the node of `ref` holding the same sequence,
/// or SequenceModel::npos when the sequence is foreign to `ref`.
std::vector<SequenceModel::NodeId> project(const SequenceModel& tgt, const SequenceModel& ref);

}  // namespace stidelab

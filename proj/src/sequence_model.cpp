#include "stidelab/sequence_model.hpp"

#include <algorithm>
#include <limits>

#include "stidelab/error.hpp"

namespace stidelab {

namespace {

std::uint64_t mix(std::uint64_t k) noexcept {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  return k;
}

}  // namespace

SequenceModel::SequenceModel(std::size_t cap) : cap_(cap) {
  if (cap == 0) throw ValidationError("sequence model cap must be >= 1");
  if (cap > std::numeric_limits<std::uint16_t>::max()) {
    throw ValidationError("sequence model cap too large");
  }
  parent_.push_back(npos);
  symbol_.push_back(0);
  depth_.push_back(0);
  levels_.resize(cap + 1);
  levels_[0].push_back(root);
  rehash(1024);
}

SequenceModel::SequenceModel(const Dataset& dataset, std::size_t cap) : SequenceModel(cap) {
  for (const auto& trace : dataset.traces) add_trace(trace.events);
}

void SequenceModel::rehash(std::size_t capacity) {
  std::vector<std::uint64_t> old_keys(capacity, 0);
  std::vector<NodeId> old_values(capacity, npos);
  old_keys.swap(slot_keys_);
  old_values.swap(slot_values_);
  slot_mask_ = capacity - 1;
  for (std::size_t i = 0; i < old_keys.size(); ++i) {
    if (old_keys[i] == 0) continue;
    std::size_t slot = mix(old_keys[i]) & slot_mask_;
    while (slot_keys_[slot] != 0) slot = (slot + 1) & slot_mask_;
    slot_keys_[slot] = old_keys[i];
    slot_values_[slot] = old_values[i];
  }
}

SequenceModel::NodeId SequenceModel::child(NodeId node, Symbol s) const noexcept {
  const auto k = key(node, s);
  std::size_t slot = mix(k) & slot_mask_;
  while (true) {
    const auto stored = slot_keys_[slot];
    if (stored == k) return slot_values_[slot];
    if (stored == 0) return npos;
    slot = (slot + 1) & slot_mask_;
  }
}

SequenceModel::NodeId SequenceModel::get_or_add(NodeId node, Symbol s) {
  const auto k = key(node, s);
  std::size_t slot = mix(k) & slot_mask_;
  while (true) {
    const auto stored = slot_keys_[slot];
    if (stored == k) return slot_values_[slot];
    if (stored == 0) break;
    slot = (slot + 1) & slot_mask_;
  }
  if (parent_.size() >= std::numeric_limits<NodeId>::max() - 1) {
    throw ValidationError("sequence model exceeds node capacity");
  }
  const auto id = static_cast<NodeId>(parent_.size());
  parent_.push_back(node);
  symbol_.push_back(s);
  const auto d = static_cast<std::uint16_t>(depth_[node] + 1);
  depth_.push_back(d);
  levels_[d].push_back(id);
  slot_keys_[slot] = k;
  slot_values_[slot] = id;
  // Load factor stays below 1/2.
  if (parent_.size() * 2 > slot_keys_.size()) rehash(slot_keys_.size() * 2);
  return id;
}

void SequenceModel::add_trace(SymbolView events) {
  longest_trace_ = std::max(longest_trace_, events.size());
  // frontier[l] is the node of the length-(l+1) window ending at the previous
  // event; extending it by the next event gives the windows ending there.
  std::vector<NodeId> frontier;
  frontier.reserve(cap_);
  std::vector<NodeId> next;
  next.reserve(cap_);
  for (Symbol s : events) {
    next.clear();
    next.push_back(get_or_add(root, s));
    for (std::size_t l = 0; l < frontier.size() && l + 1 < cap_; ++l) {
      next.push_back(get_or_add(frontier[l], s));
    }
    frontier.swap(next);
  }
}

SequenceModel::NodeId SequenceModel::insert(SymbolView seq) {
  if (seq.size() > cap_) throw ValidationError("sequence longer than model cap");
  NodeId node = root;
  for (Symbol s : seq) node = get_or_add(node, s);
  return node;
}

SequenceModel SequenceModel::merge(const SequenceModel& a, const SequenceModel& b) {
  if (a.cap_ != b.cap_) throw ValidationError("cannot merge sequence models with different caps");
  SequenceModel out = a;
  // Level order guarantees a parent is mapped before its children.
  std::vector<NodeId> map(b.node_count(), npos);
  map[root] = root;
  for (std::size_t l = 1; l <= b.cap_; ++l) {
    for (NodeId n : b.levels_[l]) map[n] = out.get_or_add(map[b.parent_[n]], b.symbol_[n]);
  }
  out.longest_trace_ = std::max(a.longest_trace_, b.longest_trace_);
  return out;
}

SequenceModel::NodeId SequenceModel::find(SymbolView seq) const {
  if (seq.size() > cap_) throw ValidationError("sequence longer than model cap");
  NodeId node = root;
  for (Symbol s : seq) {
    node = child(node, s);
    if (node == npos) return npos;
  }
  return node;
}

std::span<const SequenceModel::NodeId> SequenceModel::level(std::size_t length) const {
  if (length > cap_) return {};
  return levels_[length];
}

Sequence SequenceModel::sequence(NodeId node) const {
  std::vector<Symbol> out(depth_[node]);
  for (auto i = out.size(); i > 0; --i) {
    out[i - 1] = symbol_[node];
    node = parent_[node];
  }
  return Sequence{std::move(out)};
}

SequenceSet SequenceModel::sequences(std::size_t length) const {
  SequenceSet out;
  for (NodeId n : level(length)) out.insert(sequence(n));
  return out;
}

std::vector<SequenceModel::NodeId> project(const SequenceModel& tgt, const SequenceModel& ref) {
  std::vector<SequenceModel::NodeId> map(tgt.node_count(), SequenceModel::npos);
  map[SequenceModel::root] = SequenceModel::root;
  const auto depth = std::min(tgt.cap(), ref.cap());
  for (std::size_t l = 1; l <= depth; ++l) {
    for (auto n : tgt.level(l)) {
      const auto p = map[tgt.parent(n)];
      if (p != SequenceModel::npos) map[n] = ref.child(p, tgt.symbol(n));
    }
  }
  return map;
}

}  // namespace stidelab

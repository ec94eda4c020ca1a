#include "stidelab/sequence.hpp"

#include <algorithm>
#include <charconv>

#include "stidelab/error.hpp"

namespace stidelab {

bool Sequence::contains(const Sequence& sub) const {
  if (sub.empty()) return true;
  return std::search(symbols_.begin(), symbols_.end(), sub.begin(), sub.end()) != symbols_.end();
}

std::string Sequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(symbols_[i]);
  }
  return out;
}

Sequence Sequence::parse(std::string_view text) {
  std::vector<Symbol> out;
  if (text.empty()) return Sequence{};
  std::size_t pos = 0;
  while (true) {
    auto dash = text.find('-', pos);
    const auto token = text.substr(pos, dash == std::string_view::npos ? std::string_view::npos
                                                                       : dash - pos);
    Symbol v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ValidationError("bad sequence '" + std::string(text) + "'");
    }
    out.push_back(v);
    if (dash == std::string_view::npos) break;
    pos = dash + 1;
  }
  return Sequence{std::move(out)};
}

std::size_t SequenceHash::operator()(SymbolView v) const noexcept {
  // FNV-1a over the symbol words.
  std::uint64_t h = 1469598103934665603ULL;
  for (Symbol s : v) {
    h ^= s;
    h *= 1099511628211ULL;
  }
  h ^= v.size();
  return static_cast<std::size_t>(h * 0x9E3779B97F4A7C15ULL);
}

}  // namespace stidelab

#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_map>

#include "simscore/lexer.hpp"

namespace simscore {

/// Separator between token texts inside an n-gram key. Never produced by the lexer.
inline constexpr char kNgramSeparator = '\x1f';

struct NgramEntry {
  std::size_t count = 0;
  bool has_keyword = false;
};

/// Multiset of contiguous n-token windows keyed on the joined token texts.
class NgramMultiset {
 public:
  using Map = std::unordered_map<std::string, NgramEntry>;

  std::size_t count(std::string_view key) const;
  std::size_t total() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return map_.size(); }
  bool empty() const noexcept { return total_ == 0; }
  const Map& entries() const noexcept { return map_; }

  void add(std::string key, bool has_keyword, std::size_t times = 1);

 private:
  Map map_;
  std::size_t total_ = 0;
};

std::string ngram_key(std::initializer_list<std::string_view> parts);

/// All windows of `n` tokens; size is max(0, len - n + 1). Throws ArgumentError for n < 1.
NgramMultiset ngram_multiset(const TokenStream& tokens, int n);

}  // namespace simscore

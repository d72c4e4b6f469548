#include "simscore/ngram.hpp"

#include "simscore/error.hpp"

namespace simscore {

std::size_t NgramMultiset::count(std::string_view key) const {
  const auto it = map_.find(std::string(key));
  return it == map_.end() ? 0 : it->second.count;
}

void NgramMultiset::add(std::string key, bool has_keyword, std::size_t times) {
  auto& e = map_[std::move(key)];
  e.count += times;
  e.has_keyword = e.has_keyword || has_keyword;
  total_ += times;
}

std::string ngram_key(std::initializer_list<std::string_view> parts) {
  std::string key;
  bool first = true;
  for (auto p : parts) {
    if (!first) key.push_back(kNgramSeparator);
    key.append(p);
    first = false;
  }
  return key;
}

NgramMultiset ngram_multiset(const TokenStream& tokens, int n) {
  if (n < 1) throw ArgumentError("n-gram order must be >= 1, got " + std::to_string(n));
  NgramMultiset out;
  const auto order = static_cast<std::size_t>(n);
  if (tokens.size() < order) return out;
  std::string key;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    key.clear();
    bool kw = false;
    for (std::size_t k = 0; k < order; ++k) {
      if (k) key.push_back(kNgramSeparator);
      key.append(tokens[i + k].text);
      kw = kw || tokens[i + k].kind == TokenKind::kKeyword;
    }
    out.add(key, kw);
  }
  return out;
}

}  // namespace simscore

#pragma once

#include <cstddef>
#include <map>
#include <string>

namespace simscore {

/// Ordered string multiset; ordering keeps every derived output deterministic.
using StringMultiset = std::map<std::string, std::size_t>;

inline std::size_t multiset_size(const StringMultiset& m) {
  std::size_t n = 0;
  for (const auto& [k, c] : m) n += c;
  return n;
}

/// Sum over candidate keys of min(count_candidate, count_reference).
inline std::size_t clipped_matches(const StringMultiset& candidate, const StringMultiset& reference) {
  std::size_t matched = 0;
  for (const auto& [key, count] : candidate) {
    const auto it = reference.find(key);
    if (it != reference.end()) matched += count < it->second ? count : it->second;
  }
  return matched;
}

}  // namespace simscore

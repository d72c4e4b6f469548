#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "simscore/lexer.hpp"
#include "simscore/metrics/bleu.hpp"

namespace simscore {

/// Per-order sets F_n of n-grams considered trivially shared.
class TriviallySharedSet {
 public:
  TriviallySharedSet() = default;
  explicit TriviallySharedSet(std::vector<std::unordered_set<std::string>> orders) : orders_(std::move(orders)) {}

  bool contains(int n, const std::string& key) const {
    const auto i = static_cast<std::size_t>(n - 1);
    return i < orders_.size() && orders_[i].count(key) != 0;
  }
  /// |F_n|; 0 for orders never populated.
  std::size_t size(int n) const {
    const auto i = static_cast<std::size_t>(n - 1);
    return i < orders_.size() ? orders_[i].size() : 0;
  }
  int orders() const { return static_cast<int>(orders_.size()); }
  const std::unordered_set<std::string>& order(int n) const { return orders_.at(static_cast<std::size_t>(n - 1)); }

 private:
  std::vector<std::unordered_set<std::string>> orders_;
};

/// The k_shared most frequent n-grams of each order by total count across all
/// streams; ties go to the lexicographically smaller key.
TriviallySharedSet trivially_shared_ngrams(const std::vector<TokenStream>& streams, const MetricConfig& cfg);
TriviallySharedSet trivially_shared_ngrams(const std::vector<const NgramProfile*>& profiles,
                                           const MetricConfig& cfg);

NgramScore crystalbleu(const NgramProfile& candidate, const NgramProfile& reference,
                       const TriviallySharedSet& shared, const MetricConfig& cfg);
double crystalbleu(const TokenStream& candidate, const TokenStream& reference, const TriviallySharedSet& shared,
                   const MetricConfig& cfg = {});

}  // namespace simscore

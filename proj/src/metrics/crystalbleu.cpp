#include "simscore/metrics/crystalbleu.hpp"

#include <algorithm>
#include <unordered_map>

namespace simscore {

TriviallySharedSet trivially_shared_ngrams(const std::vector<const NgramProfile*>& profiles,
                                           const MetricConfig& cfg) {
  std::vector<std::unordered_set<std::string>> sets(static_cast<std::size_t>(cfg.max_order));
  if (cfg.k_shared == 0) return TriviallySharedSet(std::move(sets));
  for (int n = 1; n <= cfg.max_order; ++n) {
    std::unordered_map<std::string_view, std::size_t> counts;
    for (const NgramProfile* p : profiles) {
      if (static_cast<std::size_t>(n) > p->orders.size()) continue;
      for (const auto& [key, e] : p->orders[static_cast<std::size_t>(n - 1)].entries()) counts[key] += e.count;
    }
    std::vector<std::pair<std::string_view, std::size_t>> ranked(counts.begin(), counts.end());
    const std::size_t k = std::min(cfg.k_shared, ranked.size());
    const auto by_frequency = [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    };
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(), by_frequency);
    auto& set = sets[static_cast<std::size_t>(n - 1)];
    for (std::size_t i = 0; i < k; ++i) set.emplace(ranked[i].first);
  }
  return TriviallySharedSet(std::move(sets));
}

TriviallySharedSet trivially_shared_ngrams(const std::vector<TokenStream>& streams, const MetricConfig& cfg) {
  std::vector<NgramProfile> profiles;
  profiles.reserve(streams.size());
  for (const auto& s : streams) profiles.push_back(ngram_profile(s, cfg.max_order));
  std::vector<const NgramProfile*> ptrs;
  for (const auto& p : profiles) ptrs.push_back(&p);
  return trivially_shared_ngrams(ptrs, cfg);
}

NgramScore crystalbleu(const NgramProfile& candidate, const NgramProfile& reference,
                       const TriviallySharedSet& shared, const MetricConfig& cfg) {
  NgramOptions opts;
  opts.shared = &shared;
  return ngram_bleu(candidate, reference, cfg, opts);
}

double crystalbleu(const TokenStream& candidate, const TokenStream& reference, const TriviallySharedSet& shared,
                   const MetricConfig& cfg) {
  return crystalbleu(ngram_profile(candidate, cfg.max_order), ngram_profile(reference, cfg.max_order), shared, cfg)
      .value;
}

}  // namespace simscore

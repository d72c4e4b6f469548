#include "simscore/metrics/bleu.hpp"

#include <algorithm>
#include <cmath>

#include "simscore/error.hpp"
#include "simscore/metrics/crystalbleu.hpp"

namespace simscore {

Symmetrization parse_symmetrization(std::string_view s) {
  if (s == "max") return Symmetrization::kMax;
  if (s == "mean") return Symmetrization::kMean;
  if (s == "left") return Symmetrization::kLeft;
  throw ValidationError("unknown symmetrization '" + std::string(s) + "' (max, mean, left)");
}

const char* to_string(Symmetrization s) {
  switch (s) {
    case Symmetrization::kMax: return "max";
    case Symmetrization::kMean: return "mean";
    case Symmetrization::kLeft: return "left";
  }
  return "max";
}

void MetricConfig::validate() const {
  if (max_order < 1) throw ValidationError("max n-gram order must be >= 1");
  if (!order_weights.empty() && order_weights.size() != static_cast<std::size_t>(max_order))
    throw ValidationError("order_weights must have one entry per n-gram order");
  for (double w : order_weights)
    if (!(w >= 0)) throw ValidationError("order weights must be >= 0");
  for (double w : {alpha, beta, gamma, delta})
    if (!(w >= 0)) throw ValidationError("CodeBLEU weights must be >= 0");
  if (std::abs(alpha + beta + gamma + delta - 1.0) > 1e-9)
    throw ValidationError("CodeBLEU weights alpha+beta+gamma+delta must sum to 1");
  if (!(epsilon > 0)) throw ValidationError("epsilon must be > 0");
  if (!(keyword_weight > 0)) throw ValidationError("keyword_weight must be > 0");
  if (subtree_depth < 1) throw ValidationError("subtree_depth must be >= 1");
  if (edit_costs.insert < 0 || edit_costs.remove < 0 || edit_costs.rename < 0)
    throw ValidationError("edit costs must be >= 0");
}

double MetricConfig::order_weight(int n) const {
  if (order_weights.empty()) return 1.0 / max_order;
  return order_weights[static_cast<std::size_t>(n - 1)];
}

NgramProfile ngram_profile(const TokenStream& tokens, int max_order) {
  NgramProfile p;
  p.length = tokens.size();
  p.orders.reserve(static_cast<std::size_t>(max_order));
  for (int n = 1; n <= max_order; ++n) p.orders.push_back(ngram_multiset(tokens, n));
  return p;
}

double clipped_precision(const TokenStream& candidate, const TokenStream& reference, int n) {
  const auto c = ngram_multiset(candidate, n);
  const auto r = ngram_multiset(reference, n);
  if (c.total() == 0) return 0.0;
  std::size_t matched = 0;
  for (const auto& [key, e] : c.entries()) matched += std::min(e.count, r.count(key));
  return static_cast<double>(matched) / static_cast<double>(c.total());
}

NgramScore ngram_bleu(const NgramProfile& candidate, const NgramProfile& reference, const MetricConfig& cfg,
                      const NgramOptions& opts) {
  NgramScore out;
  if (candidate.length == 0) {
    out.degraded = opts.shared != nullptr;
    return out;
  }
  const int orders = std::min<int>(cfg.max_order, static_cast<int>(candidate.orders.size()));
  double log_sum = 0.0;
  double weight_sum = 0.0;
  for (int n = 1; n <= orders; ++n) {
    const auto& c = candidate.orders[static_cast<std::size_t>(n - 1)];
    const NgramMultiset* r = static_cast<std::size_t>(n) <= reference.orders.size()
                                 ? &reference.orders[static_cast<std::size_t>(n - 1)]
                                 : nullptr;
    double matched = 0.0;
    double total = 0.0;
    for (const auto& [key, e] : c.entries()) {
      if (opts.shared && opts.shared->contains(n, key)) continue;
      const double w = opts.keyword_weighted && e.has_keyword ? cfg.keyword_weight : 1.0;
      const std::size_t rc = r ? r->count(key) : 0;
      matched += w * static_cast<double>(std::min(e.count, rc));
      total += w * static_cast<double>(e.count);
    }
    if (total == 0.0) continue;  // no candidate n-grams at this order
    const double wn = cfg.order_weight(n);
    log_sum += wn * std::log(std::max(matched / total, cfg.epsilon));
    weight_sum += wn;
  }
  if (weight_sum == 0.0) {
    out.degraded = true;
    return out;
  }
  const double c_len = static_cast<double>(candidate.length);
  const double r_len = static_cast<double>(reference.length);
  const double bp = candidate.length > reference.length ? 1.0 : std::exp(1.0 - r_len / c_len);
  out.value = std::clamp(bp * std::exp(log_sum / weight_sum), 0.0, 1.0);
  return out;
}

double bleu(const TokenStream& candidate, const TokenStream& reference, const MetricConfig& cfg) {
  return ngram_bleu(ngram_profile(candidate, cfg.max_order), ngram_profile(reference, cfg.max_order), cfg).value;
}

double weighted_ngram_match(const TokenStream& candidate, const TokenStream& reference, const MetricConfig& cfg) {
  NgramOptions opts;
  opts.keyword_weighted = true;
  return ngram_bleu(ngram_profile(candidate, cfg.max_order), ngram_profile(reference, cfg.max_order), cfg, opts)
      .value;
}

}  // namespace simscore

#include "simscore/eval/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "simscore/error.hpp"

namespace simscore {

const char* to_string(Statistic s) { return s == Statistic::kAuroc ? "auroc" : "ap"; }

void BootstrapConfig::validate() const {
  if (resamples < 1) throw ValidationError("bootstrap resamples must be >= 1");
  if (!(confidence > 0 && confidence < 1)) throw ValidationError("bootstrap confidence must lie in (0,1)");
}

Resampler::Resampler(const std::vector<std::uint8_t>& labels, const BootstrapConfig& cfg, std::string_view scope)
    : labels_(labels), cfg_(cfg), scope_(scope), rng_(cfg.seed), counts_(labels.size()) {
  cfg_.validate();
  if (labels.empty()) throw UndefinedMetricError("bootstrap on empty scope '" + scope_ + "'");
}

std::uint64_t Resampler::bounded(std::uint64_t n) {
  // Rejection sampling keeps draws uniform and identical on every platform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t v = rng_();
    if (v < limit) return v % n;
  }
}

const std::vector<std::uint32_t>& Resampler::next() {
  const std::size_t n = labels_.size();
  bool redrawn = false;
  for (std::size_t attempt = 0;; ++attempt) {
    std::fill(counts_.begin(), counts_.end(), 0u);
    bool pos = false, neg = false;
    for (std::size_t k = 0; k < n; ++k) {
      const auto i = static_cast<std::size_t>(bounded(n));
      ++counts_[i];
      (labels_[i] ? pos : neg) = true;
    }
    if (pos && neg) break;
    redrawn = true;
    if (attempt + 1 > cfg_.max_redraws)
      throw InstabilityError("bootstrap for scope '" + scope_ + "': single-class resample persisted after " +
                             std::to_string(cfg_.max_redraws) + " redraws");
  }
  ++drawn_;
  if (redrawn) ++degenerate_;
  return counts_;
}

void Resampler::finish() const {
  if (2 * degenerate_ > drawn_)
    throw InstabilityError("bootstrap for scope '" + scope_ + "': " + std::to_string(degenerate_) + " of " +
                           std::to_string(drawn_) + " resamples were single-class");
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = (static_cast<double>(sorted.size()) - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

double pick(const RankStats& st, Statistic s) { return s == Statistic::kAuroc ? st.auroc : st.ap; }

void require_defined(const RankStats& st, std::string_view scope) {
  if (st.positives == 0 || st.negatives == 0)
    throw UndefinedMetricError("bootstrap undefined for scope '" + std::string(scope) +
                               "': sample must contain both classes");
}

Interval percentile(std::vector<double> values, double point, double confidence, std::size_t degenerate) {
  std::sort(values.begin(), values.end());
  const double tail = (1 - confidence) / 2;
  return {point, quantile_sorted(values, tail), quantile_sorted(values, 1 - tail), degenerate};
}

}  // namespace

BootstrapPair bootstrap_both(const std::vector<LabelledScore>& scores, const BootstrapConfig& cfg,
                             std::string_view scope) {
  const RankedSample sample(scores);
  const auto full = sample.evaluate();
  require_defined(full, scope);
  Resampler rs(sample.labels(), cfg, scope);
  std::vector<double> au, ap;
  au.reserve(cfg.resamples);
  ap.reserve(cfg.resamples);
  for (std::size_t b = 0; b < cfg.resamples; ++b) {
    const auto st = sample.evaluate(rs.next());
    au.push_back(st.auroc);
    ap.push_back(st.ap);
  }
  rs.finish();
  return {percentile(std::move(au), full.auroc, cfg.confidence, rs.degenerate()),
          percentile(std::move(ap), full.ap, cfg.confidence, rs.degenerate())};
}

Interval bootstrap_ci(Statistic statistic, const std::vector<LabelledScore>& scores, const BootstrapConfig& cfg,
                      std::string_view scope) {
  const auto both = bootstrap_both(scores, cfg, scope);
  return statistic == Statistic::kAuroc ? both.auroc : both.ap;
}

PairedDiff paired_bootstrap_diff(const std::vector<LabelledScore>& a, const std::vector<LabelledScore>& b,
                                 Statistic statistic, const BootstrapConfig& cfg, std::string_view scope) {
  std::map<std::string, const LabelledScore*> index;
  for (const auto& s : b) index.emplace(s.pair_id, &s);
  std::vector<LabelledScore> joined_b;
  joined_b.reserve(a.size());
  std::vector<std::string> missing;
  std::map<std::string, bool> in_a;
  for (const auto& s : a) {
    in_a[s.pair_id] = true;
    const auto it = index.find(s.pair_id);
    if (it == index.end()) {
      missing.push_back(s.pair_id + " (only in first)");
      continue;
    }
    if (it->second->label != s.label)
      throw JoinError("pair " + s.pair_id + " carries different labels in the two score sets");
    joined_b.push_back(*it->second);
  }
  for (const auto& s : b)
    if (!in_a.count(s.pair_id)) missing.push_back(s.pair_id + " (only in second)");
  if (!missing.empty() || a.size() != b.size()) {
    std::string msg = "score sets cover different pairs in scope '" + std::string(scope) + "':";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += "\n  " + missing[i];
    if (missing.size() > 20) msg += "\n  ... " + std::to_string(missing.size() - 20) + " more";
    if (missing.empty()) msg += " duplicate pair ids";
    throw JoinError(msg);
  }

  const RankedSample sa(a), sb(joined_b);
  const auto fa = sa.evaluate(), fb = sb.evaluate();
  require_defined(fa, scope);
  Resampler rs(sa.labels(), cfg, scope);
  std::vector<double> deltas;
  deltas.reserve(cfg.resamples);
  for (std::size_t r = 0; r < cfg.resamples; ++r) {
    const auto& w = rs.next();
    deltas.push_back(pick(sa.evaluate(w), statistic) - pick(sb.evaluate(w), statistic));
  }
  rs.finish();
  const auto iv = percentile(std::move(deltas), pick(fa, statistic) - pick(fb, statistic), cfg.confidence,
                             rs.degenerate());
  return {iv.point, iv.lo, iv.hi, iv.lo > 0 || iv.hi < 0, iv.degenerate};
}

}  // namespace simscore

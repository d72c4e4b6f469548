#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "simscore/eval/ranking.hpp"

namespace simscore {

enum class Statistic { kAuroc, kAp };
const char* to_string(Statistic s);

struct BootstrapConfig {
  std::size_t resamples = 10000;
  double confidence = 0.95;
  std::uint64_t seed = 42;
  std::size_t max_redraws = 100;  // per resample, for single-class draws

  void validate() const;
};

struct Interval {
  double point = 0;
  double lo = 0;
  double hi = 0;
  std::size_t degenerate = 0;  // resamples that needed at least one redraw
};

/// Draws row-level resamples with replacement as multiplicity vectors. Index
/// sets come from one sequential mt19937_64 stream seeded with cfg.seed, so a
/// seed fixes every resample regardless of which statistic consumes it.
/// Single-class draws are redrawn; InstabilityError after max_redraws
/// consecutive failures or when more than half the resamples needed a redraw.
class Resampler {
 public:
  Resampler(const std::vector<std::uint8_t>& labels, const BootstrapConfig& cfg, std::string_view scope);
  const std::vector<std::uint32_t>& next();
  std::size_t degenerate() const noexcept { return degenerate_; }
  void finish() const;  // throws if too many resamples were degenerate

 private:
  std::uint64_t bounded(std::uint64_t n);

  const std::vector<std::uint8_t>& labels_;
  BootstrapConfig cfg_;
  std::string scope_;
  std::mt19937_64 rng_;
  std::vector<std::uint32_t> counts_;
  std::size_t drawn_ = 0;
  std::size_t degenerate_ = 0;
};

/// Linear-interpolated quantile of sorted values (q in [0,1]).
double quantile_sorted(const std::vector<double>& sorted, double q);

/// Percentile interval.
Interval bootstrap_ci(Statistic statistic, const std::vector<LabelledScore>& scores, const BootstrapConfig& cfg,
                      std::string_view scope = "sample");

struct BootstrapPair {
  Interval auroc;
  Interval ap;
};
/// AUROC and AP intervals from the same resamples.
BootstrapPair bootstrap_both(const std::vector<LabelledScore>& scores, const BootstrapConfig& cfg,
                             std::string_view scope = "sample");

struct PairedDiff {
  double delta = 0;  // statistic(a) - statistic(b) on the full sample
  double lo = 0;
  double hi = 0;
  bool significant = false;  // interval excludes 0
  std::size_t degenerate = 0;
};

/// Joins a and b on pair_id (labels must agree) and resamples rows once per
/// iteration for both columns. Throws JoinError listing unmatched ids.
PairedDiff paired_bootstrap_diff(const std::vector<LabelledScore>& a, const std::vector<LabelledScore>& b,
                                 Statistic statistic, const BootstrapConfig& cfg, std::string_view scope = "sample");

}  // namespace simscore

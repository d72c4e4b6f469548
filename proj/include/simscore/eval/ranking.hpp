#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simscore {

struct LabelledScore {
  double score = 0.0;
  bool label = false;
  std::optional<int> level;
  std::string dataset;
  std::string pair_id;
};

/// Both statistics from one pass over a tie-grouped ranking.
struct RankStats {
  double positives = 0;
  double negatives = 0;
  double auroc = 0;  // NaN when either class is empty
  double ap = 0;     // NaN when there are no positives
};

/// Scores sorted once in descending order and grouped by tie, so that any
/// multiplicity vector over the original rows (a bootstrap resample) can be
/// evaluated in linear time.
class RankedSample {
 public:
  RankedSample(std::span<const double> scores, std::span<const std::uint8_t> labels);
  explicit RankedSample(const std::vector<LabelledScore>& scores);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::uint8_t>& labels() const noexcept { return labels_; }
  RankStats evaluate() const;
  /// `weights[i]` is how often original row i occurs.
  RankStats evaluate(std::span<const std::uint32_t> weights) const;

 private:
  std::vector<std::uint8_t> labels_;
  std::vector<std::size_t> order_;        // row indices, descending score
  std::vector<std::size_t> group_start_;  // tie groups in order_, plus a sentinel
};

/// Mann-Whitney probability that a positive outscores a negative, ties
/// counted half. Throws UndefinedMetricError naming `scope` for single-class input.
double auroc(const std::vector<LabelledScore>& scores, std::string_view scope = "sample");
/// Σ (R_n - R_{n-1}) P_n over distinct thresholds, descending. Throws
/// UndefinedMetricError when there are no positives.
double average_precision(const std::vector<LabelledScore>& scores, std::string_view scope = "sample");

enum class CurveKind { kRoc, kPr };
const char* to_string(CurveKind k);

struct CurvePoint {
  double x = 0;  // FPR or recall
  double y = 0;  // TPR or precision
  double threshold = 0;  // score >= threshold counts as positive; +inf for the start point
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

struct Curve {
  CurveKind kind = CurveKind::kRoc;
  std::vector<CurvePoint> points;
};

/// One point per distinct score plus the start point where nothing is
/// predicted positive: (0,0) for ROC, (0,1) for PR.
Curve curve(const std::vector<LabelledScore>& scores, CurveKind kind, std::string_view scope = "sample");
double trapezoid_area(const Curve& c);

}  // namespace simscore

#include "simscore/eval/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simscore/error.hpp"

namespace simscore {

RankedSample::RankedSample(std::span<const double> scores, std::span<const std::uint8_t> labels)
    : labels_(labels.begin(), labels.end()), order_(scores.size()) {
  if (scores.size() != labels.size()) throw ArgumentError("scores and labels differ in length");
  for (double s : scores)
    if (std::isnan(s)) throw ArgumentError("score is NaN");
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  for (std::size_t i = 0; i < order_.size(); ++i)
    if (i == 0 || scores[order_[i]] != scores[order_[i - 1]]) group_start_.push_back(i);
  group_start_.push_back(order_.size());
}

namespace {

std::vector<double> scores_of(const std::vector<LabelledScore>& s) {
  std::vector<double> out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(x.score);
  return out;
}

std::vector<std::uint8_t> labels_of(const std::vector<LabelledScore>& s) {
  std::vector<std::uint8_t> out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(x.label ? 1 : 0);
  return out;
}

template <typename Weight>
RankStats evaluate_impl(const std::vector<std::uint8_t>& labels, const std::vector<std::size_t>& order,
                        const std::vector<std::size_t>& group_start, Weight weight) {
  RankStats st;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double w = weight(i);
    (labels[i] ? st.positives : st.negatives) += w;
  }
  // Integral counts throughout, so every sum below is exact in double.
  double wins = 0;  // 2 x (pos-neg pairs ordered correctly) + ties
  double tp = 0, fp = 0, ap = 0;
  for (std::size_t g = 0; g + 1 < group_start.size(); ++g) {
    double pg = 0, ng = 0;
    for (std::size_t k = group_start[g]; k < group_start[g + 1]; ++k) {
      const std::size_t i = order[k];
      (labels[i] ? pg : ng) += weight(i);
    }
    if (pg == 0 && ng == 0) continue;
    const double negatives_below = st.negatives - fp - ng;
    wins += 2 * pg * negatives_below + pg * ng;
    tp += pg;
    fp += ng;
    if (pg > 0) ap += pg * (tp / (tp + fp));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  st.auroc = st.positives > 0 && st.negatives > 0 ? wins / (2 * st.positives * st.negatives) : nan;
  st.ap = st.positives > 0 ? ap / st.positives : nan;
  return st;
}

void require_classes(const RankStats& st, bool need_negatives, std::string_view scope, const char* what) {
  if (st.positives == 0)
    throw UndefinedMetricError(std::string(what) + " undefined for scope '" + std::string(scope) +
                               "': no positive pairs");
  if (need_negatives && st.negatives == 0)
    throw UndefinedMetricError(std::string(what) + " undefined for scope '" + std::string(scope) +
                               "': no negative pairs");
}

}  // namespace

RankedSample::RankedSample(const std::vector<LabelledScore>& scores)
    : RankedSample(scores_of(scores), labels_of(scores)) {}

RankStats RankedSample::evaluate() const {
  return evaluate_impl(labels_, order_, group_start_, [](std::size_t) { return 1.0; });
}

RankStats RankedSample::evaluate(std::span<const std::uint32_t> weights) const {
  if (weights.size() != labels_.size()) throw ArgumentError("weight vector length mismatch");
  return evaluate_impl(labels_, order_, group_start_, [&](std::size_t i) { return double(weights[i]); });
}

double auroc(const std::vector<LabelledScore>& scores, std::string_view scope) {
  const auto st = RankedSample(scores).evaluate();
  require_classes(st, true, scope, "AUROC");
  return st.auroc;
}

double average_precision(const std::vector<LabelledScore>& scores, std::string_view scope) {
  const auto st = RankedSample(scores).evaluate();
  require_classes(st, false, scope, "AP");
  return st.ap;
}

const char* to_string(CurveKind k) { return k == CurveKind::kRoc ? "roc" : "pr"; }

Curve curve(const std::vector<LabelledScore>& scores, CurveKind kind, std::string_view scope) {
  std::size_t positives = 0, negatives = 0;
  for (const auto& s : scores) (s.label ? positives : negatives) += 1;
  if (positives == 0 || (kind == CurveKind::kRoc && negatives == 0))
    require_classes({double(positives), double(negatives), 0, 0}, kind == CurveKind::kRoc, scope,
                    kind == CurveKind::kRoc ? "ROC curve" : "PR curve");
  std::vector<const LabelledScore*> sorted;
  for (const auto& s : scores) {
    if (std::isnan(s.score)) throw ArgumentError("score is NaN");
    sorted.push_back(&s);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->score > b->score; });

  Curve c;
  c.kind = kind;
  const auto point = [&](std::size_t tp, std::size_t fp, double threshold) {
    CurvePoint p;
    p.tp = tp;
    p.fp = fp;
    p.fn = positives - tp;
    p.tn = negatives - fp;
    p.threshold = threshold;
    if (kind == CurveKind::kRoc) {
      p.x = double(fp) / double(negatives);
      p.y = double(tp) / double(positives);
    } else {
      p.x = double(tp) / double(positives);
      p.y = tp + fp == 0 ? 1.0 : double(tp) / double(tp + fp);
    }
    return p;
  };
  c.points.push_back(point(0, 0, std::numeric_limits<double>::infinity()));
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double threshold = sorted[i]->score;
    for (; i < sorted.size() && sorted[i]->score == threshold; ++i) (sorted[i]->label ? tp : fp) += 1;
    c.points.push_back(point(tp, fp, threshold));
  }
  return c;
}

double trapezoid_area(const Curve& c) {
  double area = 0;
  for (std::size_t i = 1; i < c.points.size(); ++i)
    area += (c.points[i].x - c.points[i - 1].x) * (c.points[i].y + c.points[i - 1].y) / 2;
  return area;
}

}  // namespace simscore

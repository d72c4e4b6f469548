#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "simscore/error.hpp"
#include "simscore/eval/bootstrap.hpp"
#include "simscore/eval/ranking.hpp"
#include "simscore/eval/report.hpp"
#include "simscore/eval/svg.hpp"

#include "oracles.hpp"

using namespace simscore;

namespace {

constexpr double kTol = 1e-12;

std::vector<LabelledScore> sample(const std::vector<double>& s, const std::vector<int>& y) {
  std::vector<LabelledScore> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    LabelledScore l;
    l.score = s[i];
    l.label = y[i] != 0;
    l.pair_id = "p" + std::to_string(i);
    out.push_back(l);
  }
  return out;
}

// Random instance with both classes and plenty of ties.
void random_instance(std::mt19937_64& rng, std::size_t n, std::vector<double>& s, std::vector<int>& y) {
  s.assign(n, 0);
  y.assign(n, 0);
  const int grid = 1 + static_cast<int>(rng() % 6);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = static_cast<double>(rng() % (grid + 1)) / grid;
    y[i] = static_cast<int>(rng() % 2);
  }
  y[0] = 1;
  y[1] = 0;
}

}  // namespace

TEST_CASE("ranking examples") {
  CHECK(auroc(sample({0.9, 0.8, 0.3, 0.1}, {1, 1, 0, 0})) == 1.0);
  CHECK(auroc(sample({0.1, 0.3, 0.8, 0.9}, {1, 1, 0, 0})) == 0.0);
  CHECK(auroc(sample({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0})) == 0.5);
  CHECK(average_precision(sample({0.9, 0.8, 0.3, 0.1}, {1, 1, 0, 0})) == 1.0);
  CHECK(average_precision(sample({0.9, 0.8, 0.7, 0.1}, {0, 0, 0, 1})) == 0.25);
  CHECK(average_precision(sample({0.5, 0.5, 0.5, 0.5}, {1, 0, 0, 0})) == 0.25);
  CHECK_THROWS_AS(auroc(sample({0.1, 0.2}, {1, 1}), "level:L3"), UndefinedMetricError);
  CHECK_THROWS_AS(average_precision(sample({0.1, 0.2}, {0, 0})), UndefinedMetricError);
  try {
    auroc(sample({0.1}, {0}), "level:L3");
  } catch (const UndefinedMetricError& e) {
    CHECK(std::string(e.what()).find("level:L3") != std::string::npos);
  }
  CHECK_NOTHROW(average_precision(sample({0.1, 0.2}, {1, 1})));
}

TEST_CASE("ranking statistics agree with brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<double> s;
    std::vector<int> y;
    random_instance(rng, 2 + rng() % 11, s, y);
    const auto ls = sample(s, y);
    CHECK(std::abs(auroc(ls) - oracle::auroc(s, y)) <= kTol);
    CHECK(std::abs(average_precision(ls) - oracle::average_precision(s, y)) <= kTol);

    std::vector<std::uint8_t> labels(y.begin(), y.end());
    const auto st = RankedSample(s, labels).evaluate();
    CHECK(std::abs(st.auroc - oracle::auroc(s, y)) <= kTol);
    CHECK(std::abs(st.ap - oracle::average_precision(s, y)) <= kTol);
  }
}

TEST_CASE("weighted evaluation equals evaluation of the expanded sample") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> s;
    std::vector<int> y;
    random_instance(rng, 2 + rng() % 10, s, y);
    std::vector<std::uint32_t> w(s.size());
    std::vector<double> es;
    std::vector<int> ey;
    for (std::size_t i = 0; i < s.size(); ++i) {
      w[i] = static_cast<std::uint32_t>(rng() % 4);
      for (std::uint32_t k = 0; k < w[i]; ++k) {
        es.push_back(s[i]);
        ey.push_back(y[i]);
      }
    }
    w[0] += 1;
    w[1] += 1;
    es.push_back(s[0]);
    ey.push_back(y[0]);
    es.push_back(s[1]);
    ey.push_back(y[1]);
    std::vector<std::uint8_t> labels(y.begin(), y.end());
    const auto st = RankedSample(s, labels).evaluate(w);
    CHECK(std::abs(st.auroc - oracle::auroc(es, ey)) <= kTol);
    CHECK(std::abs(st.ap - oracle::average_precision(es, ey)) <= kTol);
  }
}

TEST_CASE("invariance under monotone maps and label flips") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> s;
    std::vector<int> y;
    random_instance(rng, 2 + rng() % 30, s, y);
    const double a = auroc(sample(s, y)), ap = average_precision(sample(s, y));
    std::vector<double> m(s.size()), neg(s.size());
    std::vector<int> flip(y.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      m[i] = std::exp(3 * s[i]) + s[i] * s[i] * s[i];
      neg[i] = -s[i];
      flip[i] = 1 - y[i];
    }
    CHECK(std::abs(auroc(sample(m, y)) - a) <= kTol);
    CHECK(std::abs(average_precision(sample(m, y)) - ap) <= kTol);
    CHECK(std::abs(auroc(sample(s, flip)) - (1 - a)) <= kTol);
    CHECK(std::abs(auroc(sample(neg, y)) - (1 - a)) <= kTol);
  }
}

TEST_CASE("curves") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> s;
    std::vector<int> y;
    random_instance(rng, 2 + rng() % 15, s, y);
    const auto ls = sample(s, y);
    const auto roc = curve(ls, CurveKind::kRoc);
    const auto pr = curve(ls, CurveKind::kPr);
    const auto thresholds = oracle::thresholds_descending(s);
    REQUIRE(roc.points.size() == thresholds.size() + 1);
    REQUIRE(pr.points.size() == thresholds.size() + 1);
    CHECK(roc.points[0].x == 0.0);
    CHECK(roc.points[0].y == 0.0);
    CHECK(std::isinf(roc.points[0].threshold));
    CHECK(pr.points[0].x == 0.0);
    CHECK(pr.points[0].y == 1.0);
    CHECK(roc.points.back().x == 1.0);
    CHECK(roc.points.back().y == 1.0);
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      const auto c = oracle::confusion_at(s, y, thresholds[k]);
      const auto& p = roc.points[k + 1];
      CHECK(p.threshold == thresholds[k]);
      CHECK(p.tp == c.tp);
      CHECK(p.fp == c.fp);
      CHECK(p.tn == c.tn);
      CHECK(p.fn == c.fn);
      CHECK(pr.points[k + 1].y == doctest::Approx(double(c.tp) / double(c.tp + c.fp)));
    }
    CHECK(std::abs(trapezoid_area(roc) - auroc(ls)) <= kTol);
    CHECK(std::abs(step_area(pr) - average_precision(ls)) <= kTol);
  }
}

TEST_CASE("quantiles follow linear interpolation") {
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(quantile_sorted(v, 0.0) == 1.0);
  CHECK(quantile_sorted(v, 1.0) == 4.0);
  CHECK(quantile_sorted(v, 0.25) == doctest::Approx(1.75));
  CHECK(quantile_sorted(v, 0.5) == doctest::Approx(2.5));
  CHECK(quantile_sorted({7}, 0.3) == 7.0);
}

TEST_CASE("bootstrap") {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> noise;
  std::vector<double> s;
  std::vector<int> y;
  for (int i = 0; i < 80; ++i) {
    y.push_back(i % 2);
    s.push_back(noise(rng) + y.back());
  }
  const auto ls = sample(s, y);
  BootstrapConfig cfg;
  cfg.resamples = 400;
  const auto a = bootstrap_ci(Statistic::kAuroc, ls, cfg);
  const auto b = bootstrap_ci(Statistic::kAuroc, ls, cfg);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
  CHECK(a.point == auroc(ls));
  CHECK(a.lo <= a.point);
  CHECK(a.point <= a.hi);
  const auto both = bootstrap_both(ls, cfg);
  CHECK(both.auroc.lo == a.lo);
  CHECK(both.auroc.hi == a.hi);
  CHECK(both.ap.lo == bootstrap_ci(Statistic::kAp, ls, cfg).lo);

  BootstrapConfig other = cfg;
  other.seed = 43;
  CHECK(bootstrap_ci(Statistic::kAuroc, ls, other).lo != a.lo);

  const auto flat = bootstrap_ci(Statistic::kAuroc, sample(std::vector<double>(20, 0.5), y), cfg);
  CHECK(flat.lo == 0.5);
  CHECK(flat.hi == 0.5);

  // Two rows, one per class: half of all draws are single-class, so a redraw
  // budget of one runs out long before 400 resamples.
  BootstrapConfig tight = cfg;
  tight.max_redraws = 1;
  CHECK_THROWS_AS(bootstrap_ci(Statistic::kAuroc, sample({0.2, 0.7}, {1, 0}), tight), InstabilityError);

  BootstrapConfig bad = cfg;
  bad.confidence = 1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.resamples = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("bootstrap interval coverage") {
  // Positives ~ N(1,1), negatives ~ N(0,1): true AUROC = Phi(1/sqrt 2).
  const double truth = 0.5 * std::erfc(-0.5);
  std::mt19937_64 rng(16);
  std::normal_distribution<double> noise;
  BootstrapConfig cfg;
  cfg.resamples = 400;
  int covered = 0;
  const int replicates = 200;
  for (int r = 0; r < replicates; ++r) {
    std::vector<double> s;
    std::vector<int> y;
    for (int i = 0; i < 120; ++i) {
      y.push_back(i % 2);
      s.push_back(noise(rng) + y.back());
    }
    cfg.seed = 1000 + r;
    const auto ci = bootstrap_ci(Statistic::kAuroc, sample(s, y), cfg);
    covered += ci.lo <= truth && truth <= ci.hi;
  }
  const double rate = double(covered) / replicates;
  CHECK(rate >= 0.88);
  CHECK(rate <= 0.995);
}

TEST_CASE("paired bootstrap") {
  std::mt19937_64 rng(17);
  std::vector<double> s, t;
  std::vector<int> y;
  for (int i = 0; i < 60; ++i) {
    y.push_back(i % 3 == 0);
    s.push_back(double(rng() % 100) / 100 + 0.3 * y.back());
    t.push_back(double(rng() % 100) / 100);
  }
  BootstrapConfig cfg;
  cfg.resamples = 300;
  const auto a = sample(s, y);
  const auto self = paired_bootstrap_diff(a, a, Statistic::kAuroc, cfg);
  CHECK(self.delta == 0.0);
  CHECK(self.lo == 0.0);
  CHECK(self.hi == 0.0);
  CHECK_FALSE(self.significant);

  auto shuffled = sample(t, y);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto d = paired_bootstrap_diff(a, shuffled, Statistic::kAp, cfg);
  CHECK(d.delta == doctest::Approx(average_precision(a) - average_precision(sample(t, y))).epsilon(1e-12));
  CHECK(d.lo <= d.delta);
  CHECK(d.delta <= d.hi);

  auto missing = a;
  missing.pop_back();
  try {
    paired_bootstrap_diff(a, missing, Statistic::kAuroc, cfg);
    FAIL("expected JoinError");
  } catch (const JoinError& e) {
    CHECK(std::string(e.what()).find("p59") != std::string::npos);
  }
  auto relabelled = a;
  relabelled[0].label = !relabelled[0].label;
  CHECK_THROWS_AS(paired_bootstrap_diff(a, relabelled, Statistic::kAuroc, cfg), JoinError);
}

TEST_CASE("stratified report") {
  std::vector<ScoredPair> rows;
  auto add = [&](const std::string& ds, const std::string& l, bool label, std::optional<int> level, double v) {
    for (const char* metric : {"M1", "M2"}) {
      ScoredPair p;
      p.dataset = ds;
      p.left_id = l;
      p.right_id = l + "'";
      p.label = label;
      p.level = level;
      p.metric_id = metric;
      p.value = metric == std::string("M1") ? v : 1 - v;
      rows.push_back(p);
    }
  };
  for (int i = 0; i < 12; ++i) add("a", "a" + std::to_string(i), i % 2 == 0, i % 2 == 0 ? std::optional<int>(1 + i % 4) : std::nullopt, 0.05 * i);
  for (int i = 0; i < 4; ++i) add("b", "b" + std::to_string(i), true, 2, 0.9 - 0.1 * i);

  const auto scores = labelled_scores(rows);
  REQUIRE(scores.size() == 2);
  CHECK(scores.at("M1").front().pair_id == "a:a0,a0'");

  ReportOptions opts;
  opts.bootstrap.resamples = 200;
  const auto report = stratified_report(scores, "raw", opts);
  // pooled, two datasets, six levels, two metrics each
  REQUIRE(report.cells.size() == 18);
  auto cell = [&](const std::string& scope, const std::string& metric) {
    for (const auto& c : report.cells)
      if (c.scope == scope && c.metric == metric) return c;
    FAIL("missing cell");
    return ReportCell{};
  };
  CHECK(cell("pooled", "M1").defined);
  CHECK(cell("pooled", "M1").positives == 10);
  CHECK(cell("pooled", "M1").negatives == 6);
  CHECK_FALSE(cell("dataset:b", "M1").defined);
  CHECK(cell("dataset:b", "M1").note == "no negative pairs");
  CHECK_FALSE(cell("level:L6", "M2").defined);
  CHECK(cell("level:L6", "M2").note == "no positive pairs");
  const auto l2 = cell("level:L2", "M1");
  CHECK(l2.positives == 4);
  CHECK(l2.negatives == 6);

  std::vector<LabelledScore> pooled;
  for (const auto& s : scores.at("M1")) pooled.push_back(s);
  CHECK(cell("pooled", "M1").auroc.point == auroc(pooled));

  const auto json = nlohmann::json::parse(report_json({report}, opts));
  CHECK(json.contains("settings"));
  CHECK(json["modes"]["raw"]["pooled"]["M1"]["auroc"].get<double>() == auroc(pooled));
  CHECK(json["modes"]["raw"]["dataset:b"]["M1"]["defined"] == false);
  CHECK_FALSE(json["modes"]["raw"]["dataset:b"]["M1"].contains("auroc"));
  CHECK(json["modes"]["raw"]["dataset:b"]["M1"]["note"] == "no negative pairs");

  const auto csv = report_csv({report});
  CHECK(csv.rfind("scope,metric,stat,point,lo,hi\n", 0) == 0);
  CHECK(csv.find("raw/pooled,M1,auroc,") != std::string::npos);

  const auto sets = scope_curves(scores, "raw", opts);
  for (const auto& set : sets) {
    const auto svg = render_svg(set, CurveKind::kRoc);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
  }
  CHECK(curves_csv(sets).rfind("mode,scope,metric,kind,x,y,threshold,tp,fp,tn,fn\n", 0) == 0);
}

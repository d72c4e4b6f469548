#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "simscore/eval/bootstrap.hpp"
#include "simscore/eval/ranking.hpp"
#include "simscore/metrics/scoring.hpp"

namespace simscore {

/// metric id -> labelled scores
using ScoresByMetric = std::map<std::string, std::vector<LabelledScore>>;

/// Groups a score table by metric id. pair_id is `dataset:left,right`.
ScoresByMetric labelled_scores(const std::vector<ScoredPair>& rows);

struct Scope {
  std::string name;  // "pooled", "dataset:<tag>", "level:L<k>"
  std::function<bool(const LabelledScore&)> member;
};

struct ReportOptions {
  BootstrapConfig bootstrap;
  bool pooled = true;
  bool per_dataset = true;
  bool per_level = true;
  unsigned threads = 0;
};

/// Pooled, then each dataset tag, then levels L1..L6. A level scope holds the
/// plagiarised pairs of that level and every non-plagiarised pair.
std::vector<Scope> build_scopes(const ScoresByMetric& scores, const ReportOptions& opts);
std::vector<LabelledScore> select(const std::vector<LabelledScore>& scores, const Scope& scope);

struct ReportCell {
  std::string scope;
  std::string metric;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  bool defined = false;  // AUROC and AP both defined
  bool ci_defined = false;
  std::string note;      // why a cell or its interval is undefined
  Interval auroc;
  Interval ap;
};

struct RankingReport {
  std::string mode;  // "raw" or "preprocessed"
  std::vector<ReportCell> cells;  // scope order of build_scopes, metrics sorted
};

/// Empty or single-class strata give undefined cells instead of errors.
RankingReport stratified_report(const ScoresByMetric& scores, const std::string& mode, const ReportOptions& opts);

/// Nested mode -> scope -> metric -> {auroc, ap, ci_auroc, ci_ap, ...}, with a
/// `settings` block recording the bootstrap method and level negative set.
std::string report_json(const std::vector<RankingReport>& reports, const ReportOptions& opts);
/// `scope,metric,stat,point,lo,hi`; scope is prefixed with the mode.
std::string report_csv(const std::vector<RankingReport>& reports);

struct CurveSet {
  std::string mode;
  std::string scope;
  std::vector<std::pair<std::string, Curve>> roc;  // by metric
  std::vector<std::pair<std::string, Curve>> pr;
};

/// Curves of every metric defined on each scope.
std::vector<CurveSet> scope_curves(const ScoresByMetric& scores, const std::string& mode, const ReportOptions& opts);
/// `mode,scope,metric,kind,x,y,threshold,tp,fp,tn,fn`
std::string curves_csv(const std::vector<CurveSet>& sets);

struct PairedRow {
  std::string scope;
  std::string metric_a;
  std::string metric_b;
  Statistic statistic;
  PairedDiff diff;
};
/// `scope,metric_a,metric_b,stat,delta,lo,hi,significant`
std::string paired_csv(const std::vector<PairedRow>& rows);

}  // namespace simscore

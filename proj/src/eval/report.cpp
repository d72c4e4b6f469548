#include "simscore/eval/report.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

#include "simscore/csv.hpp"
#include "simscore/error.hpp"
#include "simscore/io.hpp"
#include "simscore/parallel.hpp"

namespace simscore {

ScoresByMetric labelled_scores(const std::vector<ScoredPair>& rows) {
  ScoresByMetric out;
  for (const auto& r : rows) {
    LabelledScore s;
    s.score = r.value;
    s.label = r.label;
    s.level = r.level;
    s.dataset = r.dataset;
    s.pair_id = r.dataset + ":" + r.left_id + "," + r.right_id;
    out[r.metric_id].push_back(std::move(s));
  }
  return out;
}

std::vector<Scope> build_scopes(const ScoresByMetric& scores, const ReportOptions& opts) {
  std::set<std::string> datasets;
  bool any_level = false;
  for (const auto& [metric, rows] : scores)
    for (const auto& s : rows) {
      datasets.insert(s.dataset);
      any_level = any_level || s.level.has_value();
    }
  std::vector<Scope> out;
  if (opts.pooled) out.push_back({"pooled", [](const LabelledScore&) { return true; }});
  if (opts.per_dataset)
    for (const auto& d : datasets)
      out.push_back({"dataset:" + d, [d](const LabelledScore& s) { return s.dataset == d; }});
  if (opts.per_level && any_level)
    for (int k = 1; k <= 6; ++k)
      out.push_back({"level:L" + std::to_string(k),
                     [k](const LabelledScore& s) { return !s.label || (s.level && *s.level == k); }});
  return out;
}

std::vector<LabelledScore> select(const std::vector<LabelledScore>& scores, const Scope& scope) {
  std::vector<LabelledScore> out;
  for (const auto& s : scores)
    if (scope.member(s)) out.push_back(s);
  return out;
}

RankingReport stratified_report(const ScoresByMetric& scores, const std::string& mode, const ReportOptions& opts) {
  opts.bootstrap.validate();
  RankingReport report;
  report.mode = mode;
  for (const auto& scope : build_scopes(scores, opts))
    for (const auto& [metric, rows] : scores) {
      ReportCell cell;
      cell.scope = scope.name;
      cell.metric = metric;
      report.cells.push_back(std::move(cell));
    }
  const auto scopes = build_scopes(scores, opts);
  std::map<std::string, const Scope*> scope_by_name;
  for (const auto& s : scopes) scope_by_name[s.name] = &s;

  parallel_for(
      report.cells.size(),
      [&](std::size_t i) {
        ReportCell& cell = report.cells[i];
        const auto sample = select(scores.at(cell.metric), *scope_by_name.at(cell.scope));
        for (const auto& s : sample) (s.label ? cell.positives : cell.negatives) += 1;
        if (cell.positives == 0 || cell.negatives == 0) {
          cell.note = cell.positives == 0 ? "no positive pairs" : "no negative pairs";
          return;
        }
        const auto full = RankedSample(sample).evaluate();
        cell.defined = true;
        cell.auroc.point = cell.auroc.lo = cell.auroc.hi = full.auroc;
        cell.ap.point = cell.ap.lo = cell.ap.hi = full.ap;
        try {
          const auto both = bootstrap_both(sample, opts.bootstrap, report.mode + "/" + cell.scope);
          cell.auroc = both.auroc;
          cell.ap = both.ap;
          cell.ci_defined = true;
        } catch (const InstabilityError& e) {
          cell.note = e.what();
        }
      },
      opts.threads);
  return report;
}

namespace {

nlohmann::json interval_json(const Interval& iv) { return nlohmann::json::array({iv.lo, iv.hi}); }

}  // namespace

std::string report_json(const std::vector<RankingReport>& reports, const ReportOptions& opts) {
  nlohmann::json root;
  root["settings"] = {
      {"bootstrap_method", "percentile"},
      {"resamples", opts.bootstrap.resamples},
      {"confidence", opts.bootstrap.confidence},
      {"seed", opts.bootstrap.seed},
      {"max_redraws", opts.bootstrap.max_redraws},
      {"resample_unit", "pair"},
      {"auroc_ties", "half credit"},
      {"level_negatives", "all non-plagiarised pairs in scope"},
  };
  nlohmann::json modes = nlohmann::json::object();
  for (const auto& r : reports) {
    nlohmann::json& m = modes[r.mode];
    for (const auto& c : r.cells) {
      nlohmann::json cell = {{"positives", c.positives}, {"negatives", c.negatives}, {"defined", c.defined}};
      if (c.defined) {
        cell["auroc"] = c.auroc.point;
        cell["ap"] = c.ap.point;
        if (c.ci_defined) {
          cell["ci_auroc"] = interval_json(c.auroc);
          cell["ci_ap"] = interval_json(c.ap);
          cell["degenerate_resamples"] = c.auroc.degenerate;
        } else {
          cell["ci_auroc"] = nullptr;
          cell["ci_ap"] = nullptr;
        }
      }
      if (!c.note.empty()) cell["note"] = c.note;
      m[c.scope][c.metric] = std::move(cell);
    }
  }
  root["modes"] = std::move(modes);
  return root.dump(2) + "\n";
}

std::string report_csv(const std::vector<RankingReport>& reports) {
  std::ostringstream out;
  out << "scope,metric,stat,point,lo,hi\n";
  for (const auto& r : reports)
    for (const auto& c : r.cells) {
      const std::string scope = r.mode + "/" + c.scope;
      for (const auto& [stat, iv] : {std::pair<const char*, const Interval*>{"auroc", &c.auroc}, {"ap", &c.ap}}) {
        const bool ci = c.defined && c.ci_defined;
        out << csv::join({scope, c.metric, stat, c.defined ? format_number(iv->point, 17) : "nan",
                          ci ? format_number(iv->lo, 17) : "nan", ci ? format_number(iv->hi, 17) : "nan"})
            << '\n';
      }
    }
  return out.str();
}

std::vector<CurveSet> scope_curves(const ScoresByMetric& scores, const std::string& mode, const ReportOptions& opts) {
  std::vector<CurveSet> out;
  for (const auto& scope : build_scopes(scores, opts)) {
    CurveSet set;
    set.mode = mode;
    set.scope = scope.name;
    for (const auto& [metric, rows] : scores) {
      const auto sample = select(rows, scope);
      bool pos = false, neg = false;
      for (const auto& s : sample) (s.label ? pos : neg) = true;
      if (!pos || !neg) continue;
      set.roc.emplace_back(metric, curve(sample, CurveKind::kRoc, scope.name));
      set.pr.emplace_back(metric, curve(sample, CurveKind::kPr, scope.name));
    }
    if (!set.roc.empty()) out.push_back(std::move(set));
  }
  return out;
}

std::string curves_csv(const std::vector<CurveSet>& sets) {
  std::ostringstream out;
  out << "mode,scope,metric,kind,x,y,threshold,tp,fp,tn,fn\n";
  for (const auto& set : sets)
    for (const auto* group : {&set.roc, &set.pr})
      for (const auto& [metric, c] : *group)
        for (const auto& p : c.points)
          out << csv::join({set.mode, set.scope, metric, to_string(c.kind), format_number(p.x, 17),
                            format_number(p.y, 17), std::isinf(p.threshold) ? "inf" : format_number(p.threshold, 17),
                            std::to_string(p.tp), std::to_string(p.fp), std::to_string(p.tn), std::to_string(p.fn)})
              << '\n';
  return out.str();
}

std::string paired_csv(const std::vector<PairedRow>& rows) {
  std::ostringstream out;
  out << "scope,metric_a,metric_b,stat,delta,lo,hi,significant\n";
  for (const auto& r : rows)
    out << csv::join({r.scope, r.metric_a, r.metric_b, to_string(r.statistic), format_number(r.diff.delta, 17),
                      format_number(r.diff.lo, 17), format_number(r.diff.hi, 17), r.diff.significant ? "1" : "0"})
        << '\n';
  return out.str();
}

}  // namespace simscore

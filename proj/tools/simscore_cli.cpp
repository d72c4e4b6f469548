// Command-line front end: ingest, stats, score, import, evaluate, compare, run.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "simscore/corpus.hpp"
#include "simscore/error.hpp"
#include "simscore/eval/report.hpp"
#include "simscore/eval/svg.hpp"
#include "simscore/io.hpp"
#include "simscore/metrics/external.hpp"
#include "simscore/pipeline.hpp"

namespace fs = std::filesystem;
using namespace simscore;

namespace {

struct Overrides {
  std::string config = "simscore.json";
  std::string mode;
  std::string metrics;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> resamples;
  std::string out;
};

void add_config(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "Run config (JSON) or a run manifest")->capture_default_str();
}

void add_overrides(CLI::App* app, Overrides& o) {
  app->add_option("--mode", o.mode, "raw, preprocessed or both");
  app->add_option("--metrics", o.metrics, "Comma-separated metric families");
  app->add_option("--seed", o.seed, "Bootstrap seed");
  app->add_option("--resamples", o.resamples, "Bootstrap resamples");
  app->add_option("--out", o.out, "Output directory");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg = load_run_config(o.config);
  if (!o.mode.empty()) cfg.mode = parse_mode(o.mode);
  if (!o.metrics.empty()) cfg.metrics = parse_metric_list(o.metrics);
  if (o.seed) cfg.report.bootstrap.seed = *o.seed;
  if (o.resamples) cfg.report.bootstrap.resamples = *o.resamples;
  if (!o.out.empty()) cfg.out = fs::absolute(o.out).lexically_normal();
  cfg.validate();
  return cfg;
}

void write_or_print(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    write_file(path, contents);
  }
}

int report_error(const std::string& kind, const std::string& message, int code) {
  nlohmann::json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << j.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity metrics for source-code plagiarism ranking"};
  app.require_subcommand(1);
  Overrides o;

  auto* ingest = app.add_subcommand("ingest", "Load and validate corpora; print pair counts");
  add_config(ingest, o);
  std::string ingest_out;
  ingest->add_option("--out", ingest_out, "Write the counts CSV here instead of stdout");

  auto* stats = app.add_subcommand("stats", "Token statistics per dataset (CSV)");
  add_config(stats, o);
  std::string stats_out;
  stats->add_option("--out", stats_out, "Write the CSV here instead of stdout");

  auto* score = app.add_subcommand("score", "Score all manifest pairs; one table per mode");
  add_config(score, o);
  add_overrides(score, o);

  auto* import = app.add_subcommand("import", "Validate an external score file against the corpus");
  add_config(import, o);
  std::string import_file, import_id, import_out;
  std::optional<double> max_scale;
  import->add_option("--file", import_file, "CSV with left_id,right_id,score")->required();
  import->add_option("--metric-id", import_id, "Metric id for the imported scores")->required();
  import->add_option("--max-scale", max_scale, "Divide scores by this maximum");
  import->add_option("--out", import_out, "Write the normalized score table here instead of stdout");

  auto* evaluate = app.add_subcommand("evaluate", "Ranking report from score tables");
  std::vector<std::string> eval_scores;
  std::string eval_mode = "raw", eval_out;
  ReportOptions eval_opts;
  bool eval_plots = true;
  evaluate->add_option("--scores", eval_scores, "Score table CSV (repeatable)")->required();
  evaluate->add_option("--mode", eval_mode, "Label for the report block")->capture_default_str();
  evaluate->add_option("--seed", eval_opts.bootstrap.seed, "Bootstrap seed")->capture_default_str();
  evaluate->add_option("--resamples", eval_opts.bootstrap.resamples, "Bootstrap resamples")->capture_default_str();
  evaluate->add_option("--confidence", eval_opts.bootstrap.confidence, "Interval level")->capture_default_str();
  evaluate->add_option("--out", eval_out, "Output directory")->required();
  evaluate->add_flag("!--no-plots", eval_plots, "Skip SVG plots");

  auto* compare = app.add_subcommand("compare", "Paired bootstrap difference between two metrics");
  std::string run_a, run_b, metric_a, metric_b, compare_mode = "raw", compare_out;
  ReportOptions compare_opts;
  compare->add_option("--run-a", run_a, "Run directory or score table")->required();
  compare->add_option("--run-b", run_b, "Second run directory or score table (default: run-a)");
  compare->add_option("--metric-a", metric_a, "Metric id in run-a")->required();
  compare->add_option("--metric-b", metric_b, "Metric id in run-b")->required();
  compare->add_option("--mode", compare_mode, "Mode of the score tables inside run directories")->capture_default_str();
  compare->add_option("--seed", compare_opts.bootstrap.seed, "Bootstrap seed")->capture_default_str();
  compare->add_option("--resamples", compare_opts.bootstrap.resamples, "Bootstrap resamples")->capture_default_str();
  compare->add_option("--out", compare_out, "Write the CSV here instead of stdout");

  auto* run_cmd = app.add_subcommand("run", "Score, import, evaluate and write every artifact");
  add_config(run_cmd, o);
  add_overrides(run_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kValidation);
  }

  try {
    if (*ingest) {
      const RunConfig cfg = load_run_config(o.config);
      const Corpus corpus = load_corpora(cfg);
      std::string out = "dataset,fragments,pairs,positives,negatives,L1,L2,L3,L4,L5,L6\n";
      auto tags = corpus.datasets();
      tags.push_back("");
      for (const auto& tag : tags) {
        const auto c = corpus.counts(tag);
        std::size_t fragments = 0;
        for (const auto& [key, f] : corpus.fragments())
          if (tag.empty() || key.dataset == tag) ++fragments;
        out += (tag.empty() ? std::string("pooled") : tag) + "," + std::to_string(fragments) + "," +
               std::to_string(c.total()) + "," + std::to_string(c.positives) + "," + std::to_string(c.negatives);
        for (auto n : c.per_level) out += "," + std::to_string(n);
        out += "\n";
      }
      write_or_print(ingest_out, out);
    } else if (*stats) {
      const RunConfig cfg = load_run_config(o.config);
      write_or_print(stats_out, corpus_stats_csv(corpus_stats(load_corpora(cfg))));
    } else if (*score) {
      const RunConfig cfg = resolve(o);
      const Corpus corpus = load_corpora(cfg);
      std::vector<std::string> warnings;
      for (const auto& mode : mode_names(cfg.mode)) {
        const auto rows = score_mode(corpus, cfg, mode == "preprocessed", warnings);
        write_file(cfg.out / ("scores_" + mode + ".csv"), score_table_csv(rows));
      }
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    } else if (*import) {
      const RunConfig cfg = load_run_config(o.config);
      const Corpus corpus = load_corpora(cfg);
      const auto res = import_external_scores(fs::path(import_file), import_id, corpus, max_scale);
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
      for (const auto& r : res.rejected) std::cerr << "rejected: " << r << "\n";
      write_or_print(import_out, score_table_csv(res.rows));
    } else if (*evaluate) {
      std::vector<ScoredPair> rows;
      for (const auto& f : eval_scores) {
        auto part = read_scores(f);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      const auto scores = labelled_scores(rows);
      const auto report = stratified_report(scores, eval_mode, eval_opts);
      const fs::path out(eval_out);
      write_file(out / "report.json", report_json({report}, eval_opts));
      write_file(out / "report.csv", report_csv({report}));
      const auto sets = scope_curves(scores, eval_mode, eval_opts);
      write_file(out / "curves.csv", curves_csv(sets));
      if (eval_plots)
        for (const auto& set : sets)
          for (CurveKind k : {CurveKind::kRoc, CurveKind::kPr}) {
            std::string name = eval_mode + "_" + set.scope;
            for (char& c : name)
              if (c == ':' || c == '/') c = '_';
            write_file(out / "plots" / (name + "_" + to_string(k) + ".svg"), render_svg(set, k));
          }
    } else if (*compare) {
      const auto a = labelled_scores(read_scores(run_a, compare_mode));
      const auto b = run_b.empty() ? a : labelled_scores(read_scores(run_b, compare_mode));
      write_or_print(compare_out, paired_csv(compare_metrics(a, metric_a, b, metric_b, compare_opts)));
    } else if (*run_cmd) {
      const RunConfig cfg = resolve(o);
      const auto summary = run(cfg);
      for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "wrote " << summary.artifacts.size() << " artifacts to " << cfg.out.string() << "\n";
    }
  } catch (const Error& e) {
    return report_error(e.kind(), e.what(), static_cast<int>(e.code()));
  } catch (const std::filesystem::filesystem_error& e) {
    return report_error("io", e.what(), static_cast<int>(ExitCode::kIo));
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), 1);
  }
  return 0;
}

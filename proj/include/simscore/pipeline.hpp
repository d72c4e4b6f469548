#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "simscore/corpus.hpp"
#include "simscore/eval/report.hpp"
#include "simscore/metrics/scoring.hpp"

namespace simscore {

enum class Mode { kRaw, kPreprocessed, kBoth };
Mode parse_mode(std::string_view s);
const char* to_string(Mode m);
std::vector<std::string> mode_names(Mode m);  // "raw", "preprocessed" or both

struct CorpusSource {
  std::filesystem::path root;
  std::filesystem::path manifest;
};

struct ExternalSource {
  std::filesystem::path file;
  std::string metric_id;
  std::optional<double> max_scale;
};

/// A paired comparison. A metric may be qualified with a mode
/// (`preprocessed:CrystalBLEU`); unqualified metrics are compared within
/// every mode of the run.
struct Comparison {
  std::string a;
  std::string b;
};

struct RunConfig {
  std::vector<CorpusSource> corpora;
  std::vector<MetricFamily> metrics = default_metric_families();
  Mode mode = Mode::kRaw;
  MetricConfig metric;
  ReportOptions report;
  std::vector<ExternalSource> external;
  std::vector<Comparison> comparisons;
  std::filesystem::path out = "simscore-out";
  bool plots = true;

  void validate() const;
};

/// Parses the JSON config; relative paths resolve against `base_dir`.
/// Accepts a run manifest too (its `config` block is used).
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& file);
/// Fully resolved config as JSON; parse_run_config(config_json(c)) == c.
std::string config_json(const RunConfig& cfg);

Corpus load_corpora(const RunConfig& cfg);

struct RunSummary {
  std::vector<std::filesystem::path> artifacts;  // relative to cfg.out, sorted
  std::vector<std::string> warnings;
};

/// Scores every mode, imports external baselines, evaluates every scope and
/// writes the artifact directory including manifest.json.
RunSummary run(const RunConfig& cfg);

/// Scores and external rows of one mode, sorted by (pair, metric_id).
std::vector<ScoredPair> score_mode(const Corpus& corpus, const RunConfig& cfg, bool preprocessed,
                                   std::vector<std::string>& warnings);
std::vector<ScoredPair> import_all(const Corpus& corpus, const RunConfig& cfg, std::vector<std::string>& warnings);

/// Paired bootstrap differences of two metric columns on every scope, for
/// AUROC and AP. Single-class scopes are skipped; UndefinedMetricError when
/// none is left.
std::vector<PairedRow> compare_metrics(const ScoresByMetric& a, const std::string& metric_a,
                                       const ScoresByMetric& b, const std::string& metric_b,
                                       const ReportOptions& opts, const std::string& scope_prefix = {});

/// Reads `scores_<mode>.csv` from a run directory, or the file itself.
std::vector<ScoredPair> read_scores(const std::filesystem::path& run_or_file, const std::string& mode = "raw");

/// 64-bit FNV-1a, hex-encoded; recorded per artifact in the manifest.
std::string content_digest(std::string_view data);

}  // namespace simscore

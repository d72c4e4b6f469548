#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simscore/corpus.hpp"
#include "simscore/lexer.hpp"
#include "simscore/metrics/config.hpp"
#include "simscore/parser.hpp"

namespace simscore {

namespace metric_id {
inline constexpr std::string_view kBleu = "BLEU";
inline constexpr std::string_view kCodeBleu = "CodeBLEU";
inline constexpr std::string_view kCbNgram = "CB-Ngram";
inline constexpr std::string_view kCbWngram = "CB-Wngram";
inline constexpr std::string_view kCbSyntax = "CB-Syntax";
inline constexpr std::string_view kCbDataflow = "CB-Dataflow";
inline constexpr std::string_view kCrystalBleu = "CrystalBLEU";
inline constexpr std::string_view kRuby = "RUBY";
inline constexpr std::string_view kTsed = "TSED";
inline constexpr std::string_view kFusionTop3 = "FusionTop3";
}  // namespace metric_id

/// Metric families selectable by name. `codebleu` also emits the four
/// CB-* components; `fusion` is the mean of CrystalBLEU, CodeBLEU and RUBY.
enum class MetricFamily { kBleu, kCodeBleu, kCrystalBleu, kRuby, kTsed, kFusion };

MetricFamily parse_metric_family(std::string_view name);
const char* to_string(MetricFamily f);
std::vector<MetricFamily> default_metric_families();
/// Parses a comma-separated list; throws ValidationError on unknown names.
std::vector<MetricFamily> parse_metric_list(std::string_view list);
/// Emitted metric ids of the selected families, sorted.
std::vector<std::string> emitted_metric_ids(const std::vector<MetricFamily>& families);

struct ScoredPair {
  std::size_t pair_index = 0;  // position in Corpus::pairs()
  std::string dataset;
  std::string left_id;
  std::string right_id;
  bool label = false;
  std::optional<int> level;
  std::string metric_id;
  double value = 0.0;
  bool direction_note = false;  // symmetrization changed the left-to-right value
  bool degraded = false;        // a fallback path was taken
  std::string branch;
  bool external = false;
};

/// Orders by (pair_index, metric_id).
bool scored_pair_less(const ScoredPair& a, const ScoredPair& b);

struct ScoreOptions {
  MetricConfig cfg;
  std::vector<MetricFamily> metrics = default_metric_families();
  bool use_preprocessed = false;
  LexerOptions lexer;
  ParseOptions parser;
  unsigned threads = 0;  // 0: SIMSCORE_THREADS or hardware concurrency
};

struct ScoreTable {
  std::vector<ScoredPair> rows;       // sorted by (pair, metric_id)
  std::vector<std::string> warnings;  // parse failures and other per-fragment notes
};

/// Scores every manifest pair with every selected metric. CrystalBLEU's shared
/// n-gram set is rebuilt per dataset from that dataset's unique fragments in
/// the same mode. Per-fragment failures are recorded, never thrown.
ScoreTable score_corpus(const Corpus& corpus, const ScoreOptions& opts);

/// `dataset,left_id,right_id,label,level,metric,value,degraded,direction_note,branch,source`
std::string score_table_csv(const std::vector<ScoredPair>& rows);
/// Reads a table written by score_table_csv.
std::vector<ScoredPair> parse_score_table_csv(const std::string& text);

}  // namespace simscore

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "simscore/corpus.hpp"
#include "simscore/metrics/scoring.hpp"

namespace simscore {

struct ImportResult {
  std::vector<ScoredPair> rows;      // sorted by (pair, metric_id)
  std::vector<std::string> rejected;  // rows naming pairs absent from the manifest
  std::vector<std::string> warnings;
};

/// Reads `left_id,right_id,score` (an optional `dataset` column selects the
/// dataset when ids repeat across datasets). Scores are divided by `max_scale`
/// when given, else by the number in `<file>.max_scale` when that sidecar
/// exists. Any score left outside [0,1] is a ValidationError listing the rows.
ImportResult import_external_scores(const std::string& csv_text, const std::string& metric_id, const Corpus& corpus,
                                    std::optional<double> max_scale = std::nullopt);
ImportResult import_external_scores(const std::filesystem::path& file, const std::string& metric_id,
                                    const Corpus& corpus, std::optional<double> max_scale = std::nullopt);

}  // namespace simscore

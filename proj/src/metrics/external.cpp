#include "simscore/metrics/external.hpp"

#include <algorithm>
#include <map>

#include "simscore/csv.hpp"
#include "simscore/error.hpp"
#include "simscore/io.hpp"

namespace simscore {

namespace {

std::optional<double> parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string unordered_key(const std::string& a, const std::string& b) {
  return a < b ? a + '\n' + b : b + '\n' + a;
}

}  // namespace

ImportResult import_external_scores(const std::string& csv_text, const std::string& metric_id, const Corpus& corpus,
                                    std::optional<double> max_scale) {
  if (metric_id.empty()) throw ValidationError("external metric id must not be empty");
  if (max_scale && !(*max_scale > 0)) throw ValidationError("max_scale must be > 0");
  ImportResult result;
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) {
    result.warnings.push_back("external score file is empty");
    return result;
  }
  const auto& header = rows.front();
  const auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto left = column("left_id"), right = column("right_id"), score = column("score");
  const auto dataset = column("dataset");
  if (!left || !right || !score) throw ValidationError("external score header must contain left_id,right_id,score");
  if (rows.size() == 1) result.warnings.push_back("external score file has no rows");

  // unordered id pair -> manifest indices (one per dataset using those ids)
  std::map<std::string, std::vector<std::size_t>> lookup;
  const auto& pairs = corpus.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) lookup[unordered_key(pairs[i].left_id, pairs[i].right_id)].push_back(i);

  std::vector<std::string> bad;
  std::map<std::size_t, std::size_t> seen;  // manifest index -> csv line
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string line = "line " + std::to_string(r + 1);
    if (row.size() != header.size()) {
      bad.push_back(line + ": expected " + std::to_string(header.size()) + " fields");
      continue;
    }
    const auto v = parse_double(row[*score]);
    if (!v) {
      bad.push_back(line + ": score '" + row[*score] + "' is not a number");
      continue;
    }
    const double value = max_scale ? *v / *max_scale : *v;
    if (!(value >= 0.0 && value <= 1.0)) {
      bad.push_back(line + ": score " + row[*score] + (max_scale ? " exceeds declared max" : " outside [0,1]"));
      continue;
    }
    const auto it = lookup.find(unordered_key(row[*left], row[*right]));
    std::vector<std::size_t> matches;
    if (it != lookup.end()) {
      for (auto i : it->second)
        if (!dataset || pairs[i].dataset == row[*dataset]) matches.push_back(i);
    }
    if (matches.empty()) {
      result.rejected.push_back(line + ": pair " + row[*left] + "," + row[*right] + " not in manifest");
      continue;
    }
    if (matches.size() > 1) {
      result.rejected.push_back(line + ": pair " + row[*left] + "," + row[*right] +
                                " is ambiguous across datasets; add a dataset column");
      continue;
    }
    const std::size_t index = matches.front();
    if (const auto [prev, fresh] = seen.emplace(index, r + 1); !fresh) {
      result.rejected.push_back(line + ": duplicate of line " + std::to_string(prev->second));
      continue;
    }
    const PairRecord& p = pairs[index];
    ScoredPair s;
    s.pair_index = index;
    s.dataset = p.dataset;
    s.left_id = p.left_id;
    s.right_id = p.right_id;
    s.label = p.label;
    s.level = p.level;
    s.metric_id = metric_id;
    s.value = value;
    s.external = true;
    result.rows.push_back(std::move(s));
  }
  if (!bad.empty()) {
    std::string msg = "external scores for '" + metric_id + "' rejected:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw ValidationError(msg);
  }
  std::sort(result.rows.begin(), result.rows.end(), scored_pair_less);
  return result;
}

ImportResult import_external_scores(const std::filesystem::path& file, const std::string& metric_id,
                                    const Corpus& corpus, std::optional<double> max_scale) {
  if (!max_scale) {
    auto sidecar = file;
    sidecar += ".max_scale";
    if (std::filesystem::exists(sidecar)) {
      std::string text = read_file(sidecar);
      text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
                 text.end());
      max_scale = parse_double(text);
      if (!max_scale) throw ValidationError("unreadable max_scale sidecar " + sidecar.string());
    }
  }
  return import_external_scores(read_file(file), metric_id, corpus, max_scale);
}

}  // namespace simscore

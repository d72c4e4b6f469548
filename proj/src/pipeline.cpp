#include "simscore/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "json.hpp"

#include "simscore/error.hpp"
#include "simscore/eval/svg.hpp"
#include "simscore/io.hpp"
#include "simscore/metrics/external.hpp"

namespace simscore {

namespace fs = std::filesystem;
using nlohmann::json;

Mode parse_mode(std::string_view s) {
  if (s == "raw") return Mode::kRaw;
  if (s == "preprocessed") return Mode::kPreprocessed;
  if (s == "both") return Mode::kBoth;
  throw ValidationError("unknown mode '" + std::string(s) + "' (raw, preprocessed, both)");
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::kRaw: return "raw";
    case Mode::kPreprocessed: return "preprocessed";
    case Mode::kBoth: return "both";
  }
  return "raw";
}

std::vector<std::string> mode_names(Mode m) {
  switch (m) {
    case Mode::kRaw: return {"raw"};
    case Mode::kPreprocessed: return {"preprocessed"};
    case Mode::kBoth: return {"raw", "preprocessed"};
  }
  return {};
}

void RunConfig::validate() const {
  if (corpora.empty()) throw ValidationError("config lists no corpora");
  if (metrics.empty() && external.empty()) throw ValidationError("config selects no metrics");
  metric.validate();
  report.bootstrap.validate();
  std::set<std::string> ids;
  for (const auto& id : emitted_metric_ids(metrics)) ids.insert(id);
  for (const auto& e : external) {
    if (e.metric_id.empty()) throw ValidationError("external source " + e.file.string() + " needs a metric_id");
    if (!ids.insert(e.metric_id).second)
      throw ValidationError("metric id '" + e.metric_id + "' is used more than once");
  }
  for (const auto& c : comparisons) {
    for (const auto& m : {c.a, c.b}) {
      const auto colon = m.find(':');
      const std::string id = colon == std::string::npos ? m : m.substr(colon + 1);
      if (colon != std::string::npos) parse_mode(m.substr(0, colon));
      if (!ids.count(id)) throw ValidationError("comparison names unknown metric '" + m + "'");
    }
  }
}

namespace {

template <typename T>
T get(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config key '") + key + "' has the wrong type");
  }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return (p.is_absolute() ? p : base / p).lexically_normal();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("config") && doc.contains("artifacts")) doc = doc.at("config");
  check_keys(doc, {"corpora", "metrics", "mode", "metric_config", "bootstrap", "strata", "external", "comparisons",
                   "out", "plots"},
             "config");
  RunConfig cfg;
  const fs::path base = fs::absolute(base_dir);
  if (!doc.contains("corpora") || !doc.at("corpora").is_array()) throw ValidationError("config needs a corpora list");
  for (const auto& c : doc.at("corpora")) {
    check_keys(c, {"root", "manifest"}, "corpora entry");
    const auto root = get<std::string>(c, "root", "");
    if (root.empty()) throw ValidationError("corpora entry needs a root");
    const fs::path r = resolve(root, base);
    const auto manifest = get<std::string>(c, "manifest", "");
    cfg.corpora.push_back({r, manifest.empty() ? r / "pairs.csv" : resolve(manifest, base)});
  }
  if (doc.contains("metrics")) {
    const auto& m = doc.at("metrics");
    if (m.is_string()) {
      cfg.metrics = parse_metric_list(m.get<std::string>());
    } else if (m.is_array()) {
      std::string joined;
      for (const auto& x : m) {
        if (!x.is_string()) throw ValidationError("metrics entries must be strings");
        joined += x.get<std::string>() + ",";
      }
      cfg.metrics = m.empty() ? std::vector<MetricFamily>{} : parse_metric_list(joined);
    } else {
      throw ValidationError("metrics must be a list or comma-separated string");
    }
  }
  cfg.mode = parse_mode(get<std::string>(doc, "mode", "raw"));
  if (doc.contains("metric_config")) {
    const auto& m = doc.at("metric_config");
    check_keys(m, {"max_order", "order_weights", "alpha", "beta", "gamma", "delta", "epsilon", "k_shared",
                   "keyword_weight", "symmetrization", "subtree_depth", "node_cap", "edit_costs"},
               "metric_config");
    auto& mc = cfg.metric;
    mc.max_order = get(m, "max_order", mc.max_order);
    mc.order_weights = get(m, "order_weights", mc.order_weights);
    mc.alpha = get(m, "alpha", mc.alpha);
    mc.beta = get(m, "beta", mc.beta);
    mc.gamma = get(m, "gamma", mc.gamma);
    mc.delta = get(m, "delta", mc.delta);
    mc.epsilon = get(m, "epsilon", mc.epsilon);
    const auto k = get<long long>(m, "k_shared", static_cast<long long>(mc.k_shared));
    if (k < 0) throw ValidationError("k_shared must be >= 0");
    mc.k_shared = static_cast<std::size_t>(k);
    mc.keyword_weight = get(m, "keyword_weight", mc.keyword_weight);
    mc.symmetrization = parse_symmetrization(get<std::string>(m, "symmetrization", to_string(mc.symmetrization)));
    mc.subtree_depth = get(m, "subtree_depth", mc.subtree_depth);
    mc.node_cap = get(m, "node_cap", mc.node_cap);
    if (m.contains("edit_costs")) {
      const auto& e = m.at("edit_costs");
      check_keys(e, {"insert", "remove", "rename"}, "edit_costs");
      mc.edit_costs.insert = get(e, "insert", mc.edit_costs.insert);
      mc.edit_costs.remove = get(e, "remove", mc.edit_costs.remove);
      mc.edit_costs.rename = get(e, "rename", mc.edit_costs.rename);
    }
  }
  if (doc.contains("bootstrap")) {
    const auto& b = doc.at("bootstrap");
    check_keys(b, {"resamples", "confidence", "seed", "max_redraws"}, "bootstrap");
    auto& bc = cfg.report.bootstrap;
    bc.resamples = get(b, "resamples", bc.resamples);
    bc.confidence = get(b, "confidence", bc.confidence);
    bc.seed = get(b, "seed", bc.seed);
    bc.max_redraws = get(b, "max_redraws", bc.max_redraws);
  }
  if (doc.contains("strata")) {
    const auto& s = doc.at("strata");
    check_keys(s, {"pooled", "dataset", "level"}, "strata");
    cfg.report.pooled = get(s, "pooled", true);
    cfg.report.per_dataset = get(s, "dataset", true);
    cfg.report.per_level = get(s, "level", true);
  }
  if (doc.contains("external")) {
    for (const auto& e : doc.at("external")) {
      check_keys(e, {"file", "metric_id", "max_scale"}, "external entry");
      ExternalSource src;
      src.file = resolve(get<std::string>(e, "file", ""), base);
      src.metric_id = get<std::string>(e, "metric_id", "");
      if (e.contains("max_scale") && !e.at("max_scale").is_null()) src.max_scale = get<double>(e, "max_scale", 1.0);
      cfg.external.push_back(std::move(src));
    }
  }
  if (doc.contains("comparisons")) {
    for (const auto& c : doc.at("comparisons")) {
      check_keys(c, {"a", "b"}, "comparison");
      cfg.comparisons.push_back({get<std::string>(c, "a", ""), get<std::string>(c, "b", "")});
    }
  }
  cfg.out = resolve(get<std::string>(doc, "out", cfg.out.string()), base);
  cfg.plots = get(doc, "plots", cfg.plots);
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const fs::path& file) {
  return parse_run_config(read_file(file), fs::absolute(file).parent_path());
}

namespace {

json config_to_json(const RunConfig& cfg) {
  json j;
  j["corpora"] = json::array();
  for (const auto& c : cfg.corpora) j["corpora"].push_back({{"root", c.root.string()}, {"manifest", c.manifest.string()}});
  j["metrics"] = json::array();
  for (auto m : cfg.metrics) j["metrics"].push_back(to_string(m));
  j["mode"] = to_string(cfg.mode);
  const auto& mc = cfg.metric;
  j["metric_config"] = {{"max_order", mc.max_order},
                        {"order_weights", mc.order_weights},
                        {"alpha", mc.alpha},
                        {"beta", mc.beta},
                        {"gamma", mc.gamma},
                        {"delta", mc.delta},
                        {"epsilon", mc.epsilon},
                        {"k_shared", mc.k_shared},
                        {"keyword_weight", mc.keyword_weight},
                        {"symmetrization", to_string(mc.symmetrization)},
                        {"subtree_depth", mc.subtree_depth},
                        {"node_cap", mc.node_cap},
                        {"edit_costs",
                         {{"insert", mc.edit_costs.insert},
                          {"remove", mc.edit_costs.remove},
                          {"rename", mc.edit_costs.rename}}}};
  const auto& b = cfg.report.bootstrap;
  j["bootstrap"] = {
      {"resamples", b.resamples}, {"confidence", b.confidence}, {"seed", b.seed}, {"max_redraws", b.max_redraws}};
  j["strata"] = {{"pooled", cfg.report.pooled}, {"dataset", cfg.report.per_dataset}, {"level", cfg.report.per_level}};
  j["external"] = json::array();
  for (const auto& e : cfg.external) {
    json x = {{"file", e.file.string()}, {"metric_id", e.metric_id}};
    x["max_scale"] = e.max_scale ? json(*e.max_scale) : json(nullptr);
    j["external"].push_back(std::move(x));
  }
  j["comparisons"] = json::array();
  for (const auto& c : cfg.comparisons) j["comparisons"].push_back({{"a", c.a}, {"b", c.b}});
  j["out"] = cfg.out.string();
  j["plots"] = cfg.plots;
  return j;
}

std::string file_safe(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  return s;
}

}  // namespace

std::string config_json(const RunConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

Corpus load_corpora(const RunConfig& cfg) {
  std::vector<Corpus> parts;
  for (const auto& c : cfg.corpora) parts.push_back(load_corpus(c.root, c.manifest));
  return parts.size() == 1 ? std::move(parts.front()) : Corpus::merge(parts);
}

std::vector<ScoredPair> score_mode(const Corpus& corpus, const RunConfig& cfg, bool preprocessed,
                                   std::vector<std::string>& warnings) {
  if (cfg.metrics.empty()) return {};
  ScoreOptions opts;
  opts.cfg = cfg.metric;
  opts.metrics = cfg.metrics;
  opts.use_preprocessed = preprocessed;
  auto table = score_corpus(corpus, opts);
  const std::string mode = preprocessed ? "preprocessed" : "raw";
  for (auto& w : table.warnings) warnings.push_back(mode + ": " + w);
  return std::move(table.rows);
}

std::vector<ScoredPair> import_all(const Corpus& corpus, const RunConfig& cfg, std::vector<std::string>& warnings) {
  std::vector<ScoredPair> rows;
  for (const auto& e : cfg.external) {
    auto res = import_external_scores(e.file, e.metric_id, corpus, e.max_scale);
    for (auto& w : res.warnings) warnings.push_back(e.metric_id + ": " + w);
    for (auto& r : res.rejected) warnings.push_back(e.metric_id + ": rejected " + r);
    rows.insert(rows.end(), std::make_move_iterator(res.rows.begin()), std::make_move_iterator(res.rows.end()));
  }
  return rows;
}

std::vector<PairedRow> compare_metrics(const ScoresByMetric& a, const std::string& metric_a, const ScoresByMetric& b,
                                       const std::string& metric_b, const ReportOptions& opts,
                                       const std::string& scope_prefix) {
  const auto find = [](const ScoresByMetric& s, const std::string& m) -> const std::vector<LabelledScore>& {
    const auto it = s.find(m);
    if (it == s.end()) throw ValidationError("no scores for metric '" + m + "'");
    return it->second;
  };
  const auto& ra = find(a, metric_a);
  const auto& rb = find(b, metric_b);
  ScoresByMetric both{{"a", ra}, {"b", rb}};
  std::vector<PairedRow> out;
  for (const auto& scope : build_scopes(both, opts)) {
    const auto sa = select(ra, scope);
    const auto sb = select(rb, scope);
    bool pos = false, neg = false;
    for (const auto& s : sa) (s.label ? pos : neg) = true;
    const std::string name = scope_prefix.empty() ? scope.name : scope_prefix + "/" + scope.name;
    if (!pos || !neg) continue;
    for (Statistic st : {Statistic::kAuroc, Statistic::kAp})
      out.push_back({name, metric_a, metric_b, st, paired_bootstrap_diff(sa, sb, st, opts.bootstrap, name)});
  }
  if (out.empty())
    throw UndefinedMetricError("no scope of " + metric_a + " vs " + metric_b + " has both positive and negative pairs");
  return out;
}

std::vector<ScoredPair> read_scores(const fs::path& run_or_file, const std::string& mode) {
  const fs::path file = fs::is_directory(run_or_file) ? run_or_file / ("scores_" + mode + ".csv") : run_or_file;
  return parse_score_table_csv(read_file(file));
}

std::string content_digest(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunSummary run(const RunConfig& cfg) {
  cfg.validate();
  const Corpus corpus = load_corpora(cfg);
  RunSummary summary;
  std::map<std::string, std::string> artifacts;  // relative path -> contents
  const auto emit = [&](const std::string& rel, std::string contents) { artifacts[rel] = std::move(contents); };

  const auto external = import_all(corpus, cfg, summary.warnings);
  std::vector<RankingReport> reports;
  std::vector<CurveSet> curves;
  std::map<std::string, ScoresByMetric> by_mode;
  json degraded = json::object();
  for (const auto& mode : mode_names(cfg.mode)) {
    auto rows = score_mode(corpus, cfg, mode == "preprocessed", summary.warnings);
    rows.insert(rows.end(), external.begin(), external.end());
    std::sort(rows.begin(), rows.end(), scored_pair_less);
    std::map<std::string, std::size_t> counts;
    for (const auto& r : rows)
      if (r.degraded) ++counts[r.metric_id];
    degraded[mode] = counts;
    emit("scores_" + mode + ".csv", score_table_csv(rows));
    auto scores = labelled_scores(rows);
    reports.push_back(stratified_report(scores, mode, cfg.report));
    auto sets = scope_curves(scores, mode, cfg.report);
    if (cfg.plots)
      for (const auto& set : sets)
        for (CurveKind k : {CurveKind::kRoc, CurveKind::kPr})
          emit("plots/" + file_safe(mode + "_" + set.scope) + "_" + to_string(k) + ".svg", render_svg(set, k));
    curves.insert(curves.end(), std::make_move_iterator(sets.begin()), std::make_move_iterator(sets.end()));
    by_mode[mode] = std::move(scores);
  }
  emit("report.json", report_json(reports, cfg.report));
  emit("report.csv", report_csv(reports));
  emit("curves.csv", curves_csv(curves));

  if (!cfg.comparisons.empty()) {
    std::vector<PairedRow> paired;
    const auto split = [](const std::string& m) -> std::pair<std::string, std::string> {
      const auto colon = m.find(':');
      if (colon == std::string::npos) return {"", m};
      return {m.substr(0, colon), m.substr(colon + 1)};
    };
    for (const auto& c : cfg.comparisons) {
      const auto [mode_a, id_a] = split(c.a);
      const auto [mode_b, id_b] = split(c.b);
      for (const auto& mode : mode_names(cfg.mode)) {
        const std::string ma = mode_a.empty() ? mode : mode_a;
        const std::string mb = mode_b.empty() ? mode : mode_b;
        if (!by_mode.count(ma) || !by_mode.count(mb))
          throw ValidationError("comparison " + c.a + " vs " + c.b + " refers to a mode this run does not score");
        const bool qualified = !mode_a.empty() || !mode_b.empty();
        auto rows = compare_metrics(by_mode.at(ma), id_a, by_mode.at(mb), id_b, cfg.report,
                                    qualified ? ma + "-vs-" + mb : mode);
        for (auto& r : rows) {
          r.metric_a = ma + ":" + id_a;
          r.metric_b = mb + ":" + id_b;
        }
        paired.insert(paired.end(), rows.begin(), rows.end());
        if (qualified) break;
      }
    }
    emit("paired.csv", paired_csv(paired));
  }

  json manifest;
  manifest["tool"] = "simscore";
  manifest["format"] = 1;
  manifest["config"] = config_to_json(cfg);
  manifest["artifacts"] = json::object();
  for (const auto& [rel, contents] : artifacts) manifest["artifacts"][rel] = content_digest(contents);
  manifest["degraded"] = degraded;
  manifest["warnings"] = summary.warnings;
  emit("manifest.json", manifest.dump(2) + "\n");

  for (const auto& [rel, contents] : artifacts) {
    write_file(cfg.out / rel, contents);
    summary.artifacts.push_back(rel);
  }
  return summary;
}

}  // namespace simscore

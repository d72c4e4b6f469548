#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "simscore/error.hpp"
#include "simscore/io.hpp"
#include "simscore/pipeline.hpp"

using namespace simscore;
namespace fs = std::filesystem;

namespace {

const fs::path kMini = SIMSCORE_MINI_DIR;

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("simscore_pipeline_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig mini_config(const fs::path& out) {
  RunConfig cfg = load_run_config(kMini / "config.json");
  cfg.out = out;
  cfg.report.bootstrap.resamples = 200;
  return cfg;
}

int cli(const std::string& args, const fs::path& dir) {
  const std::string cmd = "cd '" + dir.string() + "' && '" SIMSCORE_CLI_PATH "' " + args + " >stdout.txt 2>stderr.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> tree_contents(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = read_file(e.path());
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = load_run_config(kMini / "config.json");
  CHECK(cfg.corpora.size() == 2);
  CHECK(cfg.corpora[0].manifest == kMini / "pairs.csv");
  CHECK(cfg.mode == Mode::kBoth);
  CHECK(cfg.metric.k_shared == 20);
  CHECK(cfg.report.bootstrap.seed == 7);
  CHECK(cfg.external.at(0).metric_id == "Dolos");
  CHECK(cfg.out == kMini / "out");

  const auto again = parse_run_config(config_json(cfg), "/elsewhere");
  CHECK(config_json(again) == config_json(cfg));

  CHECK_THROWS_AS(parse_run_config(R"({"corpora": [], "colour": 1})", "."), ValidationError);
  CHECK_THROWS_AS(parse_run_config(R"({"mode": "sideways"})", "."), ValidationError);
  CHECK_THROWS_AS(parse_run_config(R"({"metrics": ["codebert"]})", "."), ValidationError);
  CHECK_THROWS_AS(parse_run_config(R"({"metric_config": {"alpha": 0.9}})", "."), ValidationError);
  CHECK_THROWS_AS(parse_run_config(R"({"bootstrap": {"confidence": 2}})", "."), ValidationError);
  CHECK_THROWS_AS(parse_run_config("{not json", "."), ValidationError);
}

TEST_CASE("run writes every artifact and is reproducible") {
  const auto dir = scratch("run");
  const auto summary = run(mini_config(dir / "a"));
  for (const char* name : {"scores_raw.csv", "scores_preprocessed.csv", "report.json", "report.csv", "curves.csv",
                           "paired.csv", "manifest.json", "plots/raw_pooled_roc.svg", "plots/preprocessed_pooled_pr.svg"})
    CHECK_MESSAGE(fs::exists(dir / "a" / name), name);
  CHECK_FALSE(summary.warnings.empty());  // broken.java does not parse

  auto second = mini_config(dir / "b");
  second.report.threads = 3;
  run(second);
  auto a = tree_contents(dir / "a"), b = tree_contents(dir / "b");
  a.erase("manifest.json");
  b.erase("manifest.json");
  CHECK(a == b);

  // Replaying the manifest in place reproduces every byte, manifest included.
  const auto before = tree_contents(dir / "a");
  run(load_run_config(dir / "a" / "manifest.json"));
  CHECK(tree_contents(dir / "a") == before);

  const auto manifest = nlohmann::json::parse(read_file(dir / "a" / "manifest.json"));
  CHECK(manifest["artifacts"]["report.json"] == content_digest(read_file(dir / "a" / "report.json")));
  CHECK(manifest.contains("degraded"));
}

TEST_CASE("external rows are identical in both modes") {
  const auto dir = scratch("external");
  run(mini_config(dir));
  auto external = [&](const std::string& mode) {
    std::vector<ScoredPair> rows;
    for (const auto& r : read_scores(dir, mode))
      if (r.external) rows.push_back(r);
    return rows;
  };
  const auto raw = external("raw"), pre = external("preprocessed");
  REQUIRE(!raw.empty());
  REQUIRE(raw.size() == pre.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    CHECK(raw[i].value == pre[i].value);
    CHECK(raw[i].left_id == pre[i].left_id);
    CHECK(raw[i].metric_id == "Dolos");
  }
}

TEST_CASE("crystalbleu run with k_shared = 0 matches the bleu run") {
  const auto dir = scratch("k0");
  auto cfg = mini_config(dir / "c");
  cfg.metrics = {MetricFamily::kCrystalBleu};
  cfg.metric.k_shared = 0;
  cfg.external.clear();
  cfg.comparisons.clear();
  cfg.plots = false;
  run(cfg);
  cfg.out = dir / "b";
  cfg.metrics = {MetricFamily::kBleu};
  run(cfg);
  for (const char* mode : {"raw", "preprocessed"}) {
    const auto c = read_scores(dir / "c", mode), b = read_scores(dir / "b", mode);
    REQUIRE(c.size() == b.size());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].value == b[i].value);
  }
}

TEST_CASE("cli exit codes") {
  const auto dir = scratch("cli");
  CHECK(cli("ingest --config '" + (kMini / "config.json").string() + "'", dir) == 0);
  CHECK(read_file(dir / "stdout.txt").find("mini") != std::string::npos);

  write_file(dir / "bad.json", R"({"corpora": [], "unknown_key": true})");
  CHECK(cli("score --config bad.json", dir) == 2);
  const auto err = nlohmann::json::parse(read_file(dir / "stderr.txt"));
  CHECK(err["exit_code"] == 2);
  CHECK(err["error"] == "validation");

  CHECK(cli("score --config missing.json", dir) == 4);
  CHECK(cli("frobnicate", dir) == 2);

  // A score table with one class only: AUROC is undefined.
  write_file(dir / "one_class.csv",
             "dataset,left_id,right_id,label,level,metric,value,degraded,direction_note,branch,source\n"
             "d,a,b,1,1,BLEU,0.5,0,0,,computed\nd,c,e,1,2,BLEU,0.4,0,0,,computed\n");
  CHECK(cli("compare --run-a one_class.csv --metric-a BLEU --metric-b BLEU --resamples 50", dir) == 3);

  const auto out = dir / "run";
  CHECK(cli("run --config '" + (kMini / "config.json").string() + "' --resamples 100 --out '" + out.string() + "'",
            dir) == 0);
  CHECK(fs::exists(out / "manifest.json"));
  CHECK(cli("evaluate --scores '" + (out / "scores_raw.csv").string() + "' --resamples 100 --out ev", dir) == 0);
  CHECK(fs::exists(dir / "ev" / "report.json"));
}

#include "simscore/metrics/scoring.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "simscore/csv.hpp"
#include "simscore/dataflow.hpp"
#include "simscore/error.hpp"
#include "simscore/io.hpp"
#include "simscore/metrics/bleu.hpp"
#include "simscore/metrics/codebleu.hpp"
#include "simscore/metrics/combine.hpp"
#include "simscore/metrics/crystalbleu.hpp"
#include "simscore/metrics/structural.hpp"
#include "simscore/parallel.hpp"
#include "simscore/subtree.hpp"

namespace simscore {

namespace {

struct FamilyName {
  MetricFamily family;
  const char* name;
};

constexpr FamilyName kFamilies[] = {
    {MetricFamily::kBleu, "bleu"},   {MetricFamily::kCodeBleu, "codebleu"}, {MetricFamily::kCrystalBleu, "crystalbleu"},
    {MetricFamily::kRuby, "ruby"},   {MetricFamily::kTsed, "tsed"},         {MetricFamily::kFusion, "fusion"},
};

struct FragmentFeatures {
  TokenStream tokens;
  NgramProfile profile;
  std::optional<SyntaxTree> tree;
  StringMultiset subtrees;
  DataFlowGraph dataflow;
};

struct Needs {
  bool bleu = false, codebleu = false, crystal = false, ruby = false, tsed = false, fusion = false;
  bool trees() const { return codebleu || ruby || tsed || fusion; }
  bool ted() const { return ruby || tsed || fusion; }
};

Needs needs_of(const std::vector<MetricFamily>& families) {
  Needs n;
  for (auto f : families) {
    switch (f) {
      case MetricFamily::kBleu: n.bleu = true; break;
      case MetricFamily::kCodeBleu: n.codebleu = true; break;
      case MetricFamily::kCrystalBleu: n.crystal = true; break;
      case MetricFamily::kRuby: n.ruby = true; break;
      case MetricFamily::kTsed: n.tsed = true; break;
      case MetricFamily::kFusion: n.fusion = true; break;
    }
  }
  return n;
}

struct Emitter {
  const PairRecord& pair;
  std::size_t index;
  Symmetrization mode;
  std::vector<ScoredPair>& out;

  void emit(std::string_view id, double value, bool degraded, std::string branch = {}, bool note = false) {
    ScoredPair s;
    s.pair_index = index;
    s.dataset = pair.dataset;
    s.left_id = pair.left_id;
    s.right_id = pair.right_id;
    s.label = pair.label;
    s.level = pair.level;
    s.metric_id = std::string(id);
    s.value = std::clamp(value, 0.0, 1.0);
    s.degraded = degraded;
    s.branch = std::move(branch);
    s.direction_note = note;
    out.push_back(std::move(s));
  }
  // Returns the symmetrized value and emits it when `id` is non-empty.
  double directional(std::string_view id, double lr, double rl, bool degraded) {
    const double v = symmetrize(lr, rl, mode);
    if (!id.empty()) emit(id, v, degraded, {}, v != lr);
    return v;
  }
};

}  // namespace

MetricFamily parse_metric_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "fusiontop3") return MetricFamily::kFusion;
  for (const auto& f : kFamilies)
    if (lower == f.name) return f.family;
  throw ValidationError("unknown metric '" + std::string(name) + "' (bleu, codebleu, crystalbleu, ruby, tsed, fusion)");
}

const char* to_string(MetricFamily family) {
  for (const auto& f : kFamilies)
    if (f.family == family) return f.name;
  return "?";
}

std::vector<MetricFamily> default_metric_families() {
  return {MetricFamily::kCodeBleu, MetricFamily::kCrystalBleu, MetricFamily::kRuby, MetricFamily::kTsed,
          MetricFamily::kFusion};
}

std::vector<MetricFamily> parse_metric_list(std::string_view list) {
  std::vector<MetricFamily> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    std::string_view item = list.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const auto f = parse_metric_family(item);
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    start = comma + 1;
  }
  if (out.empty()) throw ValidationError("metric list is empty");
  return out;
}

std::vector<std::string> emitted_metric_ids(const std::vector<MetricFamily>& families) {
  std::set<std::string> ids;
  for (auto f : families) {
    switch (f) {
      case MetricFamily::kBleu: ids.emplace(metric_id::kBleu); break;
      case MetricFamily::kCodeBleu:
        for (auto id : {metric_id::kCodeBleu, metric_id::kCbNgram, metric_id::kCbWngram, metric_id::kCbSyntax,
                        metric_id::kCbDataflow})
          ids.emplace(id);
        break;
      case MetricFamily::kCrystalBleu: ids.emplace(metric_id::kCrystalBleu); break;
      case MetricFamily::kRuby: ids.emplace(metric_id::kRuby); break;
      case MetricFamily::kTsed: ids.emplace(metric_id::kTsed); break;
      case MetricFamily::kFusion: ids.emplace(metric_id::kFusionTop3); break;
    }
  }
  return {ids.begin(), ids.end()};
}

bool scored_pair_less(const ScoredPair& a, const ScoredPair& b) {
  if (a.pair_index != b.pair_index) return a.pair_index < b.pair_index;
  return a.metric_id < b.metric_id;
}

ScoreTable score_corpus(const Corpus& corpus, const ScoreOptions& opts) {
  opts.cfg.validate();
  const Needs need = needs_of(opts.metrics);
  const MetricConfig& cfg = opts.cfg;
  ScoreTable table;
  const auto& pairs = corpus.pairs();
  std::vector<std::vector<ScoredPair>> per_pair(pairs.size());

  for (const auto& dataset : corpus.datasets()) {
    std::vector<std::size_t> pair_indices;
    std::map<std::string, std::size_t> slot_of;  // fragment id -> feature slot
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].dataset != dataset) continue;
      pair_indices.push_back(i);
      slot_of.emplace(pairs[i].left_id, 0);
      slot_of.emplace(pairs[i].right_id, 0);
    }
    std::vector<const CodeFragment*> fragments;
    for (auto& [id, slot] : slot_of) {
      slot = fragments.size();
      fragments.push_back(&corpus.fragment(dataset, id));
    }

    std::vector<FragmentFeatures> features(fragments.size());
    std::vector<std::string> failures(fragments.size());
    parallel_for(
        fragments.size(),
        [&](std::size_t i) {
          auto& f = features[i];
          f.tokens = tokenize(*fragments[i], opts.use_preprocessed, opts.lexer);
          f.profile = ngram_profile(f.tokens, cfg.max_order);
          if (!need.trees()) return;
          try {
            f.tree = parse(*fragments[i], opts.use_preprocessed, opts.parser);
          } catch (const ParseFailure& e) {
            failures[i] = e.what();
            return;
          }
          if (need.codebleu || need.fusion) {
            f.subtrees = subtree_multiset(*f.tree, cfg.subtree_depth);
            f.dataflow = dataflow_graph(*f.tree);
          }
        },
        opts.threads);
    for (std::size_t i = 0; i < failures.size(); ++i)
      if (!failures[i].empty())
        table.warnings.push_back(dataset + "/" + fragments[i]->id + ": " + failures[i]);

    TriviallySharedSet shared;
    if (need.crystal || need.fusion) {
      std::vector<const NgramProfile*> profiles;
      for (const auto& f : features) profiles.push_back(&f.profile);
      shared = trivially_shared_ngrams(profiles, cfg);
    }

    parallel_for(
        pair_indices.size(),
        [&](std::size_t k) {
          const std::size_t index = pair_indices[k];
          const PairRecord& p = pairs[index];
          const FragmentFeatures& a = features[slot_of.at(p.left_id)];
          const FragmentFeatures& b = features[slot_of.at(p.right_id)];
          auto& out = per_pair[index];
          Emitter em{p, index, cfg.symmetrization, out};

          if (need.bleu) {
            const auto lr = ngram_bleu(a.profile, b.profile, cfg);
            const auto rl = ngram_bleu(b.profile, a.profile, cfg);
            em.directional(metric_id::kBleu, lr.value, rl.value, lr.degraded || rl.degraded);
          }
          double crystal = 0.0, code = 0.0, ruby_value = 0.0;
          bool crystal_degraded = false, code_degraded = false, ruby_degraded = false;
          if (need.crystal || need.fusion) {
            const auto lr = crystalbleu(a.profile, b.profile, shared, cfg);
            const auto rl = crystalbleu(b.profile, a.profile, shared, cfg);
            crystal_degraded = lr.degraded || rl.degraded;
            crystal = em.directional(need.crystal ? metric_id::kCrystalBleu : "", lr.value, rl.value,
                                     crystal_degraded);
          }
          if (need.codebleu || need.fusion) {
            const CodeBleuInputs ia{&a.profile, a.tree ? &*a.tree : nullptr, &a.subtrees, &a.dataflow};
            const CodeBleuInputs ib{&b.profile, b.tree ? &*b.tree : nullptr, &b.subtrees, &b.dataflow};
            const auto lr = codebleu(ia, ib, cfg);
            const auto rl = codebleu(ib, ia, cfg);
            const bool emit = need.codebleu;
            const double ng = em.directional(emit ? metric_id::kCbNgram : "", lr.ngram.value, rl.ngram.value,
                                             lr.ngram.degraded || rl.ngram.degraded);
            const double wg = em.directional(emit ? metric_id::kCbWngram : "", lr.weighted.value,
                                             rl.weighted.value, lr.weighted.degraded || rl.weighted.degraded);
            const double sx = em.directional(emit ? metric_id::kCbSyntax : "", lr.syntax.value, rl.syntax.value,
                                             lr.syntax.degraded || rl.syntax.degraded);
            const double df = em.directional(emit ? metric_id::kCbDataflow : "", lr.dataflow.value,
                                             rl.dataflow.value, lr.dataflow.degraded || rl.dataflow.degraded);
            code = codebleu_total(ng, wg, sx, df, cfg);
            code_degraded = lr.degraded() || rl.degraded();
            if (emit) em.emit(metric_id::kCodeBleu, code, code_degraded, {}, code != lr.total);
          }
          if (need.ted()) {
            std::optional<TreeComparison> cmp;
            if (a.tree && b.tree) cmp = compare_trees(*a.tree, *b.tree, cfg);
            const TreeComparison* c = cmp ? &*cmp : nullptr;
            if (need.ruby || need.fusion) {
              const auto r = ruby(a.tokens, b.tokens, c);
              ruby_value = r.value;
              ruby_degraded = r.degraded;
              if (need.ruby) em.emit(metric_id::kRuby, r.value, r.degraded, r.branch);
            }
            if (need.tsed) {
              const auto t = tsed(c);
              em.emit(metric_id::kTsed, t.value, t.degraded, t.branch);
            }
          }
          if (need.fusion) {
            em.emit(metric_id::kFusionTop3, fuse({crystal, code, ruby_value}), crystal_degraded || code_degraded || ruby_degraded);
          }
          std::sort(out.begin(), out.end(), scored_pair_less);
        },
        opts.threads);
  }
  for (auto& rows : per_pair)
    for (auto& r : rows) table.rows.push_back(std::move(r));
  return table;
}

std::string score_table_csv(const std::vector<ScoredPair>& rows) {
  std::ostringstream out;
  out << "dataset,left_id,right_id,label,level,metric,value,degraded,direction_note,branch,source\n";
  for (const auto& r : rows) {
    out << csv::join({r.dataset, r.left_id, r.right_id, r.label ? "1" : "0", r.level ? std::to_string(*r.level) : "",
                      r.metric_id, format_number(r.value, 17), r.degraded ? "1" : "0", r.direction_note ? "1" : "0",
                      r.branch, r.external ? "external" : "internal"})
        << '\n';
  }
  return out.str();
}

std::vector<ScoredPair> parse_score_table_csv(const std::string& text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw ValidationError("score table is empty");
  const std::vector<std::string> header{"dataset", "left_id",        "right_id", "label",  "level", "metric",
                                        "value",   "degraded",       "direction_note", "branch", "source"};
  if (rows.front() != header) throw ValidationError("score table header must be: " + csv::join(header));
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index_of;
  std::vector<ScoredPair> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != header.size())
      throw ValidationError("score table row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                            " fields, expected " + std::to_string(header.size()));
    ScoredPair s;
    s.dataset = row[0];
    s.left_id = row[1];
    s.right_id = row[2];
    s.label = row[3] == "1";
    if (!row[4].empty()) s.level = std::stoi(row[4]);
    s.metric_id = row[5];
    try {
      s.value = std::stod(row[6]);
    } catch (const std::exception&) {
      throw ValidationError("score table row " + std::to_string(i + 1) + ": bad value '" + row[6] + "'");
    }
    if (!(s.value >= 0.0 && s.value <= 1.0))
      throw ValidationError("score table row " + std::to_string(i + 1) + ": value outside [0,1]");
    s.degraded = row[7] == "1";
    s.direction_note = row[8] == "1";
    s.branch = row[9];
    s.external = row[10] == "external";
    const auto key = std::make_tuple(s.dataset, s.left_id, s.right_id);
    s.pair_index = index_of.emplace(key, index_of.size()).first->second;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace simscore

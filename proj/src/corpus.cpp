#include "simscore/corpus.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "simscore/csv.hpp"
#include "simscore/error.hpp"
#include "simscore/io.hpp"
#include "simscore/preprocess.hpp"

namespace simscore {
namespace {

constexpr std::array<const char*, 5> kManifestHeader = {"left_id", "right_id", "label", "level", "dataset"};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string task_of(const std::string& id) {
  const auto slash = id.find_last_of('/');
  return slash == std::string::npos ? std::string{} : id.substr(0, slash);
}

}  // namespace

Corpus::Corpus(std::map<FragmentKey, CodeFragment> fragments, std::vector<PairRecord> pairs)
    : fragments_(std::move(fragments)), pairs_(std::move(pairs)) {
  for (const auto& p : pairs_) {
    for (const auto* id : {&p.left_id, &p.right_id}) {
      if (!fragments_.count({p.dataset, *id}))
        throw LoadError("pair references unknown fragment '" + *id + "' in dataset '" + p.dataset + "'", *id);
    }
    if (p.left_id == p.right_id) throw ValidationError("pair compares fragment '" + p.left_id + "' with itself");
    if (p.level && !p.label) throw ValidationError("level given on a non-plagiarised pair");
    if (p.level && (*p.level < 1 || *p.level > 6)) throw ValidationError("level outside 1..6");
  }
}

const CodeFragment& Corpus::fragment(const std::string& dataset, const std::string& id) const {
  const auto it = fragments_.find({dataset, id});
  if (it == fragments_.end()) throw LoadError("unknown fragment '" + id + "' in dataset '" + dataset + "'", id);
  return it->second;
}

std::vector<std::string> Corpus::datasets() const {
  std::set<std::string> tags;
  for (const auto& p : pairs_) tags.insert(p.dataset);
  for (const auto& [key, f] : fragments_) tags.insert(key.dataset);
  return {tags.begin(), tags.end()};
}

PairCounts Corpus::counts(const std::string& dataset) const {
  PairCounts c;
  for (const auto& p : pairs_) {
    if (!dataset.empty() && p.dataset != dataset) continue;
    if (p.label) {
      ++c.positives;
      if (p.level) ++c.per_level[static_cast<std::size_t>(*p.level - 1)];
    } else {
      ++c.negatives;
    }
  }
  return c;
}

Corpus Corpus::merge(const std::vector<Corpus>& parts) {
  std::map<FragmentKey, CodeFragment> fragments;
  std::vector<PairRecord> pairs;
  std::set<std::string> seen;
  for (const auto& part : parts) {
    for (const auto& tag : part.datasets()) {
      if (!seen.insert(tag).second) throw ValidationError("dataset '" + tag + "' appears in more than one manifest");
    }
    fragments.insert(part.fragments_.begin(), part.fragments_.end());
    pairs.insert(pairs.end(), part.pairs_.begin(), part.pairs_.end());
  }
  return Corpus(std::move(fragments), std::move(pairs));
}

std::vector<PairRecord> parse_manifest(const std::string& text) {
  const auto rows = csv::parse(text);
  std::vector<PairRecord> pairs;
  if (rows.empty()) return pairs;

  const auto& header = rows.front();
  bool header_ok = header.size() == kManifestHeader.size();
  for (std::size_t i = 0; header_ok && i < header.size(); ++i) header_ok = trim(header[i]) == kManifestHeader[i];
  if (!header_ok) throw ValidationError("manifest header must be left_id,right_id,label,level,dataset");

  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::size_t> index;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "manifest row " + std::to_string(r + 1);
    if (row.size() != kManifestHeader.size()) throw ValidationError(where + ": expected 5 fields");
    PairRecord p;
    p.left_id = trim(row[0]);
    p.right_id = trim(row[1]);
    const auto label = trim(row[2]);
    const auto level = trim(row[3]);
    p.dataset = trim(row[4]);
    if (p.left_id.empty() || p.right_id.empty()) throw ValidationError(where + ": empty fragment id");
    if (p.left_id == p.right_id) throw ValidationError(where + ": left_id equals right_id ('" + p.left_id + "')");
    if (label != "0" && label != "1") throw ValidationError(where + ": label must be 0 or 1, got '" + label + "'");
    p.label = label == "1";
    if (!level.empty()) {
      int lv = 0;
      try {
        std::size_t used = 0;
        lv = std::stoi(level, &used);
        if (used != level.size()) lv = 0;
      } catch (const std::exception&) {
        lv = 0;
      }
      if (lv < 1 || lv > 6) throw ValidationError(where + ": level must be in 1..6, got '" + level + "'");
      if (!p.label) throw ValidationError(where + ": level given on a non-plagiarised pair");
      p.level = lv;
    }

    Key key{p.dataset, std::min(p.left_id, p.right_id), std::max(p.left_id, p.right_id)};
    const auto [it, inserted] = index.emplace(key, pairs.size());
    if (!inserted) {
      const auto& prev = pairs[it->second];
      if (prev.label != p.label || prev.level != p.level)
        throw ValidationError(where + ": duplicate pair with conflicting label or level");
      continue;
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

Corpus load_corpus(const std::filesystem::path& root, const std::filesystem::path& manifest) {
  auto pairs = parse_manifest(read_file(manifest));
  std::map<FragmentKey, CodeFragment> fragments;
  for (const auto& p : pairs) {
    for (const auto* id : {&p.left_id, &p.right_id}) {
      FragmentKey key{p.dataset, *id};
      if (fragments.count(key)) continue;
      const auto path = root / *id;
      if (!std::filesystem::is_regular_file(path))
        throw LoadError("missing fragment file for id '" + *id + "' (" + path.string() + ")", *id);
      CodeFragment f;
      f.id = *id;
      f.dataset = p.dataset;
      f.task_id = task_of(*id);
      f.raw_text = read_file(path);
      fragments.emplace(std::move(key), std::move(f));
    }
  }
  return Corpus(std::move(fragments), std::move(pairs));
}

CodeFragment preprocess(CodeFragment f) {
  f.preprocessed_text = preprocess_text(f.raw_text, f.language);
  return f;
}

Corpus preprocess_corpus(const Corpus& c) {
  std::map<FragmentKey, CodeFragment> fragments;
  for (const auto& [key, f] : c.fragments()) fragments.emplace(key, preprocess(f));
  return Corpus(std::move(fragments), c.pairs());
}

TokenStream tokenize(const CodeFragment& f, bool use_preprocessed, const LexerOptions& opts) {
  LexerOptions o = opts;
  o.language = f.language;
  if (!use_preprocessed) return tokenize_text(f.raw_text, o);
  o.comment_tokens = false;
  if (f.preprocessed_text) return tokenize_text(*f.preprocessed_text, o);
  return tokenize_text(preprocess_text(f.raw_text, f.language), o);
}

CorpusStats corpus_stats(const Corpus& c, const LexerOptions& opts) {
  CorpusStats out;
  for (const auto& tag : c.datasets()) {
    DatasetStats s;
    s.dataset = tag;
    double sum_raw = 0.0;
    double sum_pre = 0.0;
    for (const auto& [key, f] : c.fragments()) {
      if (key.dataset != tag) continue;
      const auto raw = tokenize(f, false, opts).size();
      const auto pre = tokenize(f, true, opts).size();
      ++s.fragments;
      sum_raw += static_cast<double>(raw);
      sum_pre += static_cast<double>(pre);
      s.max_tokens = std::max(s.max_tokens, raw);
      s.max_tokens_preprocessed = std::max(s.max_tokens_preprocessed, pre);
      if (raw > 512) ++s.n_over_512;
      if (pre > 512) ++s.n_over_512_preprocessed;
    }
    if (s.fragments > 0) {
      s.avg_tokens = sum_raw / static_cast<double>(s.fragments);
      s.avg_tokens_preprocessed = sum_pre / static_cast<double>(s.fragments);
    }
    if (sum_raw > 0) s.reduction_pct = std::clamp(100.0 * (sum_raw - sum_pre) / sum_raw, 0.0, 100.0);
    out.per_dataset.push_back(std::move(s));
  }
  return out;
}

std::string corpus_stats_csv(const CorpusStats& stats) {
  std::string out =
      "dataset,fragments,avg_tokens,max_tokens,n_over_512,avg_tokens_preprocessed,max_tokens_preprocessed,"
      "n_over_512_preprocessed,reduction_pct\n";
  for (const auto& s : stats.per_dataset) {
    out += csv::join({s.dataset, std::to_string(s.fragments), format_number(s.avg_tokens, 8),
                      std::to_string(s.max_tokens), std::to_string(s.n_over_512),
                      format_number(s.avg_tokens_preprocessed, 8), std::to_string(s.max_tokens_preprocessed),
                      std::to_string(s.n_over_512_preprocessed), format_number(s.reduction_pct, 6)});
    out += '\n';
  }
  return out;
}

}  // namespace simscore

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simscore/lexer.hpp"

namespace simscore {

struct CodeFragment {
  std::string id;       // path relative to the dataset root
  std::string dataset;  // e.g. conplag1, conplag2, irplag
  std::string task_id;  // grouping directory of the id, empty at top level
  std::string raw_text;
  std::optional<std::string> preprocessed_text;
  std::string language = "java";
};

struct PairRecord {
  std::string left_id;
  std::string right_id;
  bool label = false;
  std::optional<int> level;  // 1..6, plagiarised pairs only
  std::string dataset;
};

struct FragmentKey {
  std::string dataset;
  std::string id;
  auto operator<=>(const FragmentKey&) const = default;
};

struct PairCounts {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::array<std::size_t, 6> per_level{};
  std::size_t total() const noexcept { return positives + negatives; }
};

/// Immutable after construction; pairs are validated against the fragments.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::map<FragmentKey, CodeFragment> fragments, std::vector<PairRecord> pairs);

  const std::map<FragmentKey, CodeFragment>& fragments() const noexcept { return fragments_; }
  const std::vector<PairRecord>& pairs() const noexcept { return pairs_; }

  const CodeFragment& fragment(const std::string& dataset, const std::string& id) const;
  const CodeFragment& left(const PairRecord& p) const { return fragment(p.dataset, p.left_id); }
  const CodeFragment& right(const PairRecord& p) const { return fragment(p.dataset, p.right_id); }

  std::vector<std::string> datasets() const;
  /// Empty dataset tag selects all pairs.
  PairCounts counts(const std::string& dataset = {}) const;

  /// Combines corpora with disjoint dataset tags.
  static Corpus merge(const std::vector<Corpus>& parts);

 private:
  std::map<FragmentKey, CodeFragment> fragments_;
  std::vector<PairRecord> pairs_;
};

/// Reads the pairs manifest (`left_id,right_id,label,level,dataset`) and one
/// fragment file per referenced id under `root`. Duplicate unordered pairs are
/// collapsed; conflicting duplicates are a validation error.
Corpus load_corpus(const std::filesystem::path& root, const std::filesystem::path& manifest);

/// Parses manifest text without touching the filesystem.
std::vector<PairRecord> parse_manifest(const std::string& text);

CodeFragment preprocess(CodeFragment f);
Corpus preprocess_corpus(const Corpus& c);

TokenStream tokenize(const CodeFragment& f, bool use_preprocessed, const LexerOptions& opts = {});

struct DatasetStats {
  std::string dataset;
  std::size_t fragments = 0;
  double avg_tokens = 0.0;
  std::size_t max_tokens = 0;
  std::size_t n_over_512 = 0;
  double avg_tokens_preprocessed = 0.0;
  std::size_t max_tokens_preprocessed = 0;
  std::size_t n_over_512_preprocessed = 0;
  double reduction_pct = 0.0;
};

struct CorpusStats {
  std::vector<DatasetStats> per_dataset;
};

/// Token statistics over the unique fragments of each dataset, raw (with
/// comment words) and preprocessed.
CorpusStats corpus_stats(const Corpus& c, const LexerOptions& opts = {});

std::string corpus_stats_csv(const CorpusStats& stats);

}  // namespace simscore

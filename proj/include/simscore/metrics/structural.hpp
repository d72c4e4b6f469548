#pragma once

#include <cstddef>
#include <string>

#include "simscore/lexer.hpp"
#include "simscore/metrics/config.hpp"
#include "simscore/syntax_tree.hpp"

namespace simscore {

/// Token-level edit distance with unit insert/delete/substitute costs.
std::size_t levenshtein(const TokenStream& a, const TokenStream& b);

struct StructuralScore {
  double value = 0.0;
  bool degraded = false;
  std::string branch;  // "TRS", "STS", "TED", or "none"
};

/// max(1 - Δ/max(N1, N2), 0) given a precomputed distance.
double normalized_tree_similarity(double distance, std::size_t nodes_a, std::size_t nodes_b);

/// Shared tree-edit step for RUBY and TSED. Trees larger than the node cap are
/// cut to their first `cap` preorder nodes and the result is flagged degraded.
struct TreeComparison {
  double similarity = 0.0;
  bool truncated = false;
};
TreeComparison compare_trees(const SyntaxTree& a, const SyntaxTree& b, const MetricConfig& cfg);

/// RUBY without its graph tier: tree similarity (TRS) when both trees are
/// available, token-sequence similarity (STS) otherwise.
StructuralScore ruby(const TokenStream& a, const TokenStream& b, const SyntaxTree* tree_a, const SyntaxTree* tree_b,
                     const MetricConfig& cfg = {});
StructuralScore ruby(const TokenStream& a, const TokenStream& b, const TreeComparison* trees);

/// Normalized tree-edit similarity. A failed parse scores 0, degraded.
StructuralScore tsed(const SyntaxTree* tree_a, const SyntaxTree* tree_b, const MetricConfig& cfg = {});
StructuralScore tsed(const TreeComparison* trees);

}  // namespace simscore

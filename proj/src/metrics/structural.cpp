#include "simscore/metrics/structural.hpp"

#include <algorithm>
#include <vector>

#include "simscore/tree_edit_distance.hpp"

namespace simscore {

std::size_t levenshtein(const TokenStream& a, const TokenStream& b) {
  const TokenStream& s = a.size() < b.size() ? a : b;
  const TokenStream& t = a.size() < b.size() ? b : a;
  std::vector<std::size_t> row(s.size() + 1);
  for (std::size_t i = 0; i <= s.size(); ++i) row[i] = i;
  for (std::size_t j = 1; j <= t.size(); ++j) {
    std::size_t diag = row[0];
    row[0] = j;
    for (std::size_t i = 1; i <= s.size(); ++i) {
      const std::size_t up = row[i];
      const std::size_t sub = diag + (s[i - 1].text == t[j - 1].text ? 0 : 1);
      row[i] = std::min({sub, up + 1, row[i - 1] + 1});
      diag = up;
    }
  }
  return row[s.size()];
}

double normalized_tree_similarity(double distance, std::size_t nodes_a, std::size_t nodes_b) {
  const std::size_t n = std::max(nodes_a, nodes_b);
  if (n == 0) return 1.0;
  return std::clamp(1.0 - distance / static_cast<double>(n), 0.0, 1.0);
}

TreeComparison compare_trees(const SyntaxTree& a, const SyntaxTree& b, const MetricConfig& cfg) {
  const std::size_t cap = cfg.node_cap;
  if (cap == 0 || (a.size() <= cap && b.size() <= cap)) {
    return {normalized_tree_similarity(tree_edit_distance(a, b, cfg.edit_costs, cap), a.size(), b.size()), false};
  }
  const SyntaxTree ta = a.size() > cap ? a.truncated(cap) : a;
  const SyntaxTree tb = b.size() > cap ? b.truncated(cap) : b;
  return {normalized_tree_similarity(tree_edit_distance(ta, tb, cfg.edit_costs, cap), ta.size(), tb.size()), true};
}

StructuralScore ruby(const TokenStream& a, const TokenStream& b, const TreeComparison* trees) {
  if (trees) return {trees->similarity, trees->truncated, "TRS"};
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return {1.0, true, "none"};
  const double d = static_cast<double>(levenshtein(a, b));
  return {std::clamp(1.0 - d / static_cast<double>(longest), 0.0, 1.0), false, "STS"};
}

StructuralScore ruby(const TokenStream& a, const TokenStream& b, const SyntaxTree* tree_a, const SyntaxTree* tree_b,
                     const MetricConfig& cfg) {
  if (tree_a && tree_b) {
    const auto cmp = compare_trees(*tree_a, *tree_b, cfg);
    return ruby(a, b, &cmp);
  }
  return ruby(a, b, nullptr);
}

StructuralScore tsed(const TreeComparison* trees) {
  if (!trees) return {0.0, true, "none"};
  return {trees->similarity, trees->truncated, "TED"};
}

StructuralScore tsed(const SyntaxTree* tree_a, const SyntaxTree* tree_b, const MetricConfig& cfg) {
  if (!tree_a || !tree_b) return tsed(nullptr);
  const auto cmp = compare_trees(*tree_a, *tree_b, cfg);
  return tsed(&cmp);
}

}  // namespace simscore

#pragma once

#include <cstddef>

#include "simscore/syntax_tree.hpp"

namespace simscore {

/// Unit costs by default. Renaming a node to its own label is free.
struct EditCostTable {
  double insert = 1.0;
  double remove = 1.0;
  double rename = 1.0;
};

inline constexpr std::size_t kDefaultNodeCap = 3000;

/// Exact ordered-tree edit distance (Zhang-Shasha) over node kinds. Throws
/// CapacityError when either tree exceeds `node_cap` nodes (0 = no cap) and
/// ArgumentError on negative costs.
double tree_edit_distance(const SyntaxTree& a, const SyntaxTree& b, const EditCostTable& costs = {},
                          std::size_t node_cap = kDefaultNodeCap);

}  // namespace simscore

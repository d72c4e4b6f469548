#pragma once

#include <cstddef>
#include <string>

#include "simscore/multiset.hpp"
#include "simscore/syntax_tree.hpp"

namespace simscore {

/// Canonical encoding of the subtree at `node`, cut off `max_depth` levels
/// down. A leaf, or any node at the last level, encodes as its bare kind;
/// otherwise `(kind child1 child2 ...)`.
std::string subtree_encoding(const SyntaxTree& tree, std::size_t node, int max_depth);

/// One encoding per node; throws ArgumentError when max_depth < 1.
StringMultiset subtree_multiset(const SyntaxTree& tree, int max_depth = 3);

}  // namespace simscore

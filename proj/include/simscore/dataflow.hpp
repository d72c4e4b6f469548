#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simscore/multiset.hpp"
#include "simscore/syntax_tree.hpp"

namespace simscore {

/// Def-use relations of one fragment. Variables are renamed `var_0`, `var_1`,
/// ... in order of first occurrence, so consistent identifier renaming leaves
/// the graph unchanged. Two edge relations are recorded:
///   comesFrom(v; v)          a read of v linked to its in-scope definition
///   computedFrom(v; s1,...)  a definition of v computed from the variables s_i
class DataFlowGraph {
 public:
  const StringMultiset& edges() const noexcept { return edges_; }
  std::size_t size() const { return multiset_size(edges_); }
  bool empty() const noexcept { return edges_.empty(); }

  void add_comes_from(const std::string& use, const std::string& def);
  void add_computed_from(const std::string& target, std::vector<std::string> sources);

 private:
  StringMultiset edges_;
};

/// Intraprocedural single-pass scoping walk: declarations, parameters and
/// assignments define; reads of declared names use.
DataFlowGraph dataflow_graph(const SyntaxTree& tree);

}  // namespace simscore

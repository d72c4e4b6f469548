#include "simscore/subtree.hpp"

#include "simscore/error.hpp"

namespace simscore {
namespace {

void encode(const SyntaxTree& tree, std::size_t node, int depth, std::string& out) {
  const auto& n = tree.node(node);
  if (depth <= 1 || n.children.empty()) {
    out += n.kind;
    return;
  }
  out.push_back('(');
  out += n.kind;
  for (auto c : n.children) {
    out.push_back(' ');
    encode(tree, c, depth - 1, out);
  }
  out.push_back(')');
}

}  // namespace

std::string subtree_encoding(const SyntaxTree& tree, std::size_t node, int max_depth) {
  if (max_depth < 1) throw ArgumentError("subtree depth must be >= 1");
  std::string out;
  encode(tree, node, max_depth, out);
  return out;
}

StringMultiset subtree_multiset(const SyntaxTree& tree, int max_depth) {
  if (max_depth < 1) throw ArgumentError("subtree depth must be >= 1");
  StringMultiset out;
  std::string buf;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    buf.clear();
    encode(tree, i, max_depth, buf);
    ++out[buf];
  }
  return out;
}

}  // namespace simscore

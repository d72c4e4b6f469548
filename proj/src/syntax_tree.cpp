#include "simscore/syntax_tree.hpp"

#include <functional>

#include "simscore/error.hpp"

namespace simscore {

std::size_t SyntaxTree::add_node(std::string kind, std::size_t parent, std::string text, bool error) {
  const std::size_t id = nodes_.size();
  if (parent == npos && id != 0) throw ArgumentError("only the first node may be a root");
  if (parent != npos && parent >= id) throw ArgumentError("parent must precede child");
  SyntaxNode n;
  n.kind = std::move(kind);
  n.text = std::move(text);
  n.parent = parent;
  n.error = error;
  if (error) ++error_nodes_;
  nodes_.push_back(std::move(n));
  if (parent != npos) nodes_[parent].children.push_back(id);
  return id;
}

std::size_t SyntaxTree::subtree_size(std::size_t i) const {
  // Preorder: the subtree ends at its rightmost leaf.
  std::size_t last = i;
  while (!nodes_[last].children.empty()) last = nodes_[last].children.back();
  return last - i + 1;
}

SyntaxTree SyntaxTree::truncated(std::size_t max_nodes) const {
  SyntaxTree out;
  const std::size_t keep = std::min(max_nodes, nodes_.size());
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& n = nodes_[i];
    out.add_node(n.kind, n.parent, n.text, n.error);
  }
  out.degenerate_ = degenerate_;
  out.error_tokens_ = error_tokens_;
  out.token_count_ = token_count_;
  return out;
}

SyntaxTree SyntaxTree::from_bracket(std::string_view text) {
  SyntaxTree t;
  std::vector<std::size_t> stack;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '{') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '{' && text[j] != '}') ++j;
      if (stack.empty() && !t.empty()) throw ArgumentError("bracket tree has more than one root");
      const auto id = t.add_node(std::string(text.substr(i + 1, j - i - 1)), stack.empty() ? npos : stack.back());
      stack.push_back(id);
      i = j;
    } else if (c == '}') {
      if (stack.empty()) throw ArgumentError("unbalanced '}' in bracket tree");
      stack.pop_back();
      ++i;
    } else if (c == ' ' || c == '\n' || c == '\t') {
      ++i;
    } else {
      throw ArgumentError("unexpected character in bracket tree");
    }
  }
  if (!stack.empty()) throw ArgumentError("unbalanced '{' in bracket tree");
  return t;
}

std::string SyntaxTree::to_bracket() const {
  std::string out;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    out.push_back('{');
    out += nodes_[i].kind;
    for (auto c : nodes_[i].children) rec(c);
    out.push_back('}');
  };
  if (!empty()) rec(0);
  return out;
}

std::string SyntaxTree::to_sexp() const {
  std::string out;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    const auto& n = nodes_[i];
    if (n.children.empty()) {
      out += n.kind;
      return;
    }
    out += "(" + n.kind;
    for (auto c : n.children) {
      out.push_back(' ');
      rec(c);
    }
    out.push_back(')');
  };
  if (!empty()) rec(0);
  return out;
}

}  // namespace simscore

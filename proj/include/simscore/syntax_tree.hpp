#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace simscore {

struct SyntaxNode {
  std::string kind;  // grammar kind, or the token text for anonymous tokens
  std::string text;  // token text, leaves only
  std::vector<std::size_t> children;
  std::size_t parent = std::numeric_limits<std::size_t>::max();
  bool error = false;  // error-recovery node
};

/// Rooted ordered tree stored as an arena in preorder: node 0 is the root and
/// every node appears after its parent and after its left siblings' subtrees.
class SyntaxTree {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// Appends a node; `parent == npos` only for the first node. Callers must
  /// add nodes in preorder.
  std::size_t add_node(std::string kind, std::size_t parent, std::string text = {}, bool error = false);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  const SyntaxNode& node(std::size_t i) const { return nodes_[i]; }
  const SyntaxNode& root() const { return nodes_.front(); }
  const std::vector<SyntaxNode>& nodes() const noexcept { return nodes_; }

  /// Number of nodes in the subtree rooted at `i` (preorder makes it contiguous).
  std::size_t subtree_size(std::size_t i) const;

  bool degenerate() const noexcept { return degenerate_; }
  void set_degenerate(bool v) noexcept { degenerate_ = v; }
  bool has_errors() const noexcept { return error_nodes_ > 0; }
  std::size_t error_nodes() const noexcept { return error_nodes_; }
  std::size_t error_tokens() const noexcept { return error_tokens_; }
  void set_error_tokens(std::size_t n) noexcept { error_tokens_ = n; }
  std::size_t token_count() const noexcept { return token_count_; }
  void set_token_count(std::size_t n) noexcept { token_count_ = n; }

  /// First `max_nodes` nodes in preorder; ancestors of every kept node are kept.
  SyntaxTree truncated(std::size_t max_nodes) const;

  /// Bracket notation as used by tree edit distance tools: `{a{b}{c}}`.
  /// Labels become node kinds. Throws ArgumentError on malformed input.
  static SyntaxTree from_bracket(std::string_view text);
  std::string to_bracket() const;

  /// Kinds only, nested parentheses; handy in test failure output.
  std::string to_sexp() const;

 private:
  std::vector<SyntaxNode> nodes_;
  std::size_t error_nodes_ = 0;
  std::size_t error_tokens_ = 0;
  std::size_t token_count_ = 0;
  bool degenerate_ = false;
};

}  // namespace simscore

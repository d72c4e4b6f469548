#include "simscore/dataflow.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace simscore {

void DataFlowGraph::add_comes_from(const std::string& use, const std::string& def) {
  ++edges_["comesFrom(" + use + ";" + def + ")"];
}

void DataFlowGraph::add_computed_from(const std::string& target, std::vector<std::string> sources) {
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::string key = "computedFrom(" + target + ";";
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (i) key.push_back(',');
    key += sources[i];
  }
  key.push_back(')');
  ++edges_[key];
}

namespace {

const std::unordered_set<std::string>& scope_kinds() {
  static const std::unordered_set<std::string> kinds = {
      "block",          "constructor_body",        "class_body",       "interface_body",
      "enum_body",      "annotation_type_body",    "method_declaration", "constructor_declaration",
      "lambda_expression", "for_statement",        "enhanced_for_statement", "catch_clause",
      "try_with_resources_statement", "switch_block", "switch_block_statement_group",
      "compact_constructor_declaration", "record_declaration"};
  return kinds;
}

// Declarations whose direct identifier children are names, not reads.
const std::unordered_set<std::string>& naming_kinds() {
  static const std::unordered_set<std::string> kinds = {
      "class_declaration", "interface_declaration", "enum_declaration", "record_declaration",
      "annotation_type_declaration", "method_declaration", "constructor_declaration",
      "compact_constructor_declaration", "enum_constant", "labeled_statement", "break_statement",
      "continue_statement", "element_value_pair", "scoped_identifier", "package_declaration",
      "import_declaration", "marker_annotation", "annotation"};
  return kinds;
}

class Walker {
 public:
  explicit Walker(const SyntaxTree& t) : tree_(t) {}

  DataFlowGraph run() {
    if (!tree_.empty()) {
      push();
      walk(0, nullptr);
      pop();
    }
    return std::move(graph_);
  }

 private:
  using Reads = std::vector<std::string>;

  const SyntaxNode& n(std::size_t i) const { return tree_.node(i); }

  void push() { scopes_.emplace_back(); }
  void pop() { scopes_.pop_back(); }

  bool declared(const std::string& name) const {
    return std::any_of(scopes_.rbegin(), scopes_.rend(), [&](const auto& s) { return s.count(name) > 0; });
  }

  const std::string& canon(const std::string& name) {
    auto it = canonical_.find(name);
    if (it == canonical_.end()) it = canonical_.emplace(name, "var_" + std::to_string(canonical_.size())).first;
    return it->second;
  }

  void declare(const std::string& name) {
    canon(name);
    scopes_.back().insert(name);
  }

  void read(const std::string& name, Reads* reads) {
    if (!declared(name)) return;
    const auto& v = canon(name);
    graph_.add_comes_from(v, v);
    if (reads) reads->push_back(v);
  }

  void define(const std::string& name, Reads sources) { graph_.add_computed_from(canon(name), std::move(sources)); }

  // Name of the declared variable a simple assignment target refers to.
  const std::string* target_name(std::size_t i) const {
    const auto& node = n(i);
    if (node.kind == "identifier") return declared(node.text) ? &node.text : nullptr;
    if (node.kind == "array_access" && !node.children.empty()) return target_name(node.children.front());
    if (node.kind == "parenthesized_expression" && node.children.size() == 3) return target_name(node.children[1]);
    return nullptr;
  }

  void walk_children(std::size_t i, Reads* reads) {
    for (auto c : n(i).children) walk(c, reads);
  }

  void walk(std::size_t i, Reads* reads) {
    const auto& node = n(i);
    const std::string& k = node.kind;

    if (k == "identifier") {
      read(node.text, reads);
      return;
    }
    if (node.children.empty()) return;

    if (k == "variable_declarator" || k == "resource") {
      // [modifiers] [type] identifier [dims] [= value]
      const std::string* name = nullptr;
      Reads value_reads;
      bool has_value = false;
      for (auto c : node.children) {
        const auto& ck = n(c).kind;
        if (!name && ck == "identifier" && !has_value) {
          name = &n(c).text;
        } else if (ck == "=") {
          has_value = true;
        } else if (has_value) {
          walk(c, &value_reads);
        } else if (k == "resource" && !name) {
          walk(c, reads);  // an expression resource
        }
      }
      if (name) {
        declare(*name);
        if (has_value) define(*name, value_reads);
      }
      return;
    }
    if (k == "formal_parameter" || k == "spread_parameter" || k == "catch_formal_parameter") {
      for (auto c : node.children)
        if (n(c).kind == "identifier") declare(n(c).text);
      return;
    }
    if (k == "inferred_parameters") {
      for (auto c : node.children)
        if (n(c).kind == "identifier") declare(n(c).text);
      return;
    }
    if (k == "lambda_expression") {
      push();
      const auto first = node.children.front();
      if (n(first).kind == "identifier") declare(n(first).text);
      for (std::size_t idx = n(first).kind == "identifier" ? 1 : 0; idx < node.children.size(); ++idx)
        walk(node.children[idx], nullptr);
      pop();
      return;
    }
    if (k == "enhanced_for_statement") {
      push();
      // for ( [modifiers] type name : iterable ) body
      const std::string* name = nullptr;
      Reads iter_reads;
      enum { kHead, kIterable, kBody } part = kHead;
      for (auto c : node.children) {
        const auto& ck = n(c).kind;
        if (part == kHead) {
          if (ck == ":") part = kIterable;
          else if (ck == "identifier") name = &n(c).text;
        } else if (part == kIterable) {
          if (ck == ")") {
            part = kBody;
            if (name) {
              declare(*name);
              define(*name, iter_reads);
            }
          } else {
            walk(c, &iter_reads);
          }
        } else {
          walk(c, nullptr);
        }
      }
      pop();
      return;
    }
    if (k == "assignment_expression" && node.children.size() == 3) {
      const auto lhs = node.children[0];
      const auto& op = n(node.children[1]).kind;
      Reads rhs_reads;
      walk(node.children[2], &rhs_reads);
      const std::string* target = target_name(lhs);
      if (n(lhs).kind == "array_access") {
        // index expressions feed the element write
        for (std::size_t idx = 1; idx < n(lhs).children.size(); ++idx) walk(n(lhs).children[idx], &rhs_reads);
      } else if (!target) {
        walk(lhs, reads);
      }
      if (target) {
        if (op != "=") read(*target, &rhs_reads);
        define(*target, rhs_reads);
        if (reads) reads->push_back(canon(*target));
      }
      if (reads) reads->insert(reads->end(), rhs_reads.begin(), rhs_reads.end());
      return;
    }
    if (k == "update_expression") {
      for (auto c : node.children) {
        if (n(c).kind == "++" || n(c).kind == "--") continue;
        const std::string* target = target_name(c);
        if (target) {
          Reads src;
          read(*target, &src);
          define(*target, src);
          if (reads) reads->push_back(canon(*target));
        } else {
          walk(c, reads);
        }
      }
      return;
    }
    if (k == "method_invocation") {
      // [object .] [type_arguments] name argument_list: skip the name
      const auto& ch = node.children;
      for (std::size_t idx = 0; idx < ch.size(); ++idx) {
        const bool is_name = n(ch[idx]).kind == "identifier" && idx + 1 < ch.size() &&
                             n(ch[idx + 1]).kind == "argument_list";
        if (!is_name) walk(ch[idx], reads);
      }
      return;
    }
    if (k == "field_access" || k == "method_reference" || k == "class_literal") {
      walk(node.children.front(), reads);
      return;
    }
    if (naming_kinds().count(k)) {
      const bool scoped = scope_kinds().count(k) > 0;
      if (scoped) push();
      for (auto c : node.children)
        if (n(c).kind != "identifier") walk(c, nullptr);
      if (scoped) pop();
      return;
    }
    if (scope_kinds().count(k)) {
      push();
      walk_children(i, reads);
      pop();
      return;
    }
    walk_children(i, reads);
  }

  const SyntaxTree& tree_;
  DataFlowGraph graph_;
  std::vector<std::unordered_set<std::string>> scopes_;
  std::unordered_map<std::string, std::string> canonical_;
};

}  // namespace

DataFlowGraph dataflow_graph(const SyntaxTree& tree) { return Walker(tree).run(); }

}  // namespace simscore

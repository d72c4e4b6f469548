#include "simscore/parser.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <initializer_list>

#include "simscore/error.hpp"
#include "simscore/lexer.hpp"
#include "simscore/preprocess.hpp"

namespace simscore {
namespace {

// Parser token. Lexer tokens that start with '>' are split into single
// characters so `List<List<T>>` closes two type-argument lists; `glued` links
// the pieces so expressions can reassemble `>>`, `>>=` and friends.
struct PTok {
  std::string text;
  TokenKind kind = TokenKind::kOther;
  bool glued = false;
};

struct PNode {
  std::string kind;
  std::string text;
  std::vector<PNode> children;
  bool error = false;
  bool token = false;
};

struct SyntaxErr {};

PNode named(std::string kind, std::initializer_list<PNode> children = {}) {
  PNode n;
  n.kind = std::move(kind);
  n.children.assign(children.begin(), children.end());
  return n;
}

bool is_primitive(std::string_view s) {
  static constexpr std::array<std::string_view, 9> kPrim = {"int",    "long",  "short",   "byte", "char",
                                                            "float",  "double", "boolean", "void"};
  return std::find(kPrim.begin(), kPrim.end(), s) != kPrim.end();
}

std::string primitive_kind(std::string_view s) {
  if (s == "float" || s == "double") return "floating_point_type";
  if (s == "boolean") return "boolean_type";
  if (s == "void") return "void_type";
  return "integral_type";
}

std::string literal_kind(std::string_view s) {
  if (s == "true" || s == "false") return std::string(s);
  if (s == "null") return "null_literal";
  if (s.starts_with("\"\"\"")) return "text_block";
  if (s.starts_with('"')) return "string_literal";
  if (s.starts_with('\'')) return "character_literal";
  if (s.size() > 1 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    return s.find_first_of(".pP") == std::string_view::npos ? "hex_integer_literal" : "hex_floating_point_literal";
  }
  if (s.size() > 1 && s[0] == '0' && (s[1] == 'b' || s[1] == 'B')) return "binary_integer_literal";
  const char last = s.back();
  if (s.find_first_of(".eE") != std::string_view::npos || last == 'f' || last == 'F' || last == 'd' || last == 'D')
    return "decimal_floating_point_literal";
  if (s.size() > 1 && s[0] == '0' && s[1] != 'l' && s[1] != 'L') return "octal_integer_literal";
  return "decimal_integer_literal";
}

int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

bool is_assignment_op(std::string_view op) {
  static constexpr std::array<std::string_view, 12> kOps = {"=",  "+=", "-=", "*=",  "/=",  "%=",
                                                            "&=", "|=", "^=", "<<=", ">>=", ">>>="};
  return std::find(kOps.begin(), kOps.end(), op) != kOps.end();
}

bool is_modifier(std::string_view s) {
  static constexpr std::array<std::string_view, 11> kMods = {"public",   "protected",    "private",   "static",
                                                             "final",    "abstract",     "native",    "synchronized",
                                                             "transient", "volatile",    "strictfp"};
  return std::find(kMods.begin(), kMods.end(), s) != kMods.end();
}

class JavaParser {
 public:
  JavaParser(std::vector<PTok> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {
    eof_.text = "";
    eof_.kind = TokenKind::kOther;
  }

  PNode parse_program() {
    PNode root = named("program");
    while (!eof()) {
      const std::size_t start = pos_;
      try {
        root.children.push_back(parse_top_item());
      } catch (const SyntaxErr&) {
        root.children.push_back(recover_statement(start));
      }
    }
    return root;
  }

 private:
  // ---- token access -------------------------------------------------------

  const PTok& tok(std::size_t k = 0) const { return pos_ + k < toks_.size() ? toks_[pos_ + k] : eof_; }
  const PTok& tok_at(std::size_t p) const { return p < toks_.size() ? toks_[p] : eof_; }
  bool eof() const { return pos_ >= toks_.size(); }

  static bool is_symbol(const PTok& t, std::string_view s) {
    return t.text == s && t.kind != TokenKind::kLiteral && t.kind != TokenKind::kIdentifier &&
           t.kind != TokenKind::kOther;
  }
  bool at(std::string_view s, std::size_t k = 0) const { return is_symbol(tok(k), s); }
  bool at_p(std::size_t p, std::string_view s) const { return is_symbol(tok_at(p), s); }
  bool ident(std::size_t k = 0) const { return tok(k).kind == TokenKind::kIdentifier; }
  bool ident_p(std::size_t p) const { return tok_at(p).kind == TokenKind::kIdentifier; }
  bool at_word(std::string_view w, std::size_t k = 0) const { return ident(k) && tok(k).text == w; }

  [[noreturn]] void fail() const { throw SyntaxErr{}; }

  PNode leaf(std::string kind = {}) {
    if (eof()) fail();
    const PTok& t = toks_[pos_++];
    PNode n;
    n.token = true;
    n.text = t.text;
    if (!kind.empty()) {
      n.kind = std::move(kind);
    } else if (t.kind == TokenKind::kIdentifier) {
      n.kind = "identifier";
    } else if (t.kind == TokenKind::kLiteral) {
      n.kind = literal_kind(t.text);
    } else {
      n.kind = t.text;
    }
    return n;
  }

  PNode expect(std::string_view s) {
    if (!at(s)) fail();
    return leaf();
  }

  PNode expect_ident(std::string kind = "identifier") {
    if (!ident()) fail();
    return leaf(std::move(kind));
  }

  // Operator text reassembled from glued pieces and the number of pieces.
  std::string compound(std::size_t& pieces) const {
    std::string s = tok().text;
    pieces = 1;
    while (tok(pieces - 1).glued && pos_ + pieces < toks_.size()) {
      s += tok(pieces).text;
      ++pieces;
    }
    return s;
  }

  PNode take_compound(const std::string& text, std::size_t pieces) {
    pos_ += pieces;
    PNode n;
    n.token = true;
    n.kind = text;
    n.text = text;
    return n;
  }

  struct DepthGuard {
    explicit DepthGuard(JavaParser& p) : parser(p) {
      if (parser.depth_ >= parser.opts_.max_nesting) throw SyntaxErr{};
      ++parser.depth_;
    }
    ~DepthGuard() { --parser.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
    JavaParser& parser;
  };

  // ---- recovery -----------------------------------------------------------

  PNode error_node() {
    PNode e = named("ERROR");
    e.error = true;
    return e;
  }

  // Skips a broken statement: through the next ';' at nesting depth 0, up to
  // (not including) an unmatched '}', or through a balanced '{...}' block.
  PNode recover_statement(std::size_t start) {
    pos_ = start;
    PNode err = error_node();
    int depth = 0;
    while (!eof()) {
      const PTok& t = tok();
      const bool punct = t.kind == TokenKind::kPunctuation;
      if (depth == 0 && punct && t.text == "}") {
        if (err.children.empty()) err.children.push_back(leaf());
        break;
      }
      bool stop = false;
      if (punct && (t.text == "{" || t.text == "(" || t.text == "[")) {
        ++depth;
      } else if (punct && (t.text == "}" || t.text == ")" || t.text == "]")) {
        if (depth > 0) --depth;
        stop = depth == 0 && t.text == "}";
      } else if (punct && t.text == ";" && depth == 0) {
        stop = true;
      }
      err.children.push_back(leaf());
      if (stop) break;
    }
    return err;
  }

  // Skips a broken expression up to, not including, a depth-0 token in `stops`.
  PNode recover_until(std::size_t start, std::initializer_list<std::string_view> stops) {
    pos_ = start;
    PNode err = error_node();
    int depth = 0;
    while (!eof()) {
      const PTok& t = tok();
      const bool punct = t.kind == TokenKind::kPunctuation;
      if (depth == 0 && t.kind != TokenKind::kLiteral &&
          std::find(stops.begin(), stops.end(), t.text) != stops.end())
        break;
      if (punct && (t.text == "{" || t.text == "(" || t.text == "[")) {
        ++depth;
      } else if (punct && (t.text == "}" || t.text == ")" || t.text == "]")) {
        if (depth == 0) break;
        --depth;
      }
      err.children.push_back(leaf());
    }
    return err;
  }

  // ---- lookahead ----------------------------------------------------------

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t skip_balanced(std::size_t p, std::string_view open, std::string_view close) const {
    if (!at_p(p, open)) return kNone;
    int depth = 0;
    for (; p < toks_.size(); ++p) {
      if (at_p(p, open)) ++depth;
      if (at_p(p, close) && --depth == 0) return p + 1;
    }
    return kNone;
  }

  std::size_t skip_qualified(std::size_t p) const {
    if (!ident_p(p)) return kNone;
    ++p;
    while (at_p(p, ".") && ident_p(p + 1)) p += 2;
    return p;
  }

  std::size_t skip_annotation(std::size_t p) const {
    if (!at_p(p, "@") || at_p(p + 1, "interface")) return kNone;
    p = skip_qualified(p + 1);
    if (p == kNone) return kNone;
    if (at_p(p, "(")) p = skip_balanced(p, "(", ")");
    return p;
  }

  bool modifier_at(std::size_t p) const {
    const PTok& t = tok_at(p);
    if (t.kind == TokenKind::kKeyword && is_modifier(t.text)) {
      return !(t.text == "synchronized" && at_p(p + 1, "("));
    }
    if (at_p(p, "default")) return !at_p(p + 1, ":") && !at_p(p + 1, "->");
    if (t.kind == TokenKind::kIdentifier && t.text == "sealed") return !at_p(p + 1, "=") && ident_p(p + 1);
    if (t.kind == TokenKind::kIdentifier && t.text == "non" && at_p(p + 1, "-") && tok_at(p + 2).text == "sealed")
      return true;
    return false;
  }

  std::size_t skip_modifiers(std::size_t p) const {
    while (true) {
      if (at_p(p, "@") && !at_p(p + 1, "interface")) {
        const auto q = skip_annotation(p);
        if (q == kNone) return p;
        p = q;
      } else if (modifier_at(p)) {
        p += tok_at(p).text == "non" ? 3 : 1;
      } else {
        return p;
      }
    }
  }

  std::size_t skip_type_args(std::size_t p) const {
    if (!at_p(p, "<")) return kNone;
    ++p;
    if (at_p(p, ">")) return p + 1;
    while (true) {
      while (at_p(p, "@")) {
        p = skip_annotation(p);
        if (p == kNone) return kNone;
      }
      if (at_p(p, "?")) {
        ++p;
        if (at_p(p, "extends") || at_p(p, "super")) p = skip_type(p + 1);
      } else {
        p = skip_type(p);
      }
      if (p == kNone) return kNone;
      if (at_p(p, ",")) {
        ++p;
        continue;
      }
      if (at_p(p, ">")) return p + 1;
      return kNone;
    }
  }

  std::size_t skip_type(std::size_t p) const {
    while (at_p(p, "@")) {
      p = skip_annotation(p);
      if (p == kNone) return kNone;
    }
    const PTok& t = tok_at(p);
    if (t.kind == TokenKind::kKeyword && is_primitive(t.text)) {
      ++p;
    } else if (t.kind == TokenKind::kIdentifier) {
      ++p;
      if (at_p(p, "<")) p = skip_type_args(p);
      while (p != kNone && at_p(p, ".") && ident_p(p + 1)) {
        p += 2;
        if (at_p(p, "<")) p = skip_type_args(p);
      }
      if (p == kNone) return kNone;
    } else {
      return kNone;
    }
    while (at_p(p, "[") && at_p(p + 1, "]")) p += 2;
    return p;
  }

  bool type_decl_at(std::size_t p) const {
    if (at_p(p, "class") || at_p(p, "interface") || at_p(p, "enum")) return true;
    if (at_p(p, "@") && at_p(p + 1, "interface")) return true;
    return ident_p(p) && tok_at(p).text == "record" && ident_p(p + 1) && (at_p(p + 2, "(") || at_p(p + 2, "<"));
  }

  bool local_var_decl_at(std::size_t p0) const {
    const auto p = skip_modifiers(p0);
    const auto q = skip_type(p);
    if (q == kNone || !ident_p(q)) return false;
    return at_p(q + 1, "=") || at_p(q + 1, ";") || at_p(q + 1, ",") || at_p(q + 1, "[") || at_p(q + 1, ":");
  }

  bool method_decl_at(std::size_t p) const {
    p = skip_modifiers(p);
    if (at_p(p, "<")) {
      p = skip_type_args(p);
      if (p == kNone) return false;
    }
    const auto q = skip_type(p);
    return q != kNone && ident_p(q) && at_p(q + 1, "(");
  }

  bool lambda_start() const {
    if (ident() && at("->", 1)) return true;
    if (!at("(")) return false;
    const auto close = skip_balanced(pos_, "(", ")");
    return close != kNone && at_p(close, "->");
  }

  bool cast_start() const {
    if (!at("(")) return false;
    std::size_t p = pos_ + 1;
    const PTok& first = tok_at(p);
    if (first.kind == TokenKind::kKeyword && is_primitive(first.text)) {
      const auto q = skip_type(p);
      return q != kNone && at_p(q, ")");
    }
    auto q = skip_type(p);
    if (q == kNone) return false;
    while (at_p(q, "&")) {
      q = skip_type(q + 1);
      if (q == kNone) return false;
    }
    if (!at_p(q, ")")) return false;
    const PTok& next = tok_at(q + 1);
    switch (next.kind) {
      case TokenKind::kIdentifier:
      case TokenKind::kLiteral:
        return true;
      case TokenKind::kKeyword:
        return next.text == "this" || next.text == "super" || next.text == "new" || next.text == "switch" ||
               is_primitive(next.text);
      case TokenKind::kPunctuation:
        return next.text == "(";
      case TokenKind::kOperator:
        return next.text == "!" || next.text == "~";
      default:
        return false;
    }
  }

  // ---- declarations -------------------------------------------------------

  PNode parse_top_item() {
    if (at("package")) {
      PNode n = named("package_declaration");
      n.children.push_back(leaf());
      while (at("@")) n.children.push_back(parse_annotation());
      n.children.push_back(parse_qualified_name());
      n.children.push_back(expect(";"));
      return n;
    }
    if (at("import")) {
      PNode n = named("import_declaration");
      n.children.push_back(leaf());
      if (at("static")) n.children.push_back(leaf());
      n.children.push_back(parse_qualified_name());
      if (at(".") && at("*", 1)) {
        n.children.push_back(leaf());
        n.children.push_back(leaf("asterisk"));
      }
      n.children.push_back(expect(";"));
      return n;
    }
    if (at(";")) return leaf();
    const auto p = skip_modifiers(pos_);
    if (type_decl_at(p)) return parse_type_declaration();
    if (method_decl_at(pos_)) return parse_member_after_modifiers(false);
    return parse_statement();
  }

  PNode parse_qualified_name() {
    PNode n = expect_ident();
    while (at(".") && ident(1)) {
      PNode s = named("scoped_identifier");
      s.children.push_back(std::move(n));
      s.children.push_back(leaf());
      s.children.push_back(leaf());
      n = std::move(s);
    }
    return n;
  }

  PNode parse_annotation() {
    PNode at_sign = expect("@");
    PNode name = parse_qualified_name();
    if (!at("(")) return named("marker_annotation", {std::move(at_sign), std::move(name)});
    PNode args = named("annotation_argument_list");
    args.children.push_back(leaf());
    if (!at(")")) {
      while (true) {
        if (ident() && at("=", 1)) {
          PNode pair = named("element_value_pair");
          pair.children.push_back(leaf());
          pair.children.push_back(leaf());
          pair.children.push_back(parse_element_value());
          args.children.push_back(std::move(pair));
        } else {
          args.children.push_back(parse_element_value());
        }
        if (!at(",")) break;
        args.children.push_back(leaf());
      }
    }
    args.children.push_back(expect(")"));
    return named("annotation", {std::move(at_sign), std::move(name), std::move(args)});
  }

  PNode parse_element_value() {
    if (at("@")) return parse_annotation();
    if (at("{")) {
      PNode n = named("element_value_array_initializer");
      n.children.push_back(leaf());
      while (!at("}")) {
        n.children.push_back(parse_element_value());
        if (!at(",")) break;
        n.children.push_back(leaf());
      }
      n.children.push_back(expect("}"));
      return n;
    }
    return parse_ternary();
  }

  // Appends a `modifiers` node when any modifier or annotation is present.
  void parse_modifiers(PNode& parent) {
    PNode mods = named("modifiers");
    while (true) {
      if (at("@") && !at("interface", 1)) {
        mods.children.push_back(parse_annotation());
      } else if (modifier_at(pos_)) {
        if (tok().text == "non") {
          pos_ += 3;
          PNode n;
          n.token = true;
          n.kind = n.text = "non-sealed";
          mods.children.push_back(std::move(n));
        } else {
          mods.children.push_back(leaf(tok().text));
        }
      } else {
        break;
      }
    }
    if (!mods.children.empty()) parent.children.push_back(std::move(mods));
  }

  PNode parse_type_declaration() {
    PNode n;
    parse_modifiers(n);
    if (at("class")) {
      n.kind = "class_declaration";
      n.children.push_back(leaf());
      n.children.push_back(expect_ident());
      if (at("<")) n.children.push_back(parse_type_parameters());
      if (at("extends")) n.children.push_back(named("superclass", {leaf(), parse_type()}));
      if (at("implements")) n.children.push_back(named("super_interfaces", {leaf(), parse_type_list()}));
      if (at_word("permits")) n.children.push_back(named("permits", {leaf("permits"), parse_type_list()}));
      n.children.push_back(parse_class_body("class_body"));
    } else if (at("interface")) {
      n.kind = "interface_declaration";
      n.children.push_back(leaf());
      n.children.push_back(expect_ident());
      if (at("<")) n.children.push_back(parse_type_parameters());
      if (at("extends")) n.children.push_back(named("extends_interfaces", {leaf(), parse_type_list()}));
      if (at_word("permits")) n.children.push_back(named("permits", {leaf("permits"), parse_type_list()}));
      n.children.push_back(parse_class_body("interface_body"));
    } else if (at("enum")) {
      n.kind = "enum_declaration";
      n.children.push_back(leaf());
      n.children.push_back(expect_ident());
      if (at("implements")) n.children.push_back(named("super_interfaces", {leaf(), parse_type_list()}));
      n.children.push_back(parse_enum_body());
    } else if (at("@") && at("interface", 1)) {
      n.kind = "annotation_type_declaration";
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(expect_ident());
      n.children.push_back(parse_class_body("annotation_type_body"));
    } else if (at_word("record")) {
      n.kind = "record_declaration";
      n.children.push_back(leaf("record"));
      n.children.push_back(expect_ident());
      if (at("<")) n.children.push_back(parse_type_parameters());
      n.children.push_back(parse_formal_parameters());
      if (at("implements")) n.children.push_back(named("super_interfaces", {leaf(), parse_type_list()}));
      n.children.push_back(parse_class_body("class_body"));
    } else {
      fail();
    }
    return n;
  }

  PNode parse_type_list() {
    PNode n = named("type_list");
    n.children.push_back(parse_type());
    while (at(",")) {
      n.children.push_back(leaf());
      n.children.push_back(parse_type());
    }
    return n;
  }

  PNode parse_type_parameters() {
    PNode n = named("type_parameters");
    n.children.push_back(expect("<"));
    while (true) {
      PNode tp = named("type_parameter");
      while (at("@")) tp.children.push_back(parse_annotation());
      tp.children.push_back(expect_ident("type_identifier"));
      if (at("extends")) {
        PNode bound = named("type_bound");
        bound.children.push_back(leaf());
        bound.children.push_back(parse_type());
        while (at("&")) {
          bound.children.push_back(leaf());
          bound.children.push_back(parse_type());
        }
        tp.children.push_back(std::move(bound));
      }
      n.children.push_back(std::move(tp));
      if (!at(",")) break;
      n.children.push_back(leaf());
    }
    n.children.push_back(expect(">"));
    return n;
  }

  PNode parse_class_body(std::string kind) {
    PNode body = named(std::move(kind));
    body.children.push_back(expect("{"));
    parse_members_until_close(body);
    return body;
  }

  void parse_members_until_close(PNode& body) {
    while (!at("}")) {
      if (eof()) {
        body.children.push_back(error_node());  // missing '}'
        return;
      }
      if (at(";")) {
        body.children.push_back(leaf());
        continue;
      }
      const std::size_t start = pos_;
      try {
        body.children.push_back(parse_class_member());
      } catch (const SyntaxErr&) {
        body.children.push_back(recover_statement(start));
      }
    }
    body.children.push_back(leaf());
  }

  PNode parse_enum_body() {
    PNode body = named("enum_body");
    body.children.push_back(expect("{"));
    while (ident() || at("@")) {
      PNode c = named("enum_constant");
      parse_modifiers(c);
      c.children.push_back(expect_ident());
      if (at("(")) c.children.push_back(parse_argument_list());
      if (at("{")) c.children.push_back(parse_class_body("class_body"));
      body.children.push_back(std::move(c));
      if (!at(",")) break;
      body.children.push_back(leaf());
    }
    if (at(";")) {
      PNode decls = named("enum_body_declarations");
      decls.children.push_back(leaf());
      while (!at("}") && !eof()) {
        if (at(";")) {
          decls.children.push_back(leaf());
          continue;
        }
        const std::size_t start = pos_;
        try {
          decls.children.push_back(parse_class_member());
        } catch (const SyntaxErr&) {
          decls.children.push_back(recover_statement(start));
        }
      }
      body.children.push_back(std::move(decls));
    }
    if (eof()) {
      body.children.push_back(error_node());
      return body;
    }
    body.children.push_back(expect("}"));
    return body;
  }

  PNode parse_class_member() {
    DepthGuard g(*this);
    const auto p = skip_modifiers(pos_);
    if (type_decl_at(p)) return parse_type_declaration();
    if (at_p(p, "{")) {
      if (p == pos_) return parse_block("block");
      PNode init = named("static_initializer");
      parse_modifiers(init);
      init.children.push_back(parse_block("block"));
      return init;
    }
    return parse_member_after_modifiers(true);
  }

  PNode parse_member_after_modifiers(bool class_body) {
    PNode n;
    parse_modifiers(n);
    if (at("<")) n.children.push_back(parse_type_parameters());
    if (class_body && ident() && at("(", 1)) {
      n.kind = "constructor_declaration";
      n.children.push_back(leaf());
      n.children.push_back(parse_formal_parameters());
      if (at("throws")) n.children.push_back(parse_throws());
      n.children.push_back(parse_block("constructor_body"));
      return n;
    }
    if (class_body && ident() && at("{", 1)) {
      n.kind = "compact_constructor_declaration";
      n.children.push_back(leaf());
      n.children.push_back(parse_block("block"));
      return n;
    }
    n.children.push_back(parse_type());
    if (!ident()) fail();
    if (at("(", 1)) {
      n.kind = "method_declaration";
      n.children.push_back(leaf());
      n.children.push_back(parse_formal_parameters());
      if (at("[")) n.children.push_back(parse_dimensions());
      if (at("throws")) n.children.push_back(parse_throws());
      if (at("default")) {
        n.children.push_back(leaf());
        n.children.push_back(parse_element_value());
      }
      if (at("{")) {
        n.children.push_back(parse_block("block"));
      } else {
        n.children.push_back(expect(";"));
      }
      return n;
    }
    if (!class_body) fail();
    n.kind = "field_declaration";
    parse_declarators(n);
    n.children.push_back(expect(";"));
    return n;
  }

  PNode parse_throws() {
    PNode n = named("throws");
    n.children.push_back(leaf());
    n.children.push_back(parse_type());
    while (at(",")) {
      n.children.push_back(leaf());
      n.children.push_back(parse_type());
    }
    return n;
  }

  PNode parse_formal_parameters() {
    PNode n = named("formal_parameters");
    n.children.push_back(expect("("));
    if (!at(")")) {
      while (true) {
        n.children.push_back(parse_formal_parameter());
        if (!at(",")) break;
        n.children.push_back(leaf());
      }
    }
    n.children.push_back(expect(")"));
    return n;
  }

  PNode parse_formal_parameter() {
    PNode p = named("formal_parameter");
    parse_modifiers(p);
    p.children.push_back(parse_type());
    if (at("...")) {
      p.kind = "spread_parameter";
      p.children.push_back(leaf());
    }
    if (at("this")) {
      p.kind = "receiver_parameter";
      p.children.push_back(leaf());
      return p;
    }
    p.children.push_back(expect_ident());
    if (at("[")) p.children.push_back(parse_dimensions());
    return p;
  }

  void parse_declarators(PNode& parent) {
    while (true) {
      PNode d = named("variable_declarator");
      d.children.push_back(expect_ident());
      if (at("[")) d.children.push_back(parse_dimensions());
      if (at("=")) {
        d.children.push_back(leaf());
        const std::size_t start = pos_;
        try {
          d.children.push_back(parse_variable_initializer());
        } catch (const SyntaxErr&) {
          d.children.push_back(recover_until(start, {",", ";"}));
        }
      }
      parent.children.push_back(std::move(d));
      if (!at(",")) break;
      parent.children.push_back(leaf());
    }
  }

  PNode parse_variable_initializer() {
    if (at("{")) return parse_array_initializer();
    return parse_expression();
  }

  PNode parse_array_initializer() {
    PNode n = named("array_initializer");
    n.children.push_back(expect("{"));
    while (!at("}")) {
      n.children.push_back(parse_variable_initializer());
      if (!at(",")) break;
      n.children.push_back(leaf());
    }
    n.children.push_back(expect("}"));
    return n;
  }

  PNode parse_dimensions() {
    PNode n = named("dimensions");
    while (at("[") && at("]", 1)) {
      n.children.push_back(leaf());
      n.children.push_back(leaf());
    }
    if (n.children.empty()) fail();
    return n;
  }

  // ---- types --------------------------------------------------------------

  PNode parse_type() {
    if (at("@")) {
      PNode n = named("annotated_type");
      while (at("@")) n.children.push_back(parse_annotation());
      n.children.push_back(parse_type());
      return n;
    }
    PNode base = parse_unannotated_base_type();
    if (at("[") && at("]", 1)) return named("array_type", {std::move(base), parse_dimensions()});
    return base;
  }

  PNode parse_unannotated_base_type() {
    const PTok& t = tok();
    if (t.kind == TokenKind::kKeyword && is_primitive(t.text)) {
      std::string kind = primitive_kind(t.text);
      return named(std::move(kind), {leaf()});
    }
    if (!ident()) fail();
    PNode base = leaf("type_identifier");
    if (at("<")) base = named("generic_type", {std::move(base), parse_type_arguments()});
    while (at(".") && ident(1)) {
      PNode scoped = named("scoped_type_identifier");
      scoped.children.push_back(std::move(base));
      scoped.children.push_back(leaf());
      scoped.children.push_back(leaf("type_identifier"));
      base = std::move(scoped);
      if (at("<")) base = named("generic_type", {std::move(base), parse_type_arguments()});
    }
    return base;
  }

  PNode parse_type_arguments() {
    PNode n = named("type_arguments");
    n.children.push_back(expect("<"));
    if (at(">")) {
      n.children.push_back(leaf());
      return n;
    }
    while (true) {
      if (at("?")) {
        PNode w = named("wildcard");
        w.children.push_back(leaf());
        if (at("extends") || at("super")) {
          w.children.push_back(leaf());
          w.children.push_back(parse_type());
        }
        n.children.push_back(std::move(w));
      } else {
        n.children.push_back(parse_type());
      }
      if (!at(",")) break;
      n.children.push_back(leaf());
    }
    n.children.push_back(expect(">"));
    return n;
  }

  // ---- statements ---------------------------------------------------------

  PNode parse_block(std::string kind) {
    PNode b = named(std::move(kind));
    b.children.push_back(expect("{"));
    while (!at("}")) {
      if (eof()) {
        b.children.push_back(error_node());
        return b;
      }
      const std::size_t start = pos_;
      try {
        b.children.push_back(parse_block_statement());
      } catch (const SyntaxErr&) {
        b.children.push_back(recover_statement(start));
      }
    }
    b.children.push_back(leaf());
    return b;
  }

  PNode parse_block_statement() {
    const auto p = skip_modifiers(pos_);
    if (type_decl_at(p)) return parse_type_declaration();
    return parse_statement();
  }

  PNode parse_paren_expression() {
    PNode n = named("parenthesized_expression");
    n.children.push_back(expect("("));
    n.children.push_back(parse_expression());
    n.children.push_back(expect(")"));
    return n;
  }

  PNode parse_local_var_decl(bool with_semicolon) {
    PNode n = named("local_variable_declaration");
    parse_modifiers(n);
    n.children.push_back(parse_type());
    parse_declarators(n);
    if (with_semicolon) n.children.push_back(expect(";"));
    return n;
  }

  PNode parse_statement() {
    DepthGuard g(*this);
    const PTok& t = tok();
    if (at("{")) return parse_block("block");
    if (at(";")) return leaf();
    if (t.kind == TokenKind::kKeyword) {
      const std::string& w = t.text;
      if (w == "if") {
        PNode n = named("if_statement", {leaf(), parse_paren_expression(), parse_statement()});
        if (at("else")) {
          n.children.push_back(leaf());
          n.children.push_back(parse_statement());
        }
        return n;
      }
      if (w == "while") return named("while_statement", {leaf(), parse_paren_expression(), parse_statement()});
      if (w == "do") {
        PNode n = named("do_statement", {leaf(), parse_statement()});
        n.children.push_back(expect("while"));
        n.children.push_back(parse_paren_expression());
        n.children.push_back(expect(";"));
        return n;
      }
      if (w == "for") return parse_for();
      if (w == "try") return parse_try();
      if (w == "switch") {
        PNode s = parse_switch();
        if (at(";")) return named("expression_statement", {std::move(s), leaf()});
        return s;
      }
      if (w == "return" || w == "throw") {
        PNode n = named(w == "return" ? "return_statement" : "throw_statement");
        n.children.push_back(leaf());
        if (!at(";")) n.children.push_back(parse_expression());
        n.children.push_back(expect(";"));
        return n;
      }
      if (w == "break" || w == "continue") {
        PNode n = named(w == "break" ? "break_statement" : "continue_statement");
        n.children.push_back(leaf());
        if (ident()) n.children.push_back(leaf());
        n.children.push_back(expect(";"));
        return n;
      }
      if (w == "synchronized" && at("(", 1)) {
        PNode n = named("synchronized_statement", {leaf(), parse_paren_expression()});
        n.children.push_back(parse_block("block"));
        return n;
      }
      if (w == "assert") {
        PNode n = named("assert_statement", {leaf(), parse_expression()});
        if (at(":")) {
          n.children.push_back(leaf());
          n.children.push_back(parse_expression());
        }
        n.children.push_back(expect(";"));
        return n;
      }
    }
    if (at_word("yield") && !at("=", 1) && !at("(", 1) && !at(".", 1) && !at("[", 1) && !at(";", 1) &&
        !at("++", 1) && !at("--", 1) && !ident(1)) {
      PNode n = named("yield_statement", {leaf("yield")});
      n.children.push_back(parse_expression());
      n.children.push_back(expect(";"));
      return n;
    }
    if (ident() && at(":", 1)) {
      return named("labeled_statement", {leaf(), leaf(), parse_statement()});
    }
    if (local_var_decl_at(pos_)) return parse_local_var_decl(true);
    PNode e = parse_expression();
    return named("expression_statement", {std::move(e), expect(";")});
  }

  PNode parse_for() {
    PNode f = named("for_statement");
    f.children.push_back(leaf());
    f.children.push_back(expect("("));
    {
      const auto p = skip_modifiers(pos_);
      const auto q = skip_type(p);
      if (q != kNone && ident_p(q)) {
        auto r = q + 1;
        while (at_p(r, "[") && at_p(r + 1, "]")) r += 2;
        if (at_p(r, ":")) {
          f.kind = "enhanced_for_statement";
          parse_modifiers(f);
          f.children.push_back(parse_type());
          f.children.push_back(expect_ident());
          if (at("[")) f.children.push_back(parse_dimensions());
          f.children.push_back(expect(":"));
          f.children.push_back(parse_expression());
          f.children.push_back(expect(")"));
          f.children.push_back(parse_statement());
          return f;
        }
      }
    }
    if (!at(";")) {
      if (local_var_decl_at(pos_)) {
        f.children.push_back(parse_local_var_decl(false));
      } else {
        f.children.push_back(parse_expression());
        while (at(",")) {
          f.children.push_back(leaf());
          f.children.push_back(parse_expression());
        }
      }
    }
    f.children.push_back(expect(";"));
    if (!at(";")) f.children.push_back(parse_expression());
    f.children.push_back(expect(";"));
    if (!at(")")) {
      f.children.push_back(parse_expression());
      while (at(",")) {
        f.children.push_back(leaf());
        f.children.push_back(parse_expression());
      }
    }
    f.children.push_back(expect(")"));
    f.children.push_back(parse_statement());
    return f;
  }

  PNode parse_try() {
    PNode n = named("try_statement");
    n.children.push_back(leaf());
    if (at("(")) {
      n.kind = "try_with_resources_statement";
      PNode spec = named("resource_specification");
      spec.children.push_back(leaf());
      while (!at(")")) {
        PNode r = named("resource");
        if (local_var_decl_at(pos_)) {
          parse_modifiers(r);
          r.children.push_back(parse_type());
          r.children.push_back(expect_ident());
          r.children.push_back(expect("="));
          r.children.push_back(parse_expression());
        } else {
          r.children.push_back(parse_expression());
        }
        spec.children.push_back(std::move(r));
        if (!at(";")) break;
        spec.children.push_back(leaf());
      }
      spec.children.push_back(expect(")"));
      n.children.push_back(std::move(spec));
    }
    n.children.push_back(parse_block("block"));
    while (at("catch")) {
      PNode c = named("catch_clause");
      c.children.push_back(leaf());
      c.children.push_back(expect("("));
      PNode param = named("catch_formal_parameter");
      parse_modifiers(param);
      PNode types = named("catch_type");
      types.children.push_back(parse_type());
      while (at("|")) {
        types.children.push_back(leaf());
        types.children.push_back(parse_type());
      }
      param.children.push_back(std::move(types));
      param.children.push_back(expect_ident());
      c.children.push_back(std::move(param));
      c.children.push_back(expect(")"));
      c.children.push_back(parse_block("block"));
      n.children.push_back(std::move(c));
    }
    if (at("finally")) n.children.push_back(named("finally_clause", {leaf(), parse_block("block")}));
    return n;
  }

  PNode parse_switch() {
    PNode s = named("switch_expression");
    s.children.push_back(expect("switch"));
    s.children.push_back(parse_paren_expression());
    PNode block = named("switch_block");
    block.children.push_back(expect("{"));
    while (!at("}")) {
      if (eof()) {
        block.children.push_back(error_node());
        s.children.push_back(std::move(block));
        return s;
      }
      if (!at("case") && !at("default")) {
        block.children.push_back(recover_statement(pos_));
        continue;
      }
      const std::size_t start = pos_;
      try {
        block.children.push_back(parse_switch_entry());
      } catch (const SyntaxErr&) {
        block.children.push_back(recover_statement(start));
      }
    }
    block.children.push_back(leaf());
    s.children.push_back(std::move(block));
    return s;
  }

  PNode parse_switch_label() {
    PNode label = named("switch_label");
    if (at("default")) {
      label.children.push_back(leaf());
      return label;
    }
    label.children.push_back(expect("case"));
    while (true) {
      label.children.push_back(parse_ternary());
      if (!at(",")) break;
      label.children.push_back(leaf());
    }
    return label;
  }

  PNode parse_switch_entry() {
    PNode label = parse_switch_label();
    if (at("->")) {
      PNode rule = named("switch_rule", {std::move(label), leaf()});
      if (at("{")) {
        rule.children.push_back(parse_block("block"));
      } else if (at("throw")) {
        rule.children.push_back(parse_statement());
      } else {
        PNode e = parse_expression();
        rule.children.push_back(named("expression_statement", {std::move(e), expect(";")}));
      }
      return rule;
    }
    PNode group = named("switch_block_statement_group");
    group.children.push_back(std::move(label));
    group.children.push_back(expect(":"));
    while ((at("case") || at("default")) && !at("->", 1)) {
      const std::size_t save = pos_;
      PNode next = parse_switch_label();
      if (!at(":")) {
        pos_ = save;
        break;
      }
      group.children.push_back(std::move(next));
      group.children.push_back(leaf());
    }
    while (!at("case") && !at("}") && !(at("default") && (at(":", 1) || at("->", 1))) && !eof()) {
      const std::size_t start = pos_;
      try {
        group.children.push_back(parse_block_statement());
      } catch (const SyntaxErr&) {
        group.children.push_back(recover_statement(start));
      }
    }
    return group;
  }

  // ---- expressions --------------------------------------------------------

  PNode parse_expression() {
    DepthGuard g(*this);
    if (lambda_start()) return parse_lambda();
    PNode lhs = parse_ternary();
    std::size_t pieces = 0;
    if (tok().kind == TokenKind::kOperator) {
      const std::string op = compound(pieces);
      if (is_assignment_op(op)) {
        PNode opn = take_compound(op, pieces);
        return named("assignment_expression", {std::move(lhs), std::move(opn), parse_expression()});
      }
    }
    return lhs;
  }

  PNode parse_lambda() {
    PNode n = named("lambda_expression");
    if (ident()) {
      n.children.push_back(leaf());
    } else {
      // (a, b) are inferred parameters; anything typed is a formal list.
      bool inferred = true;
      std::size_t p = pos_ + 1;
      if (!at_p(p, ")")) {
        while (true) {
          if (!ident_p(p)) {
            inferred = false;
            break;
          }
          ++p;
          if (at_p(p, ",")) {
            ++p;
            continue;
          }
          inferred = at_p(p, ")");
          break;
        }
      }
      if (inferred) {
        PNode params = named("inferred_parameters");
        params.children.push_back(leaf());
        while (!at(")")) {
          params.children.push_back(expect_ident());
          if (at(",")) params.children.push_back(leaf());
        }
        params.children.push_back(leaf());
        n.children.push_back(std::move(params));
      } else {
        n.children.push_back(parse_formal_parameters());
      }
    }
    n.children.push_back(expect("->"));
    if (at("{")) {
      n.children.push_back(parse_block("block"));
    } else {
      n.children.push_back(parse_expression());
    }
    return n;
  }

  PNode parse_ternary() {
    PNode cond = parse_binary(1);
    if (!at("?")) return cond;
    PNode n = named("ternary_expression");
    n.children.push_back(std::move(cond));
    n.children.push_back(leaf());
    n.children.push_back(parse_expression());
    n.children.push_back(expect(":"));
    if (lambda_start()) {
      n.children.push_back(parse_lambda());
    } else {
      n.children.push_back(parse_ternary());
    }
    return n;
  }

  PNode parse_binary(int min_prec) {
    DepthGuard g(*this);
    PNode left = parse_unary();
    while (true) {
      if (at("instanceof")) {
        if (7 < min_prec) break;
        PNode n = named("instanceof_expression");
        n.children.push_back(std::move(left));
        n.children.push_back(leaf());
        if (at("final")) n.children.push_back(leaf());
        n.children.push_back(parse_type());
        if (ident() && !at_word("when")) n.children.push_back(leaf());
        left = std::move(n);
        continue;
      }
      if (tok().kind != TokenKind::kOperator) break;
      std::size_t pieces = 0;
      const std::string op = compound(pieces);
      const int prec = binary_precedence(op);
      if (prec == 0 || prec < min_prec) break;
      PNode opn = take_compound(op, pieces);
      PNode right = parse_binary(prec + 1);
      left = named("binary_expression", {std::move(left), std::move(opn), std::move(right)});
    }
    return left;
  }

  PNode parse_unary() {
    DepthGuard g(*this);
    if (tok().kind == TokenKind::kOperator) {
      const std::string& op = tok().text;
      if (op == "+" || op == "-" || op == "!" || op == "~") return named("unary_expression", {leaf(), parse_unary()});
      if (op == "++" || op == "--") return named("update_expression", {leaf(), parse_unary()});
    }
    if (cast_start()) {
      PNode n = named("cast_expression");
      n.children.push_back(leaf());
      n.children.push_back(parse_type());
      while (at("&")) {
        n.children.push_back(leaf());
        n.children.push_back(parse_type());
      }
      n.children.push_back(expect(")"));
      n.children.push_back(lambda_start() ? parse_lambda() : parse_unary());
      return n;
    }
    return parse_postfix(parse_primary());
  }

  PNode parse_argument_list() {
    PNode n = named("argument_list");
    n.children.push_back(expect("("));
    if (!at(")")) {
      while (true) {
        n.children.push_back(parse_expression());
        if (!at(",")) break;
        n.children.push_back(leaf());
      }
    }
    n.children.push_back(expect(")"));
    return n;
  }

  PNode parse_postfix(PNode node) {
    while (true) {
      if (at(".")) {
        if (at("new", 1)) {
          PNode dot = leaf();
          PNode creation = parse_new();
          PNode n = named("object_creation_expression");
          n.children.push_back(std::move(node));
          n.children.push_back(std::move(dot));
          for (auto& c : creation.children) n.children.push_back(std::move(c));
          node = std::move(n);
        } else if (at("class", 1)) {
          node = named("class_literal", {std::move(node), leaf(), leaf()});
        } else if (at("this", 1) || at("super", 1)) {
          node = named("field_access", {std::move(node), leaf(), leaf()});
          if (at("(") && node.children.back().kind == "super") {
            // Outer.super(...) constructor call
            node = named("explicit_constructor_invocation", {std::move(node), parse_argument_list()});
          }
        } else if (at("<", 1)) {
          PNode n = named("method_invocation");
          n.children.push_back(std::move(node));
          n.children.push_back(leaf());
          n.children.push_back(parse_type_arguments());
          n.children.push_back(expect_ident());
          n.children.push_back(parse_argument_list());
          node = std::move(n);
        } else if (ident(1)) {
          PNode dot = leaf();
          PNode name = leaf();
          if (at("(")) {
            node = named("method_invocation", {std::move(node), std::move(dot), std::move(name), parse_argument_list()});
          } else {
            node = named("field_access", {std::move(node), std::move(dot), std::move(name)});
          }
        } else {
          fail();
        }
      } else if (at("[")) {
        if (at("]", 1)) {
          node = named("array_type", {std::move(node), parse_dimensions()});
          if (!at("::") && !at(".")) fail();
        } else {
          PNode n = named("array_access");
          n.children.push_back(std::move(node));
          n.children.push_back(leaf());
          n.children.push_back(parse_expression());
          n.children.push_back(expect("]"));
          node = std::move(n);
        }
      } else if (at("::")) {
        PNode n = named("method_reference");
        n.children.push_back(std::move(node));
        n.children.push_back(leaf());
        if (at("<")) n.children.push_back(parse_type_arguments());
        if (at("new")) {
          n.children.push_back(leaf());
        } else {
          n.children.push_back(expect_ident());
        }
        node = std::move(n);
      } else if (at("++") || at("--")) {
        node = named("update_expression", {std::move(node), leaf()});
      } else {
        return node;
      }
    }
  }

  PNode parse_primary() {
    const PTok& t = tok();
    switch (t.kind) {
      case TokenKind::kLiteral:
        return leaf();
      case TokenKind::kIdentifier:
        if (at("(", 1)) {
          PNode name = leaf();
          return named("method_invocation", {std::move(name), parse_argument_list()});
        }
        return leaf();
      case TokenKind::kKeyword:
        if (t.text == "this" || t.text == "super") {
          PNode kw = leaf();
          if (at("(")) return named("explicit_constructor_invocation", {std::move(kw), parse_argument_list()});
          return kw;
        }
        if (t.text == "new") return parse_new();
        if (t.text == "switch") return parse_switch();
        if (is_primitive(t.text)) return parse_unannotated_base_type();
        fail();
      case TokenKind::kPunctuation:
        if (t.text == "(") return parse_paren_expression();
        fail();
      default:
        fail();
    }
  }

  PNode parse_new() {
    PNode kw = expect("new");
    PNode targs;
    bool has_targs = false;
    if (at("<")) {
      targs = parse_type_arguments();
      has_targs = true;
    }
    while (at("@")) parse_annotation();
    PNode type = parse_unannotated_base_type();
    if (at("[")) {
      PNode n = named("array_creation_expression", {std::move(kw), std::move(type)});
      while (at("[") && !at("]", 1)) {
        PNode d = named("dimensions_expr");
        d.children.push_back(leaf());
        d.children.push_back(parse_expression());
        d.children.push_back(expect("]"));
        n.children.push_back(std::move(d));
      }
      if (at("[") && at("]", 1)) n.children.push_back(parse_dimensions());
      if (at("{")) n.children.push_back(parse_array_initializer());
      return n;
    }
    PNode n = named("object_creation_expression");
    n.children.push_back(std::move(kw));
    if (has_targs) n.children.push_back(std::move(targs));
    n.children.push_back(std::move(type));
    n.children.push_back(parse_argument_list());
    if (at("{")) n.children.push_back(parse_class_body("class_body"));
    return n;
  }

  std::vector<PTok> toks_;
  ParseOptions opts_;
  PTok eof_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

std::vector<PTok> parser_tokens(std::string_view text) {
  LexerOptions lo;
  lo.comment_tokens = false;
  std::vector<PTok> out;
  for (auto& t : tokenize_text(text, lo)) {
    if (t.kind == TokenKind::kOperator && t.text.size() > 1 && t.text[0] == '>') {
      for (std::size_t i = 0; i < t.text.size(); ++i) {
        out.push_back({std::string(1, t.text[i]), TokenKind::kOperator, i + 1 < t.text.size()});
      }
    } else {
      out.push_back({std::move(t.text), t.kind, false});
    }
  }
  return out;
}

void flatten(const PNode& n, std::size_t parent, SyntaxTree& tree, bool inside_error, std::size_t& tokens,
             std::size_t& error_tokens) {
  const auto id = tree.add_node(n.kind, parent, n.token ? n.text : std::string{}, n.error);
  if (n.token) {
    ++tokens;
    if (inside_error) ++error_tokens;
  }
  for (const auto& c : n.children) flatten(c, id, tree, inside_error || n.error, tokens, error_tokens);
}

}  // namespace

SyntaxTree parse_source(std::string_view text, std::string_view fragment_id, const ParseOptions& opts) {
  JavaParser parser(parser_tokens(text), opts);
  const PNode root = parser.parse_program();
  SyntaxTree tree;
  std::size_t tokens = 0;
  std::size_t error_tokens = 0;
  flatten(root, SyntaxTree::npos, tree, false, tokens, error_tokens);
  tree.set_token_count(tokens);
  tree.set_error_tokens(error_tokens);
  tree.set_degenerate(tokens == 0);
  if (tokens > 0 && static_cast<double>(error_tokens) > opts.max_error_fraction * static_cast<double>(tokens)) {
    throw ParseFailure("fragment '" + std::string(fragment_id) + "' is unparseable: " +
                           std::to_string(error_tokens) + " of " + std::to_string(tokens) +
                           " tokens in error-recovery nodes",
                       std::string(fragment_id));
  }
  return tree;
}

SyntaxTree parse(const CodeFragment& f, bool use_preprocessed, const ParseOptions& opts) {
  if (!use_preprocessed) return parse_source(f.raw_text, f.id, opts);
  if (f.preprocessed_text) return parse_source(*f.preprocessed_text, f.id, opts);
  return parse_source(preprocess_text(f.raw_text, f.language), f.id, opts);
}

}  // namespace simscore

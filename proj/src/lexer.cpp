#include "simscore/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace simscore {
namespace {

const std::unordered_set<std::string_view>& java_keywords() {
  static const std::unordered_set<std::string_view> kw = {
      "abstract", "assert",     "boolean",   "break",      "byte",      "case",         "catch",
      "char",     "class",      "const",     "continue",   "default",   "do",           "double",
      "else",     "enum",       "extends",   "final",      "finally",   "float",        "for",
      "goto",     "if",         "implements", "import",    "instanceof", "int",         "interface",
      "long",     "native",     "new",       "package",    "private",   "protected",    "public",
      "return",   "short",      "static",    "strictfp",   "super",     "switch",       "synchronized",
      "this",     "throw",      "throws",    "transient",  "try",       "void",         "volatile",
      "while"};
  return kw;
}

// Longest match first.
constexpr std::array<std::string_view, 40> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",   "+=",  "-=",  "*=",  "/=",  "&=", "|=", "^=", "%=", "<<", ">>", "=",  ">",  "<",
    "!",    "~",   "?",   ":",   "+",   "-",  "*",  "/",  "&",  "|",  "^",  "%"};

bool is_punctuation_char(char c) {
  switch (c) {
    case '(': case ')': case '{': case '}': case '[': case ']': case ';': case ',': case '.': case '@':
      return true;
    default:
      return false;
  }
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool ident_part(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80; }

class Scanner {
 public:
  explicit Scanner(std::string_view text) : s_(text) {}

  std::vector<LexPiece> run() {
    std::vector<LexPiece> out;
    while (i_ < s_.size()) out.push_back(next());
    return out;
  }

 private:
  char at(std::size_t k) const { return k < s_.size() ? s_[k] : '\0'; }

  LexPiece next() {
    const std::size_t b = i_;
    const unsigned char c = static_cast<unsigned char>(s_[i_]);
    if (std::isspace(c)) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
      return {PieceKind::kWhitespace, b, i_};
    }
    if (c == '/' && at(i_ + 1) == '/') {
      while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      return {PieceKind::kLineComment, b, i_};
    }
    if (c == '/' && at(i_ + 1) == '*') {
      const auto close = s_.find("*/", i_ + 2);
      i_ = close == std::string_view::npos ? s_.size() : close + 2;
      return {PieceKind::kBlockComment, b, i_};
    }
    if (ident_start(c)) {
      while (i_ < s_.size() && ident_part(static_cast<unsigned char>(s_[i_]))) ++i_;
      const auto word = s_.substr(b, i_ - b);
      TokenKind kind = TokenKind::kIdentifier;
      if (word == "true" || word == "false" || word == "null")
        kind = TokenKind::kLiteral;
      else if (java_keywords().count(word))
        kind = TokenKind::kKeyword;
      return {PieceKind::kToken, b, i_, kind};
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(at(i_ + 1))))) {
      scan_number();
      return {PieceKind::kToken, b, i_, TokenKind::kLiteral};
    }
    if (c == '"') {
      if (at(i_ + 1) == '"' && at(i_ + 2) == '"') {
        const auto close = s_.find("\"\"\"", i_ + 3);
        i_ = close == std::string_view::npos ? s_.size() : close + 3;
      } else {
        scan_quoted('"');
      }
      return {PieceKind::kToken, b, i_, TokenKind::kLiteral};
    }
    if (c == '\'') {
      scan_quoted('\'');
      return {PieceKind::kToken, b, i_, TokenKind::kLiteral};
    }
    if (is_punctuation_char(static_cast<char>(c))) {
      if (c == '.' && at(i_ + 1) == '.' && at(i_ + 2) == '.') {
        i_ += 3;
        return {PieceKind::kToken, b, i_, TokenKind::kOperator};
      }
      ++i_;
      return {PieceKind::kToken, b, i_, TokenKind::kPunctuation};
    }
    for (auto op : kOperators) {
      if (s_.substr(i_, op.size()) == op) {
        i_ += op.size();
        // "::" separates like punctuation but is listed with the operators.
        return {PieceKind::kToken, b, i_, op == "::" ? TokenKind::kPunctuation : TokenKind::kOperator};
      }
    }
    // Unknown byte; keep UTF-8 sequences together.
    ++i_;
    if (c >= 0x80)
      while (i_ < s_.size() && (static_cast<unsigned char>(s_[i_]) & 0xC0) == 0x80) ++i_;
    return {PieceKind::kToken, b, i_, TokenKind::kOther};
  }

  void scan_number() {
    if (s_[i_] == '0' && (at(i_ + 1) == 'x' || at(i_ + 1) == 'X' || at(i_ + 1) == 'b' || at(i_ + 1) == 'B')) {
      i_ += 2;
      while (i_ < s_.size() && (std::isxdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    } else {
      auto digits = [&] {
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      };
      digits();
      if (at(i_) == '.' && std::isdigit(static_cast<unsigned char>(at(i_ + 1)))) {
        ++i_;
        digits();
      } else if (at(i_) == '.' && !ident_start(static_cast<unsigned char>(at(i_ + 1))) && at(i_ + 1) != '.') {
        ++i_;  // "1." is a double literal
      }
      if (at(i_) == 'e' || at(i_) == 'E') {
        std::size_t k = i_ + 1;
        if (at(k) == '+' || at(k) == '-') ++k;
        if (std::isdigit(static_cast<unsigned char>(at(k)))) {
          i_ = k;
          digits();
        }
      }
    }
    const char sfx = at(i_);
    if (sfx == 'l' || sfx == 'L' || sfx == 'f' || sfx == 'F' || sfx == 'd' || sfx == 'D') ++i_;
  }

  void scan_quoted(char quote) {
    ++i_;
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (c == '\\') {
        i_ = std::min(s_.size(), i_ + 2);
        continue;
      }
      if (c == '\n') return;  // unterminated; stop at end of line
      ++i_;
      if (c == quote) return;
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

// Words of a comment body, without the comment delimiters and without the
// runs of `*` that decorate block comments.
void split_words(std::string_view text, PieceKind kind, TokenStream& out) {
  if (kind == PieceKind::kLineComment) {
    text.remove_prefix(2);
  } else {
    text.remove_prefix(2);
    if (text.size() >= 2 && text.substr(text.size() - 2) == "*/") text.remove_suffix(2);
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t b = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const auto word = text.substr(b, i - b);
    if (!word.empty() && word.find_first_not_of('*') != std::string_view::npos)
      out.push_back({std::string(word), TokenKind::kOther});
  }
}

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kLiteral: return "literal";
    case TokenKind::kOperator: return "operator";
    case TokenKind::kPunctuation: return "punctuation";
    case TokenKind::kOther: return "other";
  }
  return "other";
}

bool is_keyword(std::string_view word, std::string_view language) {
  if (language != "java") return false;
  return java_keywords().count(word) > 0;
}

std::vector<LexPiece> lex_pieces(std::string_view text, std::string_view /*language*/) {
  return Scanner(text).run();
}

TokenStream tokenize_text(std::string_view text, const LexerOptions& opts) {
  TokenStream out;
  for (const auto& p : lex_pieces(text, opts.language)) {
    const auto body = text.substr(p.begin, p.end - p.begin);
    switch (p.kind) {
      case PieceKind::kWhitespace:
        break;
      case PieceKind::kLineComment:
      case PieceKind::kBlockComment:
        if (opts.comment_tokens) split_words(body, p.kind, out);
        break;
      case PieceKind::kToken:
        out.push_back({std::string(body), p.token_kind});
        break;
    }
  }
  return out;
}

}  // namespace simscore

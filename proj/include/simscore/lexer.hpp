#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace simscore {

enum class TokenKind { kKeyword, kIdentifier, kLiteral, kOperator, kPunctuation, kOther };

const char* to_string(TokenKind kind);

struct Token {
  std::string text;
  TokenKind kind = TokenKind::kOther;

  friend bool operator==(const Token&, const Token&) = default;
};

using TokenStream = std::vector<Token>;

/// Raw lexical pieces, including layout. Used by the preprocessor, which must
/// reproduce non-comment text byte for byte.
enum class PieceKind { kWhitespace, kLineComment, kBlockComment, kToken };

struct LexPiece {
  PieceKind kind;
  std::size_t begin;  // byte offset into the source
  std::size_t end;
  TokenKind token_kind = TokenKind::kOther;
};

struct LexerOptions {
  std::string language = "java";
  // When set, each comment contributes its whitespace-separated words as
  // kind=other tokens. Only honoured for raw text.
  bool comment_tokens = true;
};

/// Splits source text into layout and token pieces. Total on any input:
/// unterminated comments run to end of input, unterminated string literals to
/// end of line, unknown bytes become single-character kind=other tokens.
std::vector<LexPiece> lex_pieces(std::string_view text, std::string_view language = "java");

/// Lexical token stream of `text`. Comments are skipped unless
/// `opts.comment_tokens` is set.
TokenStream tokenize_text(std::string_view text, const LexerOptions& opts = {});

bool is_keyword(std::string_view word, std::string_view language = "java");

}  // namespace simscore

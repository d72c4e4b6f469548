#pragma once

#include <cstddef>
#include <string_view>

#include "simscore/corpus.hpp"
#include "simscore/syntax_tree.hpp"

namespace simscore {

struct ParseOptions {
  /// Above this share of tokens inside error-recovery nodes the parse counts
  /// as a failure and ParseFailure is thrown.
  double max_error_fraction = 0.5;
  std::size_t max_nesting = 400;
};

/// Concrete syntax tree of Java source. Named nodes use tree-sitter-java kind
/// names (`program`, `class_declaration`, `binary_expression`, ...); anonymous
/// tokens use their own text as kind. Unparseable regions become `ERROR`
/// nodes. Empty input yields a lone `program` node flagged degenerate.
SyntaxTree parse_source(std::string_view text, std::string_view fragment_id = {}, const ParseOptions& opts = {});

SyntaxTree parse(const CodeFragment& f, bool use_preprocessed, const ParseOptions& opts = {});

}  // namespace simscore

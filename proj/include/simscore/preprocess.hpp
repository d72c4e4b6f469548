#pragma once

#include <string>
#include <string_view>

namespace simscore {

/// Removes comments and top-level `import`/`package` statements and collapses
/// every run of layout (whitespace, newlines, removed comments) to a single
/// space. String and character literals are copied verbatim. Idempotent.
std::string preprocess_text(std::string_view text, std::string_view language = "java");

}  // namespace simscore

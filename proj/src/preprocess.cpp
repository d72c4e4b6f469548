#include "simscore/preprocess.hpp"

#include "simscore/lexer.hpp"

namespace simscore {

std::string preprocess_text(std::string_view text, std::string_view language) {
  const auto pieces = lex_pieces(text, language);
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  int depth = 0;
  bool statement_start = true;
  bool skipping = false;

  for (const auto& p : pieces) {
    if (p.kind != PieceKind::kToken) {
      pending_space = !out.empty();
      continue;
    }
    const auto tok = text.substr(p.begin, p.end - p.begin);
    if (skipping) {
      if (tok == ";") {
        skipping = false;
        statement_start = true;
      }
      continue;
    }
    if (depth == 0 && statement_start && language == "java" && (tok == "import" || tok == "package")) {
      skipping = true;
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.append(tok);

    if (tok == "{") {
      ++depth;
    } else if (tok == "}") {
      if (depth > 0) --depth;
    }
    statement_start = tok == ";" || tok == "}" || tok == "{";
  }
  return out;
}

}  // namespace simscore

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace simscore::csv {

using Row = std::vector<std::string>;

/// RFC 4180-style parsing: quoted fields, doubled quotes, CRLF tolerated.
/// Blank lines are dropped.
std::vector<Row> parse(std::string_view text);

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

std::string join(const Row& row);

}  // namespace simscore::csv

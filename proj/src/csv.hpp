#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace causorbit::detail {

/// Splits one CSV record on commas, honouring double-quoted fields with `""`
/// escapes.  Throws ParseError on an unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field only when it needs it.
std::string csv_field(std::string_view field);

/// Strict decimal parse of the whole token.
bool parse_double(std::string_view token, double& out);

/// Shortest text that reads back to the same double.
std::string format_exact(double value);

}  // namespace causorbit::detail

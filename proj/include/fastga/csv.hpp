#pragma once

/// @file csv.hpp
/// Minimal RFC 4180 reading and writing plus exact number formatting.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fastga::csv {

/// Quotes the field if it contains a comma, quote or line break.
std::string escape(std::string_view field);

/// Writes one record terminated by '\n'.
void write_record(std::ostream& out, const std::vector<std::string>& fields);

/// Reads all records. Accepts '\n' and "\r\n" line endings and quoted
/// fields with embedded separators. Throws std::runtime_error on an
/// unterminated quote.
std::vector<std::vector<std::string>> read_records(std::istream& in);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Strict parsers; throw std::runtime_error naming `what` on bad input.
double parse_double(std::string_view s, std::string_view what);
std::uint64_t parse_u64(std::string_view s, std::string_view what);
std::int64_t parse_i64(std::string_view s, std::string_view what);
bool parse_bool(std::string_view s, std::string_view what);

}  // namespace fastga::csv

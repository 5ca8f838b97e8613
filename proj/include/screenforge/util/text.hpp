#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace screenforge {

std::string_view trim(std::string_view s);

// ASCII case-fold, collapse whitespace runs to one space, trim.
std::string normalize_for_match(std::string_view s);

// Lowercased ASCII alphanumeric runs; non-ASCII bytes stay inside tokens.
std::vector<std::string> tokenize_lower(std::string_view s);

// Byte offsets at which UTF-8 code points start (always includes 0 for
// non-empty input). Invalid continuation bytes are treated as their own units.
std::vector<std::size_t> utf8_starts(std::string_view s);

std::size_t utf8_length(std::string_view s);

// Length in UTF-16 code units, the unit of DOM string offsets.
std::size_t utf16_length(std::string_view s);

// Escapes &, <, > and, for attribute context, the double quote.
std::string html_escape(std::string_view s, bool attribute);

bool starts_with_upper_or_digit(std::string_view token);

std::vector<std::string> split(std::string_view s, char sep);

}  // namespace screenforge

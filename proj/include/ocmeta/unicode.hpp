#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

// Minimal UTF-8 and case-mapping utilities covering the scripts that show up
// in bibliographic metadata (ASCII, Latin-1, Latin Extended-A, Greek,
// Cyrillic). Code points outside the tables are treated as caseless.
namespace ocmeta::uni {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes the code point starting at byte offset i and advances i past it.
// Malformed sequences yield U+FFFD and advance by one byte.
char32_t decode(std::string_view s, std::size_t& i);

void append_utf8(std::string& out, char32_t cp);

// Space-like characters: Unicode Zs plus the control whitespace (tab etc.).
bool is_space(char32_t cp);

// Dash-like characters: Unicode Pd, minus sign, soft hyphen.
bool is_dash(char32_t cp);

bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
char32_t to_upper(char32_t cp);
char32_t to_lower(char32_t cp);

std::string lower(std::string_view s);
std::string upper(std::string_view s);

// Case-insensitive equality over the supported case tables.
bool iequals(std::string_view a, std::string_view b);

}  // namespace ocmeta::uni

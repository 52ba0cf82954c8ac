#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace narrative::text {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes the UTF-8 sequence starting at s[pos] and advances pos past it.
// Invalid bytes decode to U+FFFD and consume one byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

// Letter test and simple lowercase mapping for the scripts we handle:
// ASCII, Latin-1 Supplement, Latin Extended-A, Greek, Cyrillic. Codepoints
// outside those ranges are not letters.
bool is_letter(char32_t cp);
char32_t to_lower(char32_t cp);

// Lowercases every letter in a UTF-8 string; non-letters pass through.
std::string lowercase(std::string_view word);

// True if the string is non-empty and every codepoint is a letter.
bool is_letters_only(std::string_view word);

// Debug-level log hook. The library reports non-fatal oddities (e.g. stop
// words missing from the lexicon) through this; default is a no-op.
void set_debug_logger(std::function<void(std::string_view)> logger);
void debug_log(std::string_view message);

}  // namespace narrative::text

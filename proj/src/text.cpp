#include "narrative/text.hpp"

#include <utility>

namespace narrative::text {

namespace {

std::function<void(std::string_view)>& logger_slot() {
    static std::function<void(std::string_view)> logger;
    return logger;
}

}  // namespace

void set_debug_logger(std::function<void(std::string_view)> logger) {
    logger_slot() = std::move(logger);
}

void debug_log(std::string_view message) {
    if (auto& log = logger_slot()) log(message);
}

char32_t decode_utf8(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char b0 = byte(pos);

    if (b0 < 0x80) {
        ++pos;
        return b0;
    }

    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
    else { ++pos; return kReplacementChar; }  // stray continuation or invalid lead

    if (pos + static_cast<std::size_t>(len) > s.size()) {
        ++pos;
        return kReplacementChar;
    }
    for (int i = 1; i < len; ++i) {
        const unsigned char bi = byte(pos + static_cast<std::size_t>(i));
        if ((bi & 0xC0) != 0x80) {
            ++pos;
            return kReplacementChar;
        }
        cp = (cp << 6) | (bi & 0x3F);
    }

    // Reject overlong forms and surrogates.
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
        ++pos;
        return kReplacementChar;
    }
    pos += static_cast<std::size_t>(len);
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_letter(char32_t cp) {
    if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
    // Latin-1 Supplement letters, minus the multiply/divide signs.
    if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
    if (cp >= 0x100 && cp <= 0x17F) return true;  // Latin Extended-A
    // Greek and Coptic (letters only).
    if (cp == 0x386 || (cp >= 0x388 && cp <= 0x38A) || cp == 0x38C) return true;
    if (cp >= 0x38E && cp <= 0x3A1) return true;
    if (cp >= 0x3A3 && cp <= 0x3CE) return true;
    if (cp >= 0x400 && cp <= 0x481) return true;  // Cyrillic
    return false;
}

char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1 uppercase
    if (cp >= 0x100 && cp <= 0x17F) {
        // Latin Extended-A: mostly alternating upper/lower pairs.
        if (cp == 0x130) return 0x69;   // dotted capital I -> i
        if (cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
        if (cp == 0x178) return 0xFF;   // capital Y with diaeresis
        if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
        if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
        return (cp % 2 == 0) ? cp + 1 : cp;
    }
    // Greek
    if (cp == 0x386) return 0x3AC;
    if (cp >= 0x388 && cp <= 0x38A) return cp + 0x25;
    if (cp == 0x38C) return 0x3CC;
    if (cp == 0x38E) return 0x3CD;
    if (cp == 0x38F) return 0x3CE;
    if (cp >= 0x391 && cp <= 0x3A1) return cp + 0x20;
    if (cp >= 0x3A3 && cp <= 0x3AB) return cp + 0x20;
    // Cyrillic
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp >= 0x460 && cp <= 0x481) return (cp % 2 == 0) ? cp + 1 : cp;
    return cp;
}

std::string lowercase(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    std::size_t i = 0;
    while (i < word.size()) {
        append_utf8(out, to_lower(decode_utf8(word, i)));
    }
    return out;
}

bool is_letters_only(std::string_view word) {
    if (word.empty()) return false;
    std::size_t i = 0;
    while (i < word.size()) {
        if (!is_letter(decode_utf8(word, i))) return false;
    }
    return true;
}

}  // namespace narrative::text

#include "ocmeta/unicode.hpp"

namespace ocmeta::uni {

char32_t decode(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        if (i + k >= s.size()) return false;
        return (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    auto cb = [&](std::size_t k) {
        return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F);
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        char32_t cp = ((b0 & 0x1Fu) << 6) | cb(1);
        i += 2;
        return cp < 0x80 ? kReplacement : cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        char32_t cp = ((b0 & 0x0Fu) << 12) | (cb(1) << 6) | cb(2);
        i += 3;
        return cp < 0x800 ? kReplacement : cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        char32_t cp = ((b0 & 0x07u) << 18) | (cb(1) << 12) | (cb(2) << 6) | cb(3);
        i += 4;
        return (cp < 0x10000 || cp > 0x10FFFF) ? kReplacement : cp;
    }
    ++i;
    return kReplacement;
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

bool is_space(char32_t cp) {
    switch (cp) {
        case 0x0009: case 0x000A: case 0x000B: case 0x000C: case 0x000D:
        case 0x0020: case 0x0085: case 0x00A0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_dash(char32_t cp) {
    switch (cp) {
        case 0x002D: case 0x00AD: case 0x058A: case 0x05BE: case 0x1400:
        case 0x1806: case 0x2E17: case 0x2E1A: case 0x2E3A: case 0x2E3B:
        case 0x2212: case 0x301C: case 0x3030: case 0x30A0:
        case 0xFE31: case 0xFE32: case 0xFE58: case 0xFE63: case 0xFF0D:
            return true;
        default:
            return cp >= 0x2010 && cp <= 0x2015;
    }
}

namespace {

// Latin Extended-A pairs mostly alternate upper/lower; three blocks flip the
// parity and a handful of code points are irregular.
char32_t latin_ext_a_upper(char32_t cp) {
    if (cp == 0x0131) return 0x0049;  // dotless i -> I
    if (cp == 0x017F) return 0x0053;  // long s -> S
    if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 0) ? cp - 1 : cp;
    if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 0) ? cp - 1 : cp;
    if (cp >= 0x0100 && cp <= 0x0177) return (cp % 2 == 1) ? cp - 1 : cp;
    return cp;
}

char32_t latin_ext_a_lower(char32_t cp) {
    if (cp == 0x0130) return 0x0069;  // dotted I -> i
    if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x0100 && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x0178) return 0x00FF;  // Y with diaeresis
    return cp;
}

bool latin_ext_a_is_upper(char32_t cp) {
    return cp >= 0x0100 && cp <= 0x017F && latin_ext_a_lower(cp) != cp;
}

bool latin_ext_a_is_lower(char32_t cp) {
    if (cp == 0x0131 || cp == 0x017F) return true;
    return cp >= 0x0100 && cp <= 0x017F && latin_ext_a_upper(cp) != cp;
}

}  // namespace

bool is_upper(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return true;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return true;
    if (latin_ext_a_is_upper(cp)) return true;
    if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return true;  // Greek caps
    if (cp >= 0x0410 && cp <= 0x042F) return true;                   // Cyrillic caps
    if (cp == 0x0401) return true;                                   // Io
    return false;
}

bool is_lower(char32_t cp) {
    if (cp >= 'a' && cp <= 'z') return true;
    if (cp >= 0x00DF && cp <= 0x00FF && cp != 0x00F7) return true;
    if (latin_ext_a_is_lower(cp)) return true;
    if (cp >= 0x03B1 && cp <= 0x03C9) return true;
    if (cp >= 0x0430 && cp <= 0x044F) return true;
    if (cp == 0x0451) return true;
    return false;
}

bool is_letter(char32_t cp) { return is_upper(cp) || is_lower(cp); }

char32_t to_upper(char32_t cp) {
    if (cp >= 'a' && cp <= 'z') return cp - 0x20;
    if (cp >= 0x00E0 && cp <= 0x00FE && cp != 0x00F7) return cp - 0x20;
    if (cp == 0x00FF) return 0x0178;
    if (cp >= 0x0100 && cp <= 0x017F) return latin_ext_a_upper(cp);
    if (cp == 0x03C2) return 0x03A3;  // final sigma
    if (cp >= 0x03B1 && cp <= 0x03C9) return cp - 0x20;
    if (cp >= 0x0430 && cp <= 0x044F) return cp - 0x20;
    if (cp == 0x0451) return 0x0401;
    return cp;
}

char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
    if (cp >= 0x0100 && cp <= 0x017F) return latin_ext_a_lower(cp);
    if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
    if (cp == 0x0401) return 0x0451;
    return cp;
}

std::string lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) append_utf8(out, to_lower(decode(s, i)));
    return out;
}

std::string upper(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) append_utf8(out, to_upper(decode(s, i)));
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (to_lower(decode(a, i)) != to_lower(decode(b, j))) return false;
    }
    return i == a.size() && j == b.size();
}

}  // namespace ocmeta::uni

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chatprofiler::text {

// ---------------------------------------------------------------------------
// UTF-8 handling
// ---------------------------------------------------------------------------

/// Decodes one UTF-8 sequence starting at `i`. Advances `i` past the sequence.
/// Malformed bytes decode to U+FFFD and advance by one byte.
inline char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) -> std::uint8_t {
        return static_cast<std::uint8_t>(s[k]);
    };
    const std::uint8_t b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + static_cast<std::size_t>(len) > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        const std::uint8_t b = byte(i + static_cast<std::size_t>(k));
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += static_cast<std::size_t>(len);
    return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
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

// ---------------------------------------------------------------------------
// Character classes
// ---------------------------------------------------------------------------

inline bool is_space_cp(char32_t cp) {
    switch (cp) {
        case U' ': case U'\t': case U'\n': case U'\r':
        case 0x0B: case 0x0C:
        case 0x00A0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return (cp >= 0x2000 && cp <= 0x200A);
    }
}

/// Punctuation and symbol codepoints that separate tokens.
inline bool is_punct_cp(char32_t cp) {
    if (cp < 0x80) {
        const char c = static_cast<char>(cp);
        const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                           (c >= '0' && c <= '9');
        return !alnum && !is_space_cp(cp);
    }
    if (cp == 0xFFFD) return true;                   // malformed input
    if (cp >= 0x00A1 && cp <= 0x00BF) return true;   // latin-1 punctuation
    if (cp == 0x00D7 || cp == 0x00F7) return true;
    if (cp >= 0x2010 && cp <= 0x2027) return true;   // general punctuation
    if (cp >= 0x2030 && cp <= 0x205E) return true;
    if (cp >= 0x2190 && cp <= 0x2BFF) return true;   // arrows, math, symbols
    if (cp >= 0x3001 && cp <= 0x303F) return true;   // CJK punctuation
    if (cp >= 0xFE50 && cp <= 0xFE6F) return true;
    if (cp >= 0xFF01 && cp <= 0xFF0F) return true;   // fullwidth forms
    if (cp >= 0xFF1A && cp <= 0xFF20) return true;
    if (cp >= 0xFF3B && cp <= 0xFF40) return true;
    if (cp >= 0xFF5B && cp <= 0xFF65) return true;
    if (cp >= 0x1F000 && cp <= 0x1FFFF) return true; // emoji and pictographs
    return false;
}

inline char32_t to_lower_cp(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 32;
    if (cp == 0x2019) return U'\'';  // curly apostrophe folds to ASCII
    return cp;
}

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

/// The tokenizer shared by every metric: lowercase, split on whitespace and
/// punctuation. An apostrophe between two word characters stays inside the
/// token so contractions survive ("don't" is one token).
inline std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    std::vector<std::pair<char32_t, bool>> cps;  // (codepoint, is_word_char)
    cps.reserve(s.size());
    while (i < s.size()) {
        char32_t cp = to_lower_cp(decode_utf8(s, i));
        const bool word = !is_space_cp(cp) && !is_punct_cp(cp);
        cps.emplace_back(cp, word);
    }
    for (std::size_t k = 0; k < cps.size(); ++k) {
        const auto [cp, word] = cps[k];
        const bool internal_apostrophe =
            cp == U'\'' && !current.empty() && k + 1 < cps.size() && cps[k + 1].second;
        if (word || internal_apostrophe) {
            append_utf8(current, cp);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

/// Plain whitespace word count, the "word count" unit of response length and
/// of the privacy-rate denominator.
inline std::size_t whitespace_token_count(std::string_view s) {
    std::size_t count = 0;
    bool in_word = false;
    std::size_t i = 0;
    while (i < s.size()) {
        const char32_t cp = decode_utf8(s, i);
        if (is_space_cp(cp)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++count;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Question-text normalization and similarity
// ---------------------------------------------------------------------------

/// Lowercase, strip punctuation, collapse whitespace.
inline std::string normalize(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < s.size()) {
        char32_t cp = to_lower_cp(decode_utf8(s, i));
        if (is_space_cp(cp) || is_punct_cp(cp)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, cp);
    }
    return out;
}

inline std::vector<char32_t> to_codepoints(std::string_view s) {
    std::vector<char32_t> cps;
    cps.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) cps.push_back(decode_utf8(s, i));
    return cps;
}

/// Normalized indel similarity: 1 - d/(|a|+|b|) where d is the edit distance
/// with unit insertions and deletions only (equivalently 2*LCS/(|a|+|b|)).
/// Two empty strings are identical (similarity 1).
inline double similarity_ratio(std::string_view a, std::string_view b) {
    const auto ca = to_codepoints(a);
    const auto cb = to_codepoints(b);
    const std::size_t n = ca.size(), m = cb.size();
    if (n + m == 0) return 1.0;
    // LCS length, rolling rows
    std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            cur[j] = ca[i - 1] == cb[j - 1] ? prev[j - 1] + 1
                                            : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    const double lcs = static_cast<double>(prev[m]);
    return 2.0 * lcs / static_cast<double>(n + m);
}

/// Classic Levenshtein distance over codepoints (insert/delete/substitute).
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
    const auto ca = to_codepoints(a);
    const auto cb = to_codepoints(b);
    const std::size_t n = ca.size(), m = cb.size();
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

inline std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

inline std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

}  // namespace chatprofiler::text

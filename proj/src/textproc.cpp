#include "asksport/textproc.hpp"

#include "asksport/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>

namespace asksport {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

struct Decoded {
    char32_t cp;
    std::size_t len;
};

// Decodes one UTF-8 sequence at `pos`. Malformed input yields kInvalid with
// length 1 so the caller can resynchronise on the next byte.
Decoded decode_utf8(std::string_view s, std::size_t pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) {
        return {b0, 1};
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
        min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
        min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
        min = 0x10000;
    } else {
        return {kInvalid, 1};
    }
    if (pos + len > s.size()) {
        return {kInvalid, 1};
    }
    for (std::size_t i = 1; i < len; ++i) {
        const auto b = static_cast<unsigned char>(s[pos + i]);
        if ((b & 0xC0) != 0x80) {
            return {kInvalid, 1};
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        return {kInvalid, 1};
    }
    return {cp, len};
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

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

bool is_space(char32_t cp) {
    switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
        return true;
    default:
        return in(cp, 0x2000, 0x200A);
    }
}

// Letters and digits. Outside ASCII everything counts as a word character
// except the punctuation, symbol and space blocks listed here.
bool is_word_char(char32_t cp) {
    if (cp == kInvalid) {
        return false;
    }
    if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    }
    if (cp <= 0xBF) {
        return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
    }
    if (cp == 0xD7 || cp == 0xF7) {
        return false;
    }
    if (cp == 0x037E || cp == 0x0387 || in(cp, 0x055A, 0x055F) || cp == 0x0589 ||
        cp == 0x05BE || cp == 0x05C0 || cp == 0x05C3 || cp == 0x05C6 || in(cp, 0x05F3, 0x05F4) ||
        cp == 0x060C || cp == 0x061B || cp == 0x061F || in(cp, 0x066A, 0x066D) || cp == 0x06D4 ||
        in(cp, 0x0964, 0x0965) || cp == 0x0E4F || cp == 0x1680) {
        return false;
    }
    if (in(cp, 0x2000, 0x206F) ||  // general punctuation
        in(cp, 0x20A0, 0x20CF) ||  // currency
        in(cp, 0x2190, 0x2BFF) ||  // arrows, math operators, technical, shapes, dingbats
        in(cp, 0x2E00, 0x2E7F) ||  // supplemental punctuation
        in(cp, 0x3000, 0x303F) ||  // CJK symbols and punctuation
        in(cp, 0xFE10, 0xFE1F) || in(cp, 0xFE30, 0xFE6F) ||
        in(cp, 0xFF00, 0xFF0F) || in(cp, 0xFF1A, 0xFF20) || in(cp, 0xFF3B, 0xFF40) ||
        in(cp, 0xFF5B, 0xFF65) ||
        cp == 0xFEFF || in(cp, 0xFFF0, 0xFFFF) ||
        in(cp, 0x1F000, 0x1FAFF)) {  // emoji and pictographs
        return false;
    }
    return true;
}

char32_t lower_cp(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
    }
    if (in(cp, 0xC0, 0xDE) && cp != 0xD7) {
        return cp + 0x20;
    }
    if (cp == 0x130) {
        return 'i';
    }
    if (cp == 0x178) {
        return 0xFF;
    }
    if ((in(cp, 0x100, 0x137) || in(cp, 0x14A, 0x177)) && cp % 2 == 0) {
        return cp + 1;
    }
    if ((in(cp, 0x139, 0x148) || in(cp, 0x179, 0x17E)) && cp % 2 == 1) {
        return cp + 1;
    }
    if (in(cp, 0x391, 0x3A9) && cp != 0x3A2) {
        return cp + 0x20;
    }
    if (cp == 0x386) {
        return 0x3AC;
    }
    if (in(cp, 0x388, 0x38A)) {
        return cp + 0x25;
    }
    if (cp == 0x38C) {
        return 0x3CC;
    }
    if (in(cp, 0x38E, 0x38F)) {
        return cp + 0x3F;
    }
    if (in(cp, 0x410, 0x42F)) {
        return cp + 0x20;
    }
    if (in(cp, 0x400, 0x40F)) {
        return cp + 0x50;
    }
    return cp;
}

void append_lower(std::string& out, std::string_view s, std::size_t pos, const Decoded& d) {
    if (d.cp == kInvalid) {
        out.push_back(s[pos]);
    } else {
        append_utf8(out, lower_cp(d.cp));
    }
}

} // namespace

bool is_question_stopword(std::string_view term) noexcept {
    return std::binary_search(kQuestionStopwords.begin(), kQuestionStopwords.end(), term);
}

std::string to_lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t pos = 0; pos < text.size();) {
        const auto d = decode_utf8(text, pos);
        append_lower(out, text, pos, d);
        pos += d.len;
    }
    return out;
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    Token current;
    bool open = false;
    for (std::size_t pos = 0; pos < text.size();) {
        const auto d = decode_utf8(text, pos);
        if (is_word_char(d.cp)) {
            if (!open) {
                current.text.clear();
                current.char_start = pos;
                open = true;
            }
            append_lower(current.text, text, pos, d);
        } else if (open) {
            current.char_end = pos;
            tokens.push_back(std::move(current));
            current = Token{};
            open = false;
        }
        pos += d.len;
    }
    if (open) {
        current.char_end = text.size();
        tokens.push_back(std::move(current));
    }
    return tokens;
}

std::vector<std::string> content_terms(std::string_view question) {
    std::vector<std::string> terms;
    std::unordered_set<std::string> seen;
    for (auto& token : tokenize(question)) {
        if (is_question_stopword(token.text)) {
            continue;
        }
        if (seen.insert(token.text).second) {
            terms.push_back(std::move(token.text));
        }
    }
    return terms;
}

double idf(std::size_t df, std::size_t n_docs) {
    if (df == 0 || df > n_docs) {
        throw DomainError("idf requires 1 <= df <= n_docs (df=" + std::to_string(df) +
                          ", n_docs=" + std::to_string(n_docs) + ")");
    }
    const auto n = static_cast<double>(n_docs);
    const auto f = static_cast<double>(df);
    return std::log1p((n - f + 0.5) / (f + 0.5));
}

double idf_out_of_vocabulary(std::size_t n_docs) {
    return std::log1p((static_cast<double>(n_docs) + 0.5) / 0.5);
}

std::string normalize_answer(std::string_view text) {
    // Lowercase and drop punctuation; whitespace becomes a plain space.
    std::string stripped;
    stripped.reserve(text.size());
    for (std::size_t pos = 0; pos < text.size();) {
        const auto d = decode_utf8(text, pos);
        if (is_word_char(d.cp)) {
            append_lower(stripped, text, pos, d);
        } else if (is_space(d.cp)) {
            stripped.push_back(' ');
        }
        pos += d.len;
    }

    std::string out;
    std::size_t pos = 0;
    while (pos < stripped.size()) {
        const auto start = stripped.find_first_not_of(' ', pos);
        if (start == std::string::npos) {
            break;
        }
        auto end = stripped.find(' ', start);
        if (end == std::string::npos) {
            end = stripped.size();
        }
        const std::string_view word(stripped.data() + start, end - start);
        if (word != "a" && word != "an" && word != "the") {
            if (!out.empty()) {
                out.push_back(' ');
            }
            out.append(word);
        }
        pos = end;
    }
    return out;
}

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (std::size_t pos = 0; pos < text.size();) {
        const auto d = decode_utf8(text, pos);
        if (d.cp != kInvalid && is_space(d.cp)) {
            pending_space = !out.empty();
        } else {
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out.append(text.substr(pos, d.len));
        }
        pos += d.len;
    }
    return out;
}

} // namespace asksport

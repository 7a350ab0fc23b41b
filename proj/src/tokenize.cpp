#include "codejudge/tokenize.hpp"

#include <array>
#include <cctype>

namespace codejudge {

namespace {

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

constexpr std::array<const char*, 35> kMultiOps = {
    "<<=", ">>=", "**=", "//=", "...", "===", "!==", "<=>",
    "==", "!=", "<=", ">=", "->", "=>", "++", "--", "&&", "||",
    "<<", ">>", "**", "//", "+=", "-=", "*=", "/=", "%=", "&=",
    "|=", "^=", "::", "??", "?.", "@=", ":="};

size_t match_multi_op(const std::string& text, size_t pos) {
    size_t best = 0;
    for (const char* op : kMultiOps) {
        size_t len = std::char_traits<char>::length(op);
        if (len <= best || pos + len > text.size()) continue;
        if (text.compare(pos, len, op) == 0) best = len;
    }
    return best;
}

}  // namespace

TokenSequence tokenize_code(const std::string& text, Lang language) {
    TokenSequence seq;
    seq.language = language;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (is_ws(c)) {
            ++i;
            continue;
        }
        size_t start = i;
        if (c == '\'' || c == '"' || c == '`') {
            ++i;
            while (i < n && text[i] != c && text[i] != '\n') {
                if (text[i] == '\\' && i + 1 < n && text[i + 1] != '\n') ++i;
                ++i;
            }
            if (i < n && text[i] == c) ++i;
        } else if (is_ident_start(c)) {
            while (i < n && is_ident_char(text[i])) ++i;
        } else if (is_digit(c)) {
            while (i < n) {
                if (is_ident_char(text[i])) {
                    ++i;
                } else if (text[i] == '.' && i + 1 < n && is_digit(text[i + 1])) {
                    i += 2;
                } else {
                    break;
                }
            }
        } else if (size_t len = match_multi_op(text, i)) {
            i += len;
        } else {
            ++i;
        }
        seq.tokens.push_back(text.substr(start, i - start));
    }
    return seq;
}

std::map<std::string, size_t> token_ngrams(const TokenSequence& seq, size_t n) {
    std::map<std::string, size_t> grams;
    if (n == 0 || seq.tokens.size() < n) return grams;
    for (size_t i = 0; i + n <= seq.tokens.size(); ++i) {
        std::string key = seq.tokens[i];
        for (size_t j = 1; j < n; ++j) {
            key += '\x1f';
            key += seq.tokens[i + j];
        }
        ++grams[key];
    }
    return grams;
}

namespace {

// Splits UTF-8 into code point strings; each invalid byte stands alone.
std::vector<std::string> codepoints_no_ws(const std::string& text) {
    std::vector<std::string> units;
    size_t i = 0;
    while (i < text.size()) {
        unsigned char c = text[i];
        size_t len = 1;
        if (c < 0x80) {
            len = 1;
        } else if ((c >> 5) == 0x6) {
            len = 2;
        } else if ((c >> 4) == 0xe) {
            len = 3;
        } else if ((c >> 3) == 0x1e) {
            len = 4;
        }
        if (i + len > text.size()) len = 1;
        for (size_t j = 1; j < len; ++j)
            if ((static_cast<unsigned char>(text[i + j]) >> 6) != 0x2) {
                len = 1;
                break;
            }
        if (!(len == 1 && is_ws(text[i])))
            units.push_back(text.substr(i, len));
        i += len;
    }
    return units;
}

}  // namespace

std::map<std::string, size_t> char_ngrams(const std::string& text, size_t n) {
    std::map<std::string, size_t> grams;
    auto units = codepoints_no_ws(text);
    if (n == 0 || units.size() < n) return grams;
    for (size_t i = 0; i + n <= units.size(); ++i) {
        std::string key;
        for (size_t j = 0; j < n; ++j) key += units[i + j];
        ++grams[key];
    }
    return grams;
}

size_t char_count_no_ws(const std::string& text) {
    return codepoints_no_ws(text).size();
}

}  // namespace codejudge

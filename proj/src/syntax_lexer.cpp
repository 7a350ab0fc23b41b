#include <array>
#include <cctype>

#include "codejudge/keywords.hpp"
#include "codejudge/syntax.hpp"

namespace codejudge {

namespace {

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

constexpr std::array<const char*, 35> kMultiOps = {
    "<<=", ">>=", "**=", "//=", "...", "===", "!==", "<=>",
    "==", "!=", "<=", ">=", "->", "=>", "++", "--", "&&", "||",
    "<<", ">>", "**", "//", "+=", "-=", "*=", "/=", "%=", "&=",
    "|=", "^=", "::", "??", "?.", "@=", ":="};

bool is_string_prefix(const std::string& text) {
    if (text.size() > 2) return false;
    for (char c : text) {
        char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (l != 'r' && l != 'b' && l != 'f' && l != 'u') return false;
    }
    return !text.empty();
}

}  // namespace

std::vector<LexToken> lex_source(const std::string& source, Lang language) {
    const bool python = language == Lang::python;
    const bool cfamily = !python;
    const auto& kw = keywords(language);
    std::vector<LexToken> out;
    size_t i = 0;
    const size_t n = source.size();

    auto push = [&](LexToken::Kind kind, size_t begin, size_t end) {
        out.push_back({kind, source.substr(begin, end - begin), begin, end});
    };

    while (i < n) {
        char c = source[i];
        if (c == '\n') {
            push(LexToken::Kind::newline, i, i + 1);
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
            ++i;
            continue;
        }
        if (c == '\\' && i + 1 < n && (source[i + 1] == '\n' ||
            (source[i + 1] == '\r' && i + 2 < n && source[i + 2] == '\n'))) {
            i += source[i + 1] == '\n' ? 2 : 3;  // line continuation
            continue;
        }
        if (python && c == '#') {
            while (i < n && source[i] != '\n') ++i;
            continue;
        }
        if (cfamily && c == '/' && i + 1 < n && source[i + 1] == '/') {
            while (i < n && source[i] != '\n') ++i;
            continue;
        }
        if (cfamily && c == '/' && i + 1 < n && source[i + 1] == '*') {
            i += 2;
            while (i + 1 < n && !(source[i] == '*' && source[i + 1] == '/')) ++i;
            i = i + 1 < n ? i + 2 : n;
            continue;
        }

        size_t start = i;
        if (c == '\'' || c == '"' || c == '`') {
            bool triple = python && i + 2 < n && source[i + 1] == c && source[i + 2] == c &&
                          c != '`';
            bool multiline = triple || (c == '`' && language == Lang::javascript);
            size_t qlen = triple ? 3 : 1;
            i += qlen;
            while (i < n) {
                if (source[i] == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (!multiline && source[i] == '\n') break;
                if (source.compare(i, qlen, std::string(qlen, c)) == 0) {
                    i += qlen;
                    break;
                }
                ++i;
            }
            push(LexToken::Kind::string, start, i);
            continue;
        }
        if (is_ident_start(c)) {
            while (i < n && is_ident_char(source[i])) ++i;
            std::string text = source.substr(start, i - start);
            // Python string prefixes: r'...', rb"...", f'...'
            if (python && i < n && (source[i] == '\'' || source[i] == '"') &&
                is_string_prefix(text)) {
                char q = source[i];
                bool triple = i + 2 < n && source[i + 1] == q && source[i + 2] == q;
                size_t qlen = triple ? 3 : 1;
                i += qlen;
                while (i < n) {
                    if (source[i] == '\\' && i + 1 < n) {
                        i += 2;
                        continue;
                    }
                    if (!triple && source[i] == '\n') break;
                    if (source.compare(i, qlen, std::string(qlen, q)) == 0) {
                        i += qlen;
                        break;
                    }
                    ++i;
                }
                push(LexToken::Kind::string, start, i);
                continue;
            }
            push(kw.count(text) ? LexToken::Kind::keyword : LexToken::Kind::ident, start, i);
            continue;
        }
        if (is_digit(c)) {
            while (i < n) {
                if (is_ident_char(source[i])) {
                    ++i;
                } else if (source[i] == '.' && i + 1 < n && is_digit(source[i + 1])) {
                    i += 2;
                } else {
                    break;
                }
            }
            push(LexToken::Kind::number, start, i);
            continue;
        }
        size_t oplen = 1;
        for (const char* op : kMultiOps) {
            size_t len = std::char_traits<char>::length(op);
            if (len > oplen && i + len <= n && source.compare(i, len, op) == 0) oplen = len;
        }
        // Python floats like ".5"
        if (python && c == '.' && i + 1 < n && is_digit(source[i + 1])) {
            ++i;
            while (i < n && (is_ident_char(source[i]) || source[i] == '.')) ++i;
            push(LexToken::Kind::number, start, i);
            continue;
        }
        i += oplen;
        push(LexToken::Kind::op, start, i);
    }
    push(LexToken::Kind::eof, n, n);
    return out;
}

}  // namespace codejudge

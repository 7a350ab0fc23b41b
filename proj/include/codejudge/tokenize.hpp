#pragma once

#include <map>
#include <string>
#include <vector>

#include "codejudge/core.hpp"

namespace codejudge {

struct TokenSequence {
    std::vector<std::string> tokens;
    Lang language = Lang::python;
};

// Deterministic, language-neutral surface tokenizer used by the string
// metrics. Rules, applied left to right:
//   - whitespace separates tokens and never appears inside one;
//   - string literals delimited by ', " or ` stay intact (backslash escapes
//     honored; an unterminated literal ends at end of line);
//   - identifiers [A-Za-z_][A-Za-z0-9_]* stay intact;
//   - numerals stay intact: a leading digit consumes [0-9A-Za-z_] plus a '.'
//     that is directly followed by a digit;
//   - everything else is punctuation: a fixed list of multi-character
//     operators is matched longest-first, otherwise one character per token.
// Case is preserved. Tokens never span lines, so tokenizing a file equals
// tokenizing its lines and concatenating the results.
TokenSequence tokenize_code(const std::string& text, Lang language);

// Multiset of n-grams; keys are the n tokens joined with '\x1f'. The total
// multiplicity is max(0, tokens - n + 1).
std::map<std::string, size_t> token_ngrams(const TokenSequence& seq, size_t n);

// Multiset of character n-grams over the text with all whitespace removed.
// Units are Unicode code points (UTF-8 decoded; each invalid byte counts as
// one unit).
std::map<std::string, size_t> char_ngrams(const std::string& text, size_t n);

// Number of code points in `text` after whitespace removal.
size_t char_count_no_ws(const std::string& text);

}  // namespace codejudge

#include <doctest.h>

#include <random>

#include "codejudge/tokenize.hpp"

using namespace codejudge;

namespace {

std::vector<std::string> toks(const std::string& text) {
    return tokenize_code(text, Lang::python).tokens;
}

}  // namespace

TEST_CASE("whitespace separates and never survives") {
    CHECK(toks("a b\tc\nd") == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(toks("   \n\t ").empty());
    CHECK(toks("").empty());
}

TEST_CASE("string literals stay intact") {
    CHECK(toks("x = 'a b c'") == std::vector<std::string>{"x", "=", "'a b c'"});
    CHECK(toks("\"he said \\\"hi\\\"\"") ==
          std::vector<std::string>{"\"he said \\\"hi\\\"\""});
    CHECK(toks("`tick quoted`") == std::vector<std::string>{"`tick quoted`"});
    // an unterminated literal ends at end of line
    CHECK(toks("'open\nnext") == std::vector<std::string>{"'open", "next"});
}

TEST_CASE("identifiers and numerals stay intact") {
    CHECK(toks("my_var2 = foo_bar") == std::vector<std::string>{"my_var2", "=", "foo_bar"});
    CHECK(toks("3.14") == std::vector<std::string>{"3.14"});
    CHECK(toks("0xFF 1e9 10_000") == std::vector<std::string>{"0xFF", "1e9", "10_000"});
    // a '.' not followed by a digit ends the numeral
    CHECK(toks("1.x") == std::vector<std::string>{"1", ".", "x"});
    CHECK(toks("a.3") == std::vector<std::string>{"a", ".", "3"});
}

TEST_CASE("multi-character operators match longest-first") {
    CHECK(toks("a <<= b") == std::vector<std::string>{"a", "<<=", "b"});
    CHECK(toks("a<<b") == std::vector<std::string>{"a", "<<", "b"});
    CHECK(toks("a===b") == std::vector<std::string>{"a", "===", "b"});
    CHECK(toks("x//=2") == std::vector<std::string>{"x", "//=", "2"});
    CHECK(toks("p->q") == std::vector<std::string>{"p", "->", "q"});
    CHECK(toks("a := b ** c") == std::vector<std::string>{"a", ":=", "b", "**", "c"});
    CHECK(toks("f(x,y)") == std::vector<std::string>{"f", "(", "x", ",", "y", ")"});
}

TEST_CASE("tokenizing a file equals tokenizing its lines concatenated") {
    std::string code = "def f(x):\n    return 'a b' + x ** 2\nprint(f(3))\n";
    auto whole = toks(code);
    std::vector<std::string> joined;
    size_t start = 0;
    while (start <= code.size()) {
        size_t nl = code.find('\n', start);
        std::string line = code.substr(start, nl == std::string::npos ? nl : nl - start);
        auto part = toks(line);
        joined.insert(joined.end(), part.begin(), part.end());
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    CHECK(whole == joined);
}

TEST_CASE("token n-grams count multiplicities") {
    TokenSequence seq = tokenize_code("a b a b a", Lang::python);
    auto uni = token_ngrams(seq, 1);
    CHECK(uni.at("a") == 3);
    CHECK(uni.at("b") == 2);
    auto bi = token_ngrams(seq, 2);
    CHECK(bi.at(std::string("a") + '\x1f' + "b") == 2);
    CHECK(bi.at(std::string("b") + '\x1f' + "a") == 2);
    size_t total = 0;
    for (const auto& [k, v] : bi) total += v;
    CHECK(total == seq.tokens.size() - 1);
    CHECK(token_ngrams(seq, 6).empty());
    CHECK(token_ngrams(seq, 0).empty());
}

TEST_CASE("character n-grams ignore whitespace and decode UTF-8") {
    auto uni = char_ngrams("a b", 1);
    CHECK(uni.size() == 2);
    CHECK(uni.at("a") == 1);
    CHECK(uni.at("b") == 1);
    auto bi = char_ngrams("ab cd", 2);
    CHECK(bi.at("ab") == 1);
    CHECK(bi.at("bc") == 1);
    CHECK(bi.at("cd") == 1);

    // two-byte code points count as single units
    std::string uml = "\xc3\xa4\xc3\xb6";  // "äö"
    CHECK(char_count_no_ws(uml) == 2);
    auto pair = char_ngrams(uml, 2);
    REQUIRE(pair.size() == 1);
    CHECK(pair.begin()->first == uml);

    // an invalid byte counts as one unit
    CHECK(char_count_no_ws("a\xffz") == 3);
    CHECK(char_count_no_ws("  \t\n") == 0);
}

TEST_CASE("total n-gram multiplicity is max(0, units - n + 1)") {
    std::mt19937 rng(99);
    const std::string alphabet = "ab c(=.";
    for (int trial = 0; trial < 50; ++trial) {
        std::string text;
        size_t len = rng() % 20;
        for (size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
        for (size_t n = 1; n <= 4; ++n) {
            size_t total = 0;
            for (const auto& [k, v] : char_ngrams(text, n)) total += v;
            size_t units = char_count_no_ws(text);
            CHECK(total == (units + 1 > n ? units - n + 1 : 0));
        }
    }
}

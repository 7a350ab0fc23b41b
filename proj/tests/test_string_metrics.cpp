#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "codejudge/string_metrics.hpp"

using namespace codejudge;

namespace {

TokenSequence seq(std::vector<std::string> tokens) {
    TokenSequence s;
    s.tokens = std::move(tokens);
    return s;
}

// Exhaustive LCS by recursion, trustworthy for short inputs.
size_t lcs_slow(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    if (a.back() == b.back()) {
        std::vector<std::string> a2(a.begin(), a.end() - 1), b2(b.begin(), b.end() - 1);
        return 1 + lcs_slow(a2, b2);
    }
    std::vector<std::string> a2(a.begin(), a.end() - 1), b2(b.begin(), b.end() - 1);
    return std::max(lcs_slow(a2, b), lcs_slow(a, b2));
}

// chrF re-derived over ASCII-only strings where bytes equal code points.
double chrf_slow(const std::string& cand, const std::string& ref, size_t max_n, double beta) {
    auto strip = [](const std::string& s) {
        std::string out;
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) out += c;
        return out;
    };
    std::string c = strip(cand), r = strip(ref);
    size_t eff = std::min(max_n, std::min(c.size(), r.size()));
    if (eff == 0) return 0.0;
    double psum = 0, rsum = 0;
    for (size_t n = 1; n <= eff; ++n) {
        std::map<std::string, int> cg, rg;
        for (size_t i = 0; i + n <= c.size(); ++i) ++cg[c.substr(i, n)];
        for (size_t i = 0; i + n <= r.size(); ++i) ++rg[r.substr(i, n)];
        int matched = 0, ct = 0, rt = 0;
        for (auto& [g, k] : cg) {
            ct += k;
            if (rg.count(g)) matched += std::min(k, rg[g]);
        }
        for (auto& [g, k] : rg) rt += k;
        psum += ct ? double(matched) / ct : 0.0;
        rsum += rt ? double(matched) / rt : 0.0;
    }
    double p = psum / double(eff), r2 = rsum / double(eff);
    double denom = beta * beta * p + r2;
    return denom > 0 ? (1 + beta * beta) * p * r2 / denom : 0.0;
}

}  // namespace

TEST_CASE("bleu hand oracle: all matched n-grams, short candidate") {
    // p1 = 2/2, p2 = 1/1, p3 and p4 smoothed to 1/(0+1); BP = exp(1 - 4/2)
    auto s = bleu(seq({"a", "b"}), {seq({"a", "b", "c", "d"})});
    CHECK(s.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(s.components.at("p1") == 1.0);
    CHECK(s.components.at("p2") == 1.0);
    CHECK(s.components.at("p3") == 1.0);
    CHECK(s.components.at("brevity_penalty") == doctest::Approx(std::exp(-1.0)));
    CHECK_FALSE(s.degenerate);
}

TEST_CASE("bleu hand oracle: partial overlap") {
    // p1 = 3/5, p2 = 2/4, p3 = 1/3, p4 smoothed to 1/(2+1); BP = 1
    auto s = bleu(seq({"a", "b", "c", "d", "e"}), {seq({"a", "b", "c", "x", "y"})});
    double want = std::pow(0.6 * 0.5 * (1.0 / 3.0) * (1.0 / 3.0), 0.25);
    CHECK(s.value == doctest::Approx(want).epsilon(1e-12));
    CHECK(s.components.at("p4") == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("bleu conventions") {
    SUBCASE("disjoint candidate scores 0: unigram precision is never smoothed") {
        auto s = bleu(seq({"x", "y"}), {seq({"a", "b"})});
        CHECK(s.value == 0.0);
        CHECK(s.components.at("p1") == 0.0);
    }
    SUBCASE("without smoothing any zero precision zeroes the score") {
        auto s = bleu(seq({"a", "x"}), {seq({"a", "b", "c"})}, 4, BleuSmoothing::none);
        CHECK(s.value == 0.0);
    }
    SUBCASE("closest reference length, ties toward shorter") {
        // candidate length 3: distances to 2 and 4 tie, shorter wins, BP = 1
        auto s = bleu(seq({"a", "b", "c"}), {seq({"a", "b"}), seq({"a", "b", "c", "d"})});
        CHECK(s.components.at("brevity_penalty") == 1.0);
        auto t = bleu(seq({"a", "b", "c"}), {seq({"a", "b", "c", "d", "e"})});
        CHECK(t.components.at("brevity_penalty") == doctest::Approx(std::exp(1.0 - 5.0 / 3.0)));
    }
    SUBCASE("clip counts take the per-reference maximum") {
        // "a" appears twice in the second reference, so both candidate copies count
        auto s = bleu(seq({"a", "a"}), {seq({"a", "b"}), seq({"a", "a"})}, 1);
        CHECK(s.components.at("p1") == 1.0);
    }
    SUBCASE("degenerate inputs") {
        CHECK(bleu(seq({}), {seq({"a"})}).degenerate);
        CHECK(bleu(seq({"a"}), {}).degenerate);
        CHECK(bleu(seq({}), {seq({"a"})}).value == 0.0);
    }
    SUBCASE("identity scores 1") {
        auto s = bleu(seq({"a", "b", "c", "d", "e"}), {seq({"a", "b", "c", "d", "e"})});
        CHECK(s.value == doctest::Approx(1.0));
    }
}

TEST_CASE("rouge_l equals the LCS F-score") {
    auto s = rouge_l(seq({"a", "b", "c", "d"}), seq({"a", "c", "b", "d"}));
    CHECK(s.components.at("lcs") == 3.0);
    CHECK(s.value == doctest::Approx(0.75));

    // beta weighs recall: F = (1+b^2) P R / (R + b^2 P)
    auto t = rouge_l(seq({"a", "b"}), seq({"a", "b", "c", "d"}), 2.0);
    double p = 1.0, r = 0.5;
    CHECK(t.value == doctest::Approx(5.0 * p * r / (r + 4.0 * p)));

    CHECK(rouge_l(seq({}), seq({"a"})).degenerate);
    CHECK(rouge_l(seq({"a"}), seq({})).degenerate);
    CHECK(rouge_l(seq({"q", "r"}), seq({"s", "t"})).value == 0.0);
    CHECK(rouge_l(seq({"a", "b", "c"}), seq({"a", "b", "c"})).value == doctest::Approx(1.0));
}

TEST_CASE("lcs_length matches exhaustive recursion on random short pairs") {
    std::mt19937 rng(4242);
    const std::vector<std::string> sym = {"x", "y", "z"};
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::string> a(rng() % 8), b(rng() % 8);
        for (auto& t : a) t = sym[rng() % 3];
        for (auto& t : b) t = sym[rng() % 3];
        CHECK(lcs_length(a, b) == lcs_slow(a, b));
    }
}

TEST_CASE("chrf hand values") {
    CHECK(chrf("ab", "ab").value == doctest::Approx(1.0));
    // bigrams fully miss: P = R = 1/2, beta = 2 gives F = 0.5
    CHECK(chrf("ab", "ba").value == doctest::Approx(0.5));
    // eff_n caps at the shorter side: only unigrams compare
    auto s = chrf("a", "abcdefgh");
    double p = 1.0, r = 1.0 / 8.0;
    CHECK(s.value == doctest::Approx(5.0 * p * r / (4.0 * p + r)));
    // whitespace is invisible
    CHECK(chrf("a b\tc", "abc").value == doctest::Approx(1.0));
    CHECK(chrf("", "abc").degenerate);
    CHECK(chrf("abc", "  ").degenerate);
    CHECK(chrf("", "").degenerate);
}

TEST_CASE("chrf matches an independent re-derivation on random ASCII") {
    std::mt19937 rng(77);
    const std::string alphabet = "abc ()=.";
    for (int trial = 0; trial < 300; ++trial) {
        std::string c, r;
        size_t cl = rng() % 12, rl = rng() % 12;
        for (size_t i = 0; i < cl; ++i) c += alphabet[rng() % alphabet.size()];
        for (size_t i = 0; i < rl; ++i) r += alphabet[rng() % alphabet.size()];
        auto got = chrf(c, r);
        if (got.degenerate) continue;
        CHECK(got.value == doctest::Approx(chrf_slow(c, r, 6, 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("meteor hand values") {
    SUBCASE("identity of length 4") {
        auto s = meteor(seq({"a", "b", "c", "d"}), seq({"a", "b", "c", "d"}));
        CHECK(s.components.at("matches") == 4.0);
        CHECK(s.components.at("chunks") == 1.0);
        CHECK(s.value == doctest::Approx(0.9921875));
    }
    SUBCASE("swapped pair splits into two chunks") {
        auto s = meteor(seq({"a", "b"}), seq({"b", "a"}));
        CHECK(s.components.at("chunks") == 2.0);
        CHECK(s.value == doctest::Approx(0.5));
    }
    SUBCASE("greedy alignment extends the current chunk") {
        auto s = meteor(seq({"a", "b", "c"}), seq({"a", "b", "c"}));
        CHECK(s.components.at("chunks") == 1.0);
        CHECK(s.value == doctest::Approx(1.0 - 0.5 / 27.0));
    }
    SUBCASE("fmean weighs precision") {
        // P = 1/2, R = 1: fmean = P R / (0.9 P + 0.1 R)
        auto s = meteor(seq({"a", "x"}), seq({"a"}));
        double p = 0.5, r = 1.0;
        double fmean = p * r / (0.9 * p + 0.1 * r);
        CHECK(s.components.at("fmean") == doctest::Approx(fmean));
        CHECK(s.value == doctest::Approx(fmean * (1.0 - 0.5)));
    }
    SUBCASE("no matches is degenerate zero") {
        auto s = meteor(seq({"x"}), seq({"y"}));
        CHECK(s.value == 0.0);
        CHECK(s.degenerate);
    }
    SUBCASE("empty sides are degenerate") {
        CHECK(meteor(seq({}), seq({"a"})).degenerate);
        CHECK(meteor(seq({"a"}), seq({})).degenerate);
    }
}

TEST_CASE("levenshtein and token_edit_similarity") {
    CHECK(levenshtein({"k", "i", "t", "t", "e", "n"},
                      {"s", "i", "t", "t", "i", "n", "g"}) == 3);
    CHECK(levenshtein({}, {"a", "b"}) == 2);
    CHECK(levenshtein({"a"}, {"a"}) == 0);

    auto s = token_edit_similarity(seq({"a", "b", "c"}), seq({"a", "x", "c"}));
    CHECK(s.value == doctest::Approx(2.0 / 3.0));
    CHECK(s.components.at("distance") == 1.0);

    auto both_empty = token_edit_similarity(seq({}), seq({}));
    CHECK(both_empty.value == 1.0);
    CHECK(both_empty.degenerate);
    CHECK(token_edit_similarity(seq({}), seq({"a", "b"})).value == 0.0);
}

TEST_CASE("token_edit_similarity is symmetric and bounded") {
    std::mt19937 rng(31);
    const std::vector<std::string> sym = {"p", "q", "r", "s"};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> a(rng() % 10), b(rng() % 10);
        for (auto& t : a) t = sym[rng() % sym.size()];
        for (auto& t : b) t = sym[rng() % sym.size()];
        auto ab = token_edit_similarity(seq(a), seq(b));
        auto ba = token_edit_similarity(seq(b), seq(a));
        CHECK(ab.value == ba.value);
        CHECK(ab.value >= 0.0);
        CHECK(ab.value <= 1.0);
    }
}

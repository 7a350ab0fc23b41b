#include <doctest.h>

#include <fstream>
#include <string>

#include <json.hpp>

#include "codejudge/score_extractor.hpp"
#include "test_util.hpp"

using namespace codejudge;
using testutil::fixture;

TEST_CASE("frozen transcript corpus extracts exactly") {
    std::ifstream in(fixture("extractor_cases.jsonl"));
    REQUIRE(in.good());
    std::string line;
    size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto row = nlohmann::json::parse(line);
        ++rows;
        ExtractionResult got =
            extract_score(row["text"].get<std::string>(), row["task"].get<std::string>());
        INFO("case ", row["id"].get<std::string>());
        CHECK(got.score == row["expected"].get<int>());
        CHECK(extraction_path_name(got.path) == row["expected_path"].get<std::string>());
    }
    CHECK(rows == 148);
}

TEST_CASE("whole-text integers take the direct path") {
    auto r = extract_score("3", "usefulness");
    CHECK(r.score == 3);
    CHECK(r.path == ExtractionPath::direct_int);
    CHECK_FALSE(r.clamped);

    CHECK(extract_score("  4\n", "usefulness").score == 4);
    CHECK(extract_score("  4\n", "usefulness").path == ExtractionPath::direct_int);
    CHECK(extract_score("+2", "functional").score == 2);
    CHECK(extract_score("03", "usefulness").score == 3);

    // out-of-rubric integers clamp, and the pre-clamp value is kept
    auto high = extract_score("10", "usefulness");
    CHECK(high.score == 4);
    CHECK(high.clamped);
    CHECK(high.listing_value == 10);
    auto low = extract_score("-2", "usefulness");
    CHECK(low.score == 0);
    CHECK(low.clamped);
    CHECK(low.listing_value == -2);
}

TEST_CASE("strict mode skips the rubric clamp") {
    auto r = extract_score("10", "usefulness", true);
    CHECK(r.score == 10);
    CHECK_FALSE(r.clamped);
    CHECK(extract_score("-7", "usefulness", true).score == -7);
    CHECK(extract_score("Usefulness score: 9", "usefulness", true).score == 9);
    CHECK(extract_score("Usefulness score: 9", "usefulness", false).score == 4);
}

TEST_CASE("line scan keeps keyword and score lines") {
    auto r = extract_score("The snippet is partially helpful.\nUsefulness score: 3", "usefulness");
    CHECK(r.score == 3);
    CHECK(r.path == ExtractionPath::line_scan);
    REQUIRE(r.matched_lines.size() == 1);
    CHECK(r.matched_lines[0] == "usefulness score: 3");

    // enumeration prefixes are stripped before the keyword filter
    CHECK(extract_score("2. Usefulness score: 4", "usefulness").score == 4);
    // sentences split on ". " and are filtered per piece
    auto s = extract_score("The usefulness is limited. Score: 2", "usefulness");
    CHECK(s.score == 2);
    CHECK(s.matched_lines.size() == 2);
    // parentheses vanish before scanning
    CHECK(extract_score("Usefulness (3)", "usefulness").score == 3);
    // "out of 4" collapses to the bare score
    CHECK(extract_score("Usefulness score: 3 out of 4", "usefulness").score == 3);
    // the functional task keys on "functional"
    CHECK(extract_score("Functional correctness: 2", "functional").score == 2);
    // lines without keyword or "score" are ignored even when numeric
    CHECK(extract_score("The answer is 3.\nUsefulness: 1", "usefulness").score == 1);
}

TEST_CASE("multiple distinct numerals pick the most frequent") {
    CHECK(extract_score("Usefulness: 3\nUsefulness: 2\nScore: 2", "usefulness").score == 2);
    // frequency ties break toward first appearance
    CHECK(extract_score("Usefulness: 3\nScore: 2", "usefulness").score == 3);
    CHECK(extract_score("Score: 2\nUsefulness: 3", "usefulness").score == 2);
}

TEST_CASE("numerals are matched as strings, not values") {
    // "01" and "1" are distinct, so the scan goes to frequency counting
    auto r = extract_score("Usefulness: 1\nScore: 01\nScore: 1", "usefulness");
    CHECK(r.path == ExtractionPath::line_scan);
    CHECK(r.score == 1);
    // all occurrences equal as strings: parsed directly
    auto s = extract_score("Score: 01\nUsefulness: 01", "usefulness");
    CHECK(s.path == ExtractionPath::line_scan);
    CHECK(s.score == 1);
}

TEST_CASE("no numerals fall back on N/A or the ambiguity default") {
    auto na = extract_score("Usefulness score: N/A", "usefulness");
    CHECK(na.score == 0);
    CHECK(na.path == ExtractionPath::na_zero);

    // the N/A test runs on the original text, case intact
    auto lower = extract_score("Usefulness score: n/a", "usefulness");
    CHECK(lower.score == 1);
    CHECK(lower.path == ExtractionPath::ambiguous_one);

    // N/A anywhere in the raw text counts, even outside matched lines
    auto stray = extract_score("N/A\nUsefulness: unknown", "usefulness");
    CHECK(stray.score == 0);
    CHECK(stray.path == ExtractionPath::na_zero);

    auto vague = extract_score("The usefulness is hard to judge.", "usefulness");
    CHECK(vague.score == 1);
    CHECK(vague.path == ExtractionPath::ambiguous_one);

    CHECK(extract_score("", "usefulness").score == 1);
    CHECK(extract_score("", "usefulness").path == ExtractionPath::ambiguous_one);
}

TEST_CASE("numerals beyond the 63-bit range fail to zero") {
    auto direct = extract_score("99999999999999999999999999", "usefulness");
    CHECK(direct.score == 0);
    CHECK(direct.path == ExtractionPath::exception_zero);

    auto scanned = extract_score("Usefulness score: 99999999999999999999999999", "usefulness");
    CHECK(scanned.score == 0);
    CHECK(scanned.path == ExtractionPath::exception_zero);
}

TEST_CASE("every input yields a result; score is in rubric unless strict") {
    const char* inputs[] = {
        "", "\n\n\n", "score", "usefulness", "N/A", "4 or 5",
        "Usefulness: four", "(((", "100000000000000000000 score usefulness",
        "score 2 score 3 score 4 usefulness 2",
    };
    for (const char* text : inputs) {
        auto r = extract_score(text, "usefulness");
        CHECK(r.score >= 0);
        CHECK(r.score <= 4);
    }
}

TEST_CASE("task keywords derive from the criterion") {
    CHECK(task_keyword(Criterion::usefulness) == "usefulness");
    CHECK(task_keyword(Criterion::functional_correctness) == "functional");
}

TEST_CASE("path names are stable") {
    CHECK(std::string(extraction_path_name(ExtractionPath::direct_int)) == "direct_int");
    CHECK(std::string(extraction_path_name(ExtractionPath::line_scan)) == "line_scan");
    CHECK(std::string(extraction_path_name(ExtractionPath::na_zero)) == "na_zero");
    CHECK(std::string(extraction_path_name(ExtractionPath::ambiguous_one)) == "ambiguous_one");
    CHECK(std::string(extraction_path_name(ExtractionPath::exception_zero)) == "exception_zero");
}

#pragma once

#include <string>
#include <vector>

#include "codejudge/prompts.hpp"

namespace codejudge {

// How the score was obtained:
//   direct_int     - the whole text parsed as an integer
//   line_scan      - keyword-filtered line scan found numeral tokens
//   na_zero        - no numerals, original text contains "N/A"
//   ambiguous_one  - no numerals, no "N/A"
//   exception_zero - internal failure (e.g. numeral beyond 63-bit range)
enum class ExtractionPath { direct_int, line_scan, na_zero, ambiguous_one, exception_zero };

const char* extraction_path_name(ExtractionPath path);

struct ExtractionResult {
    int score = 0;                // clamped to [0,4] unless strict
    long long listing_value = 0;  // pre-clamp value
    bool clamped = false;
    ExtractionPath path = ExtractionPath::exception_zero;
    std::vector<std::string> matched_lines;  // kept sub-lines after cleanup
};

// keyword the scan filters on: "usefulness" or "functional"
std::string task_keyword(Criterion criterion);

// Rule-based parser mapping raw judge output (direct score or CoT transcript)
// to an integer score. Total: never throws, every input yields a result.
// Scan order: lowercase a copy, delete parentheses, split into lines, strip
// each line's leading digits/periods/spaces, split on ". ", keep sub-lines
// mentioning the task keyword or "score", strip '.' from both ends, rewrite
// "out of " to "/", delete "/4", then collect whitespace-separated all-digit
// tokens. Multiple distinct numerals pick the most frequent (earliest first
// occurrence breaks ties); none yields 0 when the original-case text contains
// "N/A" and 1 otherwise; a single distinct numeral is returned as-is.
// strict=true skips the [0,4] clamp and reports the listing value verbatim.
ExtractionResult extract_score(const std::string& raw_text, const std::string& task_keyword,
                               bool strict = false);

}  // namespace codejudge

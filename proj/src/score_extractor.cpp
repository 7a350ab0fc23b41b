#include "codejudge/score_extractor.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <utility>

namespace codejudge {

namespace {

const char* const kWhitespace = " \t\n\r\f\v";

bool ascii_digit(char c) { return c >= '0' && c <= '9'; }

bool ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string ascii_lower(std::string text) {
    for (char& c : text)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return text;
}

void erase_all(std::string& text, const std::string& what) {
    size_t at = 0;
    while ((at = text.find(what, at)) != std::string::npos) text.erase(at, what.size());
}

void replace_all(std::string& text, const std::string& what, const std::string& with) {
    size_t at = 0;
    while ((at = text.find(what, at)) != std::string::npos) {
        text.replace(at, what.size(), with);
        at += with.size();
    }
}

// str.split(sep): keeps empty pieces
std::vector<std::string> split_seq(const std::string& text, const std::string& sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (;;) {
        size_t at = text.find(sep, start);
        if (at == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, at - start));
        start = at + sep.size();
    }
}

// str.split(): whitespace runs, no empty pieces
std::vector<std::string> split_ws(const std::string& text) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && ascii_space(text[i])) ++i;
        size_t begin = i;
        while (i < text.size() && !ascii_space(text[i])) ++i;
        if (i > begin) out.push_back(text.substr(begin, i - begin));
    }
    return out;
}

std::string lstrip_set(const std::string& text, const char* set) {
    size_t begin = text.find_first_not_of(set);
    return begin == std::string::npos ? std::string() : text.substr(begin);
}

std::string strip_set(const std::string& text, const char* set) {
    size_t begin = text.find_first_not_of(set);
    if (begin == std::string::npos) return {};
    size_t end = text.find_last_not_of(set);
    return text.substr(begin, end - begin + 1);
}

struct ParsedInt {
    long long value = 0;
    bool overflow = false;
};

// int(text) for ASCII input: optional whitespace, optional sign, digits
std::optional<ParsedInt> parse_int(const std::string& text) {
    std::string core = strip_set(text, kWhitespace);
    size_t i = 0;
    bool negative = false;
    if (!core.empty() && (core[0] == '+' || core[0] == '-')) {
        negative = core[0] == '-';
        i = 1;
    }
    if (i >= core.size()) return std::nullopt;
    ParsedInt out;
    for (; i < core.size(); ++i) {
        if (!ascii_digit(core[i])) return std::nullopt;
        int digit = core[i] - '0';
        if (out.value > (std::numeric_limits<long long>::max() - digit) / 10)
            out.overflow = true;
        if (!out.overflow) out.value = out.value * 10 + digit;
    }
    if (negative) out.value = -out.value;
    return out;
}

bool all_digits(const std::string& token) {
    return !token.empty() && std::all_of(token.begin(), token.end(), ascii_digit);
}

}  // namespace

const char* extraction_path_name(ExtractionPath path) {
    switch (path) {
        case ExtractionPath::direct_int: return "direct_int";
        case ExtractionPath::line_scan: return "line_scan";
        case ExtractionPath::na_zero: return "na_zero";
        case ExtractionPath::ambiguous_one: return "ambiguous_one";
        case ExtractionPath::exception_zero: return "exception_zero";
    }
    return "exception_zero";
}

std::string task_keyword(Criterion criterion) {
    return criterion == Criterion::usefulness ? "usefulness" : "functional";
}

ExtractionResult extract_score(const std::string& raw_text, const std::string& task_keyword,
                               bool strict) {
    ExtractionResult result;
    auto finish = [&](long long value, ExtractionPath path) {
        result.listing_value = value;
        result.path = path;
        long long bounded =
            strict ? std::clamp<long long>(value, std::numeric_limits<int>::min(),
                                           std::numeric_limits<int>::max())
                   : std::clamp<long long>(value, 0, 4);
        result.clamped = !strict && bounded != value;
        result.score = static_cast<int>(bounded);
        return result;
    };
    auto fail = [&] {
        result.path = ExtractionPath::exception_zero;
        result.score = 0;
        result.listing_value = 0;
        result.clamped = false;
        return result;
    };

    if (std::optional<ParsedInt> direct = parse_int(raw_text)) {
        if (direct->overflow) return fail();
        return finish(direct->value, ExtractionPath::direct_int);
    }

    std::string lowered = ascii_lower(raw_text);
    erase_all(lowered, "(");
    erase_all(lowered, ")");
    for (const std::string& line : split_seq(lowered, "\n")) {
        for (const std::string& sub : split_seq(lstrip_set(line, "0123456789. "), ". ")) {
            if (sub.find(task_keyword) == std::string::npos &&
                sub.find("score") == std::string::npos)
                continue;
            std::string cleaned = strip_set(sub, ".");
            replace_all(cleaned, "out of ", "/");
            erase_all(cleaned, "/4");
            result.matched_lines.push_back(std::move(cleaned));
        }
    }

    std::vector<std::string> numerals;
    for (const std::string& line : result.matched_lines)
        for (const std::string& token : split_ws(line))
            if (all_digits(token)) numerals.push_back(token);

    std::set<std::string> distinct(numerals.begin(), numerals.end());
    if (distinct.size() != 1 && numerals.size() > 1) {
        // Counter.most_common: highest count, insertion order breaks ties
        std::vector<std::pair<std::string, size_t>> counts;
        for (const std::string& token : numerals) {
            auto it = std::find_if(counts.begin(), counts.end(),
                                   [&](const auto& entry) { return entry.first == token; });
            if (it == counts.end())
                counts.emplace_back(token, 1);
            else
                ++it->second;
        }
        const auto* best = &counts.front();
        for (const auto& entry : counts)
            if (entry.second > best->second) best = &entry;
        std::optional<ParsedInt> value = parse_int(best->first);
        if (!value || value->overflow) return fail();
        return finish(value->value, ExtractionPath::line_scan);
    }
    if (distinct.size() != 1) {
        if (raw_text.find("N/A") != std::string::npos)
            return finish(0, ExtractionPath::na_zero);
        return finish(1, ExtractionPath::ambiguous_one);
    }
    std::optional<ParsedInt> value = parse_int(numerals.front());
    if (!value || value->overflow) return fail();
    return finish(value->value, ExtractionPath::line_scan);
}

}  // namespace codejudge

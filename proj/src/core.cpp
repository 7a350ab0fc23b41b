#include "codejudge/core.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

namespace codejudge {

using nlohmann::json;

const char* lang_name(Lang lang) {
    switch (lang) {
        case Lang::python: return "python";
        case Lang::java: return "java";
        case Lang::cpp: return "cpp";
        case Lang::c: return "c";
        case Lang::javascript: return "javascript";
    }
    return "?";
}

Lang lang_from_name(const std::string& name) {
    if (name == "python") return Lang::python;
    if (name == "java") return Lang::java;
    if (name == "cpp" || name == "c++") return Lang::cpp;
    if (name == "c") return Lang::c;
    if (name == "javascript" || name == "js") return Lang::javascript;
    throw UnsupportedLanguage(name);
}

uint64_t fnv1a64(const std::string& text) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path);
    return in;
}

// Calls fn(line_number, parsed_json) for every non-empty line.
template <typename Fn>
void for_each_jsonl(const std::string& path, Fn fn) {
    auto in = open_or_throw(path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json row = json::parse(line, nullptr, false);
        if (row.is_discarded())
            throw ParseError(lineno, "invalid JSON");
        if (!row.is_object())
            throw ParseError(lineno, "record is not a JSON object");
        fn(lineno, row);
    }
}

std::string require_string(const json& row, const char* key, size_t lineno) {
    if (!row.contains(key) || !row[key].is_string())
        throw ParseError(lineno, std::string("missing or non-string field '") + key + "'");
    return row[key].get<std::string>();
}

}  // namespace

Dataset load_dataset(const std::string& problems_path,
                     const std::string& generations_path) {
    Dataset ds;
    for_each_jsonl(problems_path, [&](size_t lineno, const json& row) {
        Problem p;
        p.id = require_string(row, "id", lineno);
        if (p.id.empty()) throw ParseError(lineno, "empty problem id");
        p.description = require_string(row, "description", lineno);
        if (p.description.empty()) throw ParseError(lineno, "empty description");
        std::string lang = require_string(row, "language", lineno);
        try {
            p.language = lang_from_name(lang);
        } catch (const UnsupportedLanguage&) {
            throw ParseError(lineno, "unknown language '" + lang + "'");
        }
        if (row.contains("reference") && !row["reference"].is_null()) {
            if (!row["reference"].is_string())
                throw ParseError(lineno, "non-string field 'reference'");
            p.reference = row["reference"].get<std::string>();
        }
        if (!ds.problems.emplace(p.id, p).second)
            throw ParseError(lineno, "duplicate problem id '" + p.id + "'");
    });

    for_each_jsonl(generations_path, [&](size_t lineno, const json& row) {
        GenerationRecord g;
        g.problem_id = require_string(row, "problem_id", lineno);
        if (!row.contains("snippet") || !row["snippet"].is_string())
            throw ParseError(lineno, "missing or non-string field 'snippet'");
        g.snippet = row["snippet"].get<std::string>();
        if (row.contains("human_grade") && !row["human_grade"].is_null()) {
            if (!row["human_grade"].is_number_integer())
                throw ParseError(lineno, "human_grade must be an integer");
            int v = row["human_grade"].get<int>();
            if (v < 0 || v > 4)
                throw ParseError(lineno, "human_grade out of range [0,4]: " + std::to_string(v));
            g.human_grade = v;
        }
        if (row.contains("execution_label") && !row["execution_label"].is_null()) {
            if (!row["execution_label"].is_number_integer())
                throw ParseError(lineno, "execution_label must be an integer");
            int v = row["execution_label"].get<int>();
            if (v != 0 && v != 1)
                throw ParseError(lineno, "execution_label must be 0 or 1, got " + std::to_string(v));
            g.execution_label = v;
        }
        if (row.contains("source_model") && !row["source_model"].is_null())
            g.source_model = require_string(row, "source_model", lineno);
        if (!ds.problems.count(g.problem_id))
            throw DanglingProblemId(g.problem_id);
        ds.generations.push_back(std::move(g));
    });

    std::set<std::string> covered;
    for (const auto& g : ds.generations) covered.insert(g.problem_id);
    for (const auto& [id, p] : ds.problems)
        if (!covered.count(id))
            throw ParseError(0, "problem '" + id + "' has no generations");
    return ds;
}

namespace {

json problem_to_json(const Problem& p) {
    json row{{"id", p.id},
             {"description", p.description},
             {"language", lang_name(p.language)}};
    if (p.reference) row["reference"] = *p.reference;
    return row;
}

json generation_to_json(const GenerationRecord& g) {
    json row{{"problem_id", g.problem_id}, {"snippet", g.snippet}};
    if (g.human_grade) row["human_grade"] = *g.human_grade;
    if (g.execution_label) row["execution_label"] = *g.execution_label;
    if (g.source_model) row["source_model"] = *g.source_model;
    return row;
}

}  // namespace

void save_dataset(const Dataset& dataset,
                  const std::string& problems_path,
                  const std::string& generations_path) {
    std::ofstream pf(problems_path, std::ios::binary);
    if (!pf) throw Error("cannot write " + problems_path);
    for (const auto& [id, p] : dataset.problems)
        pf << problem_to_json(p).dump() << "\n";
    std::ofstream gf(generations_path, std::ios::binary);
    if (!gf) throw Error("cannot write " + generations_path);
    for (const auto& g : dataset.generations)
        gf << generation_to_json(g).dump() << "\n";
}

namespace {

// Unbiased bounded draw via rejection on the top of the 64-bit range; keeps
// results identical everywhere, unlike std::uniform_int_distribution.
uint64_t uniform_below(std::mt19937_64& rng, uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

}  // namespace

Dataset sample_per_problem(const Dataset& dataset, size_t cap, uint64_t seed) {
    if (cap == 0) throw Error("sampling cap must be >= 1");
    std::map<std::string, std::vector<size_t>> by_problem;
    for (size_t i = 0; i < dataset.generations.size(); ++i)
        by_problem[dataset.generations[i].problem_id].push_back(i);

    std::vector<size_t> keep;
    for (const auto& [pid, indices] : by_problem) {
        if (indices.size() <= cap) {
            keep.insert(keep.end(), indices.begin(), indices.end());
            continue;
        }
        std::mt19937_64 rng(seed ^ fnv1a64(pid));
        std::vector<size_t> pool = indices;
        for (size_t k = 0; k < cap; ++k) {
            size_t j = k + static_cast<size_t>(uniform_below(rng, pool.size() - k));
            std::swap(pool[k], pool[j]);
        }
        pool.resize(cap);
        std::sort(pool.begin(), pool.end());
        keep.insert(keep.end(), pool.begin(), pool.end());
    }
    std::sort(keep.begin(), keep.end());

    Dataset out;
    out.name = dataset.name;
    out.problems = dataset.problems;
    out.generations.reserve(keep.size());
    for (size_t i : keep) out.generations.push_back(dataset.generations[i]);
    return out;
}

void convert_humaneval_x(const std::string& tasks_path,
                         const std::optional<std::string>& samples_path,
                         const std::string& out_problems_path,
                         const std::string& out_generations_path,
                         const std::optional<std::string>& language) {
    auto lang_of_task = [&](const std::string& task_id, size_t lineno) -> std::string {
        if (language) return *language;
        auto slash = task_id.find('/');
        if (slash == std::string::npos)
            throw ParseError(lineno, "task_id has no language prefix and no --language given");
        std::string prefix = task_id.substr(0, slash);
        for (auto& c : prefix) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return prefix;
    };

    std::ofstream pf(out_problems_path, std::ios::binary);
    if (!pf) throw Error("cannot write " + out_problems_path);
    for_each_jsonl(tasks_path, [&](size_t lineno, const json& row) {
        Problem p;
        p.id = require_string(row, "task_id", lineno);
        p.description = require_string(row, "prompt", lineno);
        std::string lang = lang_of_task(p.id, lineno);
        try {
            p.language = lang_from_name(lang);
        } catch (const UnsupportedLanguage&) {
            throw ParseError(lineno, "unknown language '" + lang + "'");
        }
        std::string ref;
        if (row.contains("declaration") && row["declaration"].is_string())
            ref = row["declaration"].get<std::string>();
        if (row.contains("canonical_solution") && row["canonical_solution"].is_string())
            ref += row["canonical_solution"].get<std::string>();
        if (!ref.empty()) p.reference = ref;
        pf << problem_to_json(p).dump() << "\n";
    });

    std::ofstream gf(out_generations_path, std::ios::binary);
    if (!gf) throw Error("cannot write " + out_generations_path);
    if (!samples_path) return;
    for_each_jsonl(*samples_path, [&](size_t lineno, const json& row) {
        GenerationRecord g;
        g.problem_id = require_string(row, "task_id", lineno);
        if (row.contains("completion") && row["completion"].is_string())
            g.snippet = row["completion"].get<std::string>();
        else if (row.contains("generation") && row["generation"].is_string())
            g.snippet = row["generation"].get<std::string>();
        else
            throw ParseError(lineno, "sample has neither 'completion' nor 'generation'");
        if (row.contains("passed") && row["passed"].is_boolean())
            g.execution_label = row["passed"].get<bool>() ? 1 : 0;
        else if (row.contains("result") && row["result"].is_string())
            g.execution_label = row["result"].get<std::string>() == "passed" ? 1 : 0;
        if (row.contains("model") && row["model"].is_string())
            g.source_model = row["model"].get<std::string>();
        gf << generation_to_json(g).dump() << "\n";
    });
}

std::vector<ScoreRow> load_scores(const std::string& path) {
    std::vector<ScoreRow> rows;
    for_each_jsonl(path, [&](size_t lineno, const json& row) {
        ScoreRow r;
        if (!row.contains("gen_index") || !row["gen_index"].is_number_unsigned())
            throw ParseError(lineno, "missing or invalid 'gen_index'");
        r.gen_index = row["gen_index"].get<size_t>();
        r.problem_id = require_string(row, "problem_id", lineno);
        r.scorer = require_string(row, "scorer", lineno);
        if (row.contains("value") && row["value"].is_number())
            r.value = row["value"].get<double>();
        if (row.contains("error") && row["error"].is_string())
            r.error = row["error"].get<std::string>();
        if (!r.value && !r.error)
            throw ParseError(lineno, "score row carries neither 'value' nor 'error'");
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (it.key() == "gen_index" || it.key() == "problem_id" ||
                it.key() == "scorer" || it.key() == "value" || it.key() == "error")
                continue;
            if (it.value().is_string()) r.extras[it.key()] = it.value().get<std::string>();
        }
        rows.push_back(std::move(r));
    });
    return rows;
}

void save_scores(const std::vector<ScoreRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    for (const auto& r : rows) {
        json row{{"gen_index", r.gen_index},
                 {"problem_id", r.problem_id},
                 {"scorer", r.scorer}};
        if (r.value) row["value"] = *r.value;
        if (r.error) row["error"] = *r.error;
        for (const auto& [k, v] : r.extras) row[k] = v;
        out << row.dump() << "\n";
    }
}

std::vector<ScoreRow> load_external_scores(const std::string& path,
                                           const Dataset& dataset,
                                           const std::string& scorer_name) {
    struct Row {
        std::string problem_id, snippet;
        double score;
    };
    std::vector<Row> raw;
    for_each_jsonl(path, [&](size_t lineno, const json& row) {
        Row r;
        r.problem_id = require_string(row, "problem_id", lineno);
        r.snippet = require_string(row, "snippet", lineno);
        if (!row.contains("score") || !row["score"].is_number())
            throw ParseError(lineno, "missing or non-numeric field 'score'");
        r.score = row["score"].get<double>();
        raw.push_back(std::move(r));
    });
    if (raw.size() != dataset.generations.size())
        throw Error("external scores file has " + std::to_string(raw.size()) +
                    " rows, dataset has " + std::to_string(dataset.generations.size()));
    std::vector<ScoreRow> rows;
    for (size_t i = 0; i < raw.size(); ++i) {
        const auto& g = dataset.generations[i];
        if (raw[i].problem_id != g.problem_id || raw[i].snippet != g.snippet)
            throw Error("external scores row " + std::to_string(i) +
                        " does not match dataset record (problem '" +
                        raw[i].problem_id + "')");
        ScoreRow r;
        r.gen_index = i;
        r.problem_id = g.problem_id;
        r.scorer = scorer_name;
        r.value = raw[i].score;
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace codejudge

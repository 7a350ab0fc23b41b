#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codejudge/errors.hpp"

namespace codejudge {

enum class Lang { python, java, cpp, c, javascript };

const char* lang_name(Lang lang);
Lang lang_from_name(const std::string& name);

struct Problem {
    std::string id;
    std::string description;
    Lang language = Lang::python;
    std::optional<std::string> reference;
};

struct GenerationRecord {
    std::string problem_id;
    std::string snippet;
    std::optional<int> human_grade;      // 0..4
    std::optional<int> execution_label;  // 0 or 1
    std::optional<std::string> source_model;
};

struct Dataset {
    std::string name;
    std::map<std::string, Problem> problems;
    std::vector<GenerationRecord> generations;
};

// Both files are JSON Lines, one record per line, UTF-8.
// Malformed rows raise ParseError with the 1-based line number; a generation
// whose problem_id has no problem raises DanglingProblemId; a problem with no
// generations violates the Dataset invariant and is rejected.
Dataset load_dataset(const std::string& problems_path,
                     const std::string& generations_path);

void save_dataset(const Dataset& dataset,
                  const std::string& problems_path,
                  const std::string& generations_path);

// Keeps at most `cap` generations per problem, drawn uniformly without
// replacement. Deterministic for a fixed (dataset, cap, seed): each problem
// uses an mt19937_64 engine seeded with seed XOR fnv1a64(problem_id), a
// partial Fisher-Yates shuffle, and rejection-sampled bounded draws; retained
// records keep their original relative order. Idempotent: re-sampling an
// already-sampled dataset with the same cap and seed is a no-op.
Dataset sample_per_problem(const Dataset& dataset, size_t cap, uint64_t seed);

uint64_t fnv1a64(const std::string& text);

// HumanEval-X-style release files -> native schema. Tasks file rows must
// carry task_id, prompt and canonical_solution (declaration, when present, is
// prefixed to the solution); sample rows carry task_id, completion (or
// generation) and passed (or result == "passed"). Language comes from the
// task_id prefix ("Java/0") unless `language` is given.
void convert_humaneval_x(const std::string& tasks_path,
                         const std::optional<std::string>& samples_path,
                         const std::string& out_problems_path,
                         const std::string& out_generations_path,
                         const std::optional<std::string>& language);

// One scorer output row; scores files are JSON Lines of these.
struct ScoreRow {
    size_t gen_index = 0;  // index into Dataset::generations
    std::string problem_id;
    std::string scorer;
    std::optional<double> value;        // absent on failed judge records
    std::optional<std::string> error;   // per-record failure marker
    std::map<std::string, std::string> extras;
};

std::vector<ScoreRow> load_scores(const std::string& path);
void save_scores(const std::vector<ScoreRow>& rows, const std::string& path);

// External scorer adapter: a generations-schema file with an added `score`
// field, aligned against `dataset` by (problem_id, snippet) in order.
std::vector<ScoreRow> load_external_scores(const std::string& path,
                                           const Dataset& dataset,
                                           const std::string& scorer_name);

}  // namespace codejudge

#pragma once

#include <optional>
#include <string>

#include "codejudge/core.hpp"

namespace codejudge {

enum class Criterion { usefulness, functional_correctness };

const char* criterion_name(Criterion c);
Criterion criterion_from_name(const std::string& name);

struct PromptConfig {
    Criterion criterion = Criterion::usefulness;
    bool with_reference = false;
    bool cot = false;
    std::string model = "gpt-3.5-turbo";
    double temperature = 0.0;
    int max_output_tokens = 512;
    int retries = 3;
    // when set, the general instruction travels as a system message instead
    // of leading the user message
    bool instruction_as_system = false;
};

// Verbatim template blocks (embedded copies of data/prompts/*.txt).
const std::string& prompt_instruction();
const std::string& prompt_criteria(Criterion c);
const std::string& prompt_steps(Criterion c, bool with_reference);

// "Step-by-step Evaluation:" under cot, otherwise the direct score request
// ("Usefulness (0-4):" / "Functional Correctness (0-4):").
std::string prompt_tail(Criterion c, bool cot);

// Pure assembly: instruction, criteria, steps, problem, snippet (byte-exact,
// unformatted), optional reference, tail - blocks separated by blank lines.
// Throws MissingReference when with_reference is set but no reference given.
std::string build_prompt(const Problem& problem, const std::string& snippet,
                         const std::optional<std::string>& reference,
                         const PromptConfig& config);

namespace detail {

enum class PromptBlock {
    instruction,
    usefulness_criteria,
    usefulness_steps,
    usefulness_steps_ref,
    functional_criteria,
    functional_steps,
    functional_steps_ref,
};

const char* prompt_block_data(PromptBlock block);

}  // namespace detail

}  // namespace codejudge

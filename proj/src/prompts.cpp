#include "codejudge/prompts.hpp"

#include <array>
#include <mutex>

#include "codejudge/errors.hpp"

namespace codejudge {

namespace {

// asset files end with a newline that is not part of the block text
std::string load_block(detail::PromptBlock block) {
    std::string text = detail::prompt_block_data(block);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
}

const std::string& block(detail::PromptBlock b) {
    static std::array<std::string, 7> cache;
    static std::once_flag once;
    std::call_once(once, [] {
        for (size_t i = 0; i < cache.size(); ++i)
            cache[i] = load_block(static_cast<detail::PromptBlock>(i));
    });
    return cache[static_cast<size_t>(b)];
}

}  // namespace

const char* criterion_name(Criterion c) {
    return c == Criterion::usefulness ? "usefulness" : "functional_correctness";
}

Criterion criterion_from_name(const std::string& name) {
    if (name == "usefulness") return Criterion::usefulness;
    if (name == "functional_correctness" || name == "functional")
        return Criterion::functional_correctness;
    throw Error("unknown criterion '" + name +
                "' (expected usefulness or functional_correctness)");
}

const std::string& prompt_instruction() {
    return block(detail::PromptBlock::instruction);
}

const std::string& prompt_criteria(Criterion c) {
    return block(c == Criterion::usefulness ? detail::PromptBlock::usefulness_criteria
                                            : detail::PromptBlock::functional_criteria);
}

const std::string& prompt_steps(Criterion c, bool with_reference) {
    using B = detail::PromptBlock;
    if (c == Criterion::usefulness)
        return block(with_reference ? B::usefulness_steps_ref : B::usefulness_steps);
    return block(with_reference ? B::functional_steps_ref : B::functional_steps);
}

std::string prompt_tail(Criterion c, bool cot) {
    if (cot) return "Step-by-step Evaluation:";
    return c == Criterion::usefulness ? "Usefulness (0-4):" : "Functional Correctness (0-4):";
}

std::string build_prompt(const Problem& problem, const std::string& snippet,
                         const std::optional<std::string>& reference,
                         const PromptConfig& config) {
    if (config.with_reference && !reference.has_value())
        throw MissingReference(problem.id);

    std::string out;
    auto add = [&](const std::string& text) {
        if (!out.empty()) out += "\n\n";
        out += text;
    };
    add(prompt_instruction());
    add(prompt_criteria(config.criterion));
    add(prompt_steps(config.criterion, config.with_reference));
    add("Problem:\n" + problem.description);
    add("Code Snippet:\n" + snippet);
    if (config.with_reference) add("Reference Code:\n" + *reference);
    add(prompt_tail(config.criterion, config.cot));
    return out;
}

}  // namespace codejudge

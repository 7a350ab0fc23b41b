#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "codejudge/code_metrics.hpp"
#include "codejudge/core.hpp"
#include "codejudge/llm_judge.hpp"
#include "codejudge/meta_eval.hpp"
#include "codejudge/prompts.hpp"
#include "codejudge/report.hpp"
#include "codejudge/score_extractor.hpp"

namespace {

using namespace codejudge;
using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

std::string joined_names(const std::vector<std::string>& names) {
    std::string out;
    for (const std::string& name : names) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

struct MetricsArgs {
    std::string problems, generations, out;
    std::vector<std::string> scorers;
    size_t sample_cap = 0;
    uint64_t sample_seed = 0;
};

int cmd_metrics(const MetricsArgs& args) {
    const std::vector<std::string> known = builtin_scorers();
    const std::vector<std::string>& selected = args.scorers.empty() ? known : args.scorers;
    for (const std::string& name : selected)
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw UsageError("unknown scorer '" + name + "' (available: " +
                             joined_names(known) + ")");

    Dataset dataset = load_dataset(args.problems, args.generations);
    if (args.sample_cap > 0)
        dataset = sample_per_problem(dataset, args.sample_cap, args.sample_seed);

    std::vector<ScoreRow> rows;
    for (const std::string& name : selected) {
        for (size_t i = 0; i < dataset.generations.size(); ++i) {
            const GenerationRecord& gen = dataset.generations[i];
            const Problem& problem = dataset.problems.at(gen.problem_id);
            if (!problem.reference) throw MissingReference(problem.id);
            MetricScore score =
                run_scorer(name, gen.snippet, *problem.reference, problem.language);
            ScoreRow row;
            row.gen_index = i;
            row.problem_id = gen.problem_id;
            row.scorer = name;
            row.value = score.value;
            for (const auto& [key, component] : score.components)
                row.extras[key] = format_double(component);
            if (score.degenerate) row.extras["degenerate"] = "1";
            rows.push_back(std::move(row));
        }
    }
    save_scores(rows, args.out);
    std::cout << "wrote " << rows.size() << " score rows (" << selected.size()
              << " scorers x " << dataset.generations.size() << " generations) to "
              << args.out << "\n";
    return 0;
}

struct JudgeArgs {
    std::string problems, generations;
    std::string criterion = "usefulness";
    bool with_reference = false;
    bool cot = false;
    std::string model = "gpt-3.5-turbo";
    double temperature = 0.0;
    int max_tokens = 512;
    int retries = 3;
    bool instruction_as_system = false;
    std::string client = "live";
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string cache_dir;
    size_t concurrency = 4;
    size_t sample_cap = 0;
    uint64_t sample_seed = 0;
    std::string scores_out;
    std::string transcripts_out;
    std::string scorer_name;
};

int cmd_judge(const JudgeArgs& args) {
    PromptConfig config;
    config.criterion = criterion_from_name(args.criterion);
    config.with_reference = args.with_reference;
    config.cot = args.cot;
    config.model = args.model;
    config.temperature = args.temperature;
    config.max_output_tokens = args.max_tokens;
    config.retries = args.retries;
    config.instruction_as_system = args.instruction_as_system;

    std::unique_ptr<ChatClient> client;
    if (args.client.rfind("mock:", 0) == 0) {
        client = std::make_unique<MockChatClient>(args.client.substr(5));
    } else if (args.client == "live") {
        const char* key = std::getenv("CODEJUDGE_API_KEY");
        if (!key || !*key)
            throw AuthError("CODEJUDGE_API_KEY is not set; refusing to start a live run");
        client = std::make_unique<HttpChatClient>(args.endpoint, key);
    } else {
        throw UsageError("unknown client '" + args.client +
                         "' (expected live or mock:<fixture>)");
    }

    Dataset dataset = load_dataset(args.problems, args.generations);
    if (args.sample_cap > 0)
        dataset = sample_per_problem(dataset, args.sample_cap, args.sample_seed);

    std::optional<JudgeCache> cache;
    if (!args.cache_dir.empty()) cache.emplace(args.cache_dir);

    std::vector<JudgeOutcome> outcomes =
        judge_batch(dataset, config, *client, cache ? &*cache : nullptr, args.concurrency);

    std::string scorer = args.scorer_name;
    if (scorer.empty())
        scorer = std::string("judge_") + criterion_name(config.criterion) +
                 (config.with_reference ? "_ref" : "_noref") +
                 (config.cot ? "_cot" : "_direct");

    const std::string keyword = task_keyword(config.criterion);
    std::vector<ScoreRow> rows;
    std::string transcripts;
    size_t failures = 0;
    for (const JudgeOutcome& outcome : outcomes) {
        ScoreRow row;
        row.gen_index = outcome.gen_index;
        row.problem_id = outcome.problem_id;
        row.scorer = scorer;
        json transcript{{"gen_index", outcome.gen_index},
                        {"problem_id", outcome.problem_id}};
        if (outcome.response) {
            ExtractionResult extracted = extract_score(outcome.response->raw_text, keyword);
            row.value = extracted.score;
            row.extras["path"] = extraction_path_name(extracted.path);
            row.extras["model"] = outcome.response->model;
            row.extras["prompt_hash"] = outcome.response->prompt_hash;
            if (extracted.clamped) {
                row.extras["clamped"] = "1";
                row.extras["listing_value"] = std::to_string(extracted.listing_value);
            }
            transcript["model"] = outcome.response->model;
            transcript["prompt_hash"] = outcome.response->prompt_hash;
            transcript["raw_text"] = outcome.response->raw_text;
        } else {
            ++failures;
            row.error = outcome.error.value_or("judge failed");
            transcript["error"] = *row.error;
        }
        rows.push_back(std::move(row));
        transcripts += transcript.dump();
        transcripts += "\n";
    }
    save_scores(rows, args.scores_out);
    if (!args.transcripts_out.empty()) write_file(args.transcripts_out, transcripts);

    std::cout << "judged " << outcomes.size() << " generations as '" << scorer
              << "'; scores written to " << args.scores_out << "\n";
    if (failures) {
        std::cerr << "warning: " << failures << " of " << outcomes.size()
                  << " records failed\n";
        return 3;
    }
    return 0;
}

std::optional<double> target_value(const GenerationRecord& gen, const std::string& target) {
    if (target == "human_grade") {
        if (gen.human_grade) return static_cast<double>(*gen.human_grade);
        return std::nullopt;
    }
    if (gen.execution_label) return static_cast<double>(*gen.execution_label);
    return std::nullopt;
}

bool target_present(const Dataset& dataset, const std::string& target) {
    return std::any_of(dataset.generations.begin(), dataset.generations.end(),
                       [&](const GenerationRecord& gen) {
                           return target_value(gen, target).has_value();
                       });
}

// pairs every scored record with its target; rows without a value (failed
// judge records) and records without the target drop out
std::vector<ScorerSeries> assemble_series(const Dataset& dataset,
                                          const std::vector<ScoreRow>& rows,
                                          const std::string& target) {
    if (!target_present(dataset, target))
        throw Error("target column '" + target + "' absent from dataset");

    std::vector<std::string> order;
    std::map<std::string, ScorerSeries> by_name;
    for (const ScoreRow& row : rows) {
        if (row.gen_index >= dataset.generations.size())
            throw Error("score row references generation " + std::to_string(row.gen_index) +
                        " beyond dataset size " +
                        std::to_string(dataset.generations.size()));
        if (!by_name.count(row.scorer)) {
            order.push_back(row.scorer);
            by_name[row.scorer].scorer = row.scorer;
        }
        if (!row.value) continue;
        const GenerationRecord& gen = dataset.generations[row.gen_index];
        std::optional<double> y = target_value(gen, target);
        if (!y) continue;
        ScorerSeries& column = by_name[row.scorer];
        column.series.x.push_back(*row.value);
        column.series.y.push_back(*y);
        column.series.group_ids.push_back(gen.problem_id);
    }
    std::vector<ScorerSeries> out;
    out.reserve(order.size());
    for (const std::string& name : order) out.push_back(std::move(by_name[name]));
    return out;
}

struct CorrelateArgs {
    std::string problems, generations;
    std::vector<std::string> scores;
    std::string external_scores, external_name;
    std::string target = "human_grade";
    std::string undefined_groups = "skip";
    std::string out_text, out_csv;
    std::string out_dir;  // report command only
};

std::vector<ScoreRow> load_all_rows(const CorrelateArgs& args, const Dataset& dataset) {
    std::vector<ScoreRow> rows;
    for (const std::string& path : args.scores) {
        std::vector<ScoreRow> part = load_scores(path);
        std::move(part.begin(), part.end(), std::back_inserter(rows));
    }
    if (!args.external_scores.empty()) {
        if (args.external_name.empty())
            throw UsageError("--external-scores needs --external-name");
        std::vector<ScoreRow> part =
            load_external_scores(args.external_scores, dataset, args.external_name);
        std::move(part.begin(), part.end(), std::back_inserter(rows));
    }
    if (rows.empty())
        throw UsageError("no score rows given (use --scores and/or --external-scores)");
    return rows;
}

UndefinedGroupPolicy policy_from_name(const std::string& name) {
    return name == "zero" ? UndefinedGroupPolicy::zero : UndefinedGroupPolicy::skip;
}

int cmd_correlate(const CorrelateArgs& args) {
    Dataset dataset = load_dataset(args.problems, args.generations);
    std::vector<ScoreRow> rows = load_all_rows(args, dataset);
    std::vector<ScorerSeries> columns = assemble_series(dataset, rows, args.target);
    ReportTable table =
        build_report(columns, args.target, policy_from_name(args.undefined_groups));
    std::string text = render_report_text(table);
    std::cout << text;
    if (!args.out_text.empty()) write_file(args.out_text, text);
    if (!args.out_csv.empty()) write_file(args.out_csv, render_report_csv(table));
    return 0;
}

int cmd_report(const CorrelateArgs& args) {
    Dataset dataset = load_dataset(args.problems, args.generations);
    std::vector<ScoreRow> rows = load_all_rows(args, dataset);
    std::filesystem::create_directories(args.out_dir);
    bool any = false;
    for (const char* target : {"human_grade", "execution_label"}) {
        if (!target_present(dataset, target)) continue;
        any = true;
        std::vector<ScorerSeries> columns = assemble_series(dataset, rows, target);
        ReportTable table =
            build_report(columns, target, policy_from_name(args.undefined_groups));
        std::string text = render_report_text(table);
        std::cout << text << "\n";
        std::string stem = args.out_dir + "/report_" + target;
        write_file(stem + ".txt", text);
        write_file(stem + ".csv", render_report_csv(table));
    }
    if (!any) throw Error("dataset carries neither human_grade nor execution_label");
    return 0;
}

struct ExtractArgs {
    std::string task = "usefulness";
    std::string text;
    bool text_given = false;
    bool strict = false;
};

int cmd_extract(const ExtractArgs& args) {
    std::string text = args.text;
    if (!args.text_given) {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    }
    ExtractionResult result = extract_score(text, args.task, args.strict);
    std::cout << result.score << "\t" << extraction_path_name(result.path) << "\n";
    return 0;
}

struct ConvertArgs {
    std::string tasks, samples;
    std::string out_problems, out_generations;
    std::string language;
};

int cmd_convert(const ConvertArgs& args) {
    convert_humaneval_x(args.tasks,
                        args.samples.empty() ? std::nullopt
                                             : std::optional<std::string>(args.samples),
                        args.out_problems, args.out_generations,
                        args.language.empty() ? std::nullopt
                                              : std::optional<std::string>(args.language));
    std::cout << "wrote " << args.out_problems << " and " << args.out_generations << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"code generation evaluation toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file (flags take precedence)");

    MetricsArgs margs;
    CLI::App* metrics = app.add_subcommand("metrics", "score generations with similarity metrics");
    metrics->add_option("--problems", margs.problems, "problems JSONL")->required();
    metrics->add_option("--generations", margs.generations, "generations JSONL")->required();
    metrics->add_option("--out", margs.out, "output scores JSONL")->required();
    metrics->add_option("--scorers", margs.scorers,
                        "comma-separated scorer names (default: all)")
        ->delimiter(',');
    metrics->add_option("--sample-cap", margs.sample_cap, "max generations per problem");
    metrics->add_option("--sample-seed", margs.sample_seed, "sampling seed");

    JudgeArgs jargs;
    CLI::App* judge = app.add_subcommand(
        "judge", "score generations with an LLM judge (credential: CODEJUDGE_API_KEY)");
    judge->add_option("--problems", jargs.problems, "problems JSONL")->required();
    judge->add_option("--generations", jargs.generations, "generations JSONL")->required();
    judge->add_option("--scores-out", jargs.scores_out, "output scores JSONL")->required();
    judge->add_option("--transcripts-out", jargs.transcripts_out, "raw transcripts JSONL");
    judge->add_option("--criterion", jargs.criterion, "usefulness or functional_correctness")
        ->check(CLI::IsMember({"usefulness", "functional_correctness", "functional"}));
    judge->add_flag("--with-reference", jargs.with_reference, "reference-enhanced prompt");
    judge->add_flag("--cot", jargs.cot, "zero-shot chain-of-thought elicitation");
    judge->add_option("--model", jargs.model, "model name");
    judge->add_option("--temperature", jargs.temperature, "sampling temperature");
    judge->add_option("--max-tokens", jargs.max_tokens, "response token budget");
    judge->add_option("--retries", jargs.retries, "transient-error retries")
        ->check(CLI::NonNegativeNumber);
    judge->add_flag("--instruction-as-system", jargs.instruction_as_system,
                    "send the general instruction as a system message");
    judge->add_option("--client", jargs.client, "live or mock:<fixture JSONL>");
    judge->add_option("--endpoint", jargs.endpoint, "chat-completion endpoint URL");
    judge->add_option("--cache", jargs.cache_dir, "response cache directory");
    judge->add_option("--concurrency", jargs.concurrency, "max in-flight requests")
        ->check(CLI::PositiveNumber);
    judge->add_option("--sample-cap", jargs.sample_cap, "max generations per problem");
    judge->add_option("--sample-seed", jargs.sample_seed, "sampling seed");
    judge->add_option("--scorer-name", jargs.scorer_name,
                      "scorer label in the output (default derived from the config)");

    CorrelateArgs cargs;
    CLI::App* correlate =
        app.add_subcommand("correlate", "correlate scores with a target column");
    correlate->add_option("--problems", cargs.problems, "problems JSONL")->required();
    correlate->add_option("--generations", cargs.generations, "generations JSONL")->required();
    correlate->add_option("--scores", cargs.scores, "scores JSONL (repeatable)");
    correlate->add_option("--external-scores", cargs.external_scores,
                          "generations-schema file with a score field");
    correlate->add_option("--external-name", cargs.external_name,
                          "scorer label for --external-scores");
    correlate->add_option("--target", cargs.target, "human_grade or execution_label")
        ->check(CLI::IsMember({"human_grade", "execution_label"}));
    correlate->add_option("--undefined-groups", cargs.undefined_groups,
                          "skip or zero (constant groups at example level)")
        ->check(CLI::IsMember({"skip", "zero"}));
    correlate->add_option("--out-text", cargs.out_text, "write the plain-text table here");
    correlate->add_option("--out-csv", cargs.out_csv, "write the CSV table here");

    CorrelateArgs rargs;
    rargs.out_dir = ".";
    CLI::App* report =
        app.add_subcommand("report", "emit tables for every target the dataset carries");
    report->add_option("--problems", rargs.problems, "problems JSONL")->required();
    report->add_option("--generations", rargs.generations, "generations JSONL")->required();
    report->add_option("--scores", rargs.scores, "scores JSONL (repeatable)");
    report->add_option("--external-scores", rargs.external_scores,
                       "generations-schema file with a score field");
    report->add_option("--external-name", rargs.external_name,
                       "scorer label for --external-scores");
    report->add_option("--undefined-groups", rargs.undefined_groups,
                       "skip or zero (constant groups at example level)")
        ->check(CLI::IsMember({"skip", "zero"}));
    report->add_option("--out-dir", rargs.out_dir, "directory for report_<target>.{txt,csv}");

    ExtractArgs eargs;
    CLI::App* extract =
        app.add_subcommand("extract", "parse a score from judge text (stdin or --text)");
    extract->add_option("--task", eargs.task, "keyword: usefulness or functional")
        ->check(CLI::IsMember({"usefulness", "functional"}));
    CLI::Option* text_opt = extract->add_option("--text", eargs.text, "text to parse");
    extract->add_flag("--strict", eargs.strict, "skip the [0,4] clamp");

    ConvertArgs vargs;
    CLI::App* convert = app.add_subcommand("convert", "import HumanEval-X-style files");
    convert->add_option("--tasks", vargs.tasks, "tasks JSONL")->required();
    convert->add_option("--samples", vargs.samples, "samples JSONL with pass labels");
    convert->add_option("--out-problems", vargs.out_problems, "output problems JSONL")
        ->required();
    convert->add_option("--out-generations", vargs.out_generations,
                        "output generations JSONL")
        ->required();
    convert->add_option("--language", vargs.language,
                        "override the language inferred from task ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (metrics->parsed()) return cmd_metrics(margs);
        if (judge->parsed()) return cmd_judge(jargs);
        if (correlate->parsed()) return cmd_correlate(cargs);
        if (report->parsed()) return cmd_report(rargs);
        if (extract->parsed()) {
            eargs.text_given = text_opt->count() > 0;
            return cmd_extract(eargs);
        }
        if (convert->parsed()) return cmd_convert(vargs);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

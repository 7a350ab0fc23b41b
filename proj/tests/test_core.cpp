#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include <json.hpp>

#include "codejudge/core.hpp"
#include "test_util.hpp"

using namespace codejudge;
using testutil::fixture;
using testutil::fresh_dir;
using testutil::read_file;
using testutil::write_file;

namespace {

Dataset load_fixture() {
    return load_dataset(fixture("fixture_problems.jsonl"),
                        fixture("fixture_generations.jsonl"));
}

}  // namespace

TEST_CASE("fixture dataset loads with every field in place") {
    Dataset ds = load_fixture();
    CHECK(ds.problems.size() == 5);
    CHECK(ds.generations.size() == 25);

    const Problem& p2 = ds.problems.at("p2");
    CHECK(p2.description == "check if all elements in list `myList` are identical");
    CHECK(p2.language == Lang::python);
    REQUIRE(p2.reference.has_value());
    CHECK(*p2.reference == "all(x == myList[0] for x in myList)");

    CHECK(ds.generations[0].problem_id == "p0");
    CHECK(ds.generations[0].human_grade == 0);
    CHECK(ds.generations[4].snippet == "os.kill(os.getpid(), signal.SIGUSR1)");
    CHECK(ds.generations[4].human_grade == 3);
    CHECK_FALSE(ds.generations[0].execution_label.has_value());
    CHECK_FALSE(ds.generations[0].source_model.has_value());
}

TEST_CASE("dataset save/load round-trips") {
    Dataset ds = load_fixture();
    auto dir = fresh_dir("core_roundtrip");
    save_dataset(ds, (dir / "p.jsonl").string(), (dir / "g.jsonl").string());
    Dataset back = load_dataset((dir / "p.jsonl").string(), (dir / "g.jsonl").string());
    REQUIRE(back.problems.size() == ds.problems.size());
    REQUIRE(back.generations.size() == ds.generations.size());
    for (const auto& [id, p] : ds.problems) {
        const Problem& q = back.problems.at(id);
        CHECK(q.description == p.description);
        CHECK(q.language == p.language);
        CHECK(q.reference == p.reference);
    }
    for (size_t i = 0; i < ds.generations.size(); ++i) {
        CHECK(back.generations[i].problem_id == ds.generations[i].problem_id);
        CHECK(back.generations[i].snippet == ds.generations[i].snippet);
        CHECK(back.generations[i].human_grade == ds.generations[i].human_grade);
        CHECK(back.generations[i].execution_label == ds.generations[i].execution_label);
        CHECK(back.generations[i].source_model == ds.generations[i].source_model);
    }
}

TEST_CASE("malformed rows raise ParseError with the 1-based line number") {
    auto dir = fresh_dir("core_parse");
    auto probs = dir / "p.jsonl";
    auto gens = dir / "g.jsonl";
    write_file(gens, "{\"problem_id\": \"a\", \"snippet\": \"x\"}\n");

    SUBCASE("invalid JSON") {
        write_file(probs, "{\"id\": \"a\", \"description\": \"d\", \"language\": \"python\"}\nnot json\n");
        try {
            load_dataset(probs.string(), gens.string());
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
        }
    }
    SUBCASE("missing field") {
        write_file(probs, "{\"id\": \"a\", \"language\": \"python\"}\n");
        try {
            load_dataset(probs.string(), gens.string());
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 1);
            CHECK(e.reason.find("description") != std::string::npos);
        }
    }
    SUBCASE("unknown language") {
        write_file(probs, "{\"id\": \"a\", \"description\": \"d\", \"language\": \"cobol\"}\n");
        CHECK_THROWS_AS(load_dataset(probs.string(), gens.string()), ParseError);
    }
    SUBCASE("duplicate problem id") {
        write_file(probs,
                   "{\"id\": \"a\", \"description\": \"d\", \"language\": \"python\"}\n"
                   "{\"id\": \"a\", \"description\": \"e\", \"language\": \"python\"}\n");
        try {
            load_dataset(probs.string(), gens.string());
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
        }
    }
    SUBCASE("human_grade out of range") {
        write_file(probs, "{\"id\": \"a\", \"description\": \"d\", \"language\": \"python\"}\n");
        write_file(gens, "{\"problem_id\": \"a\", \"snippet\": \"x\", \"human_grade\": 5}\n");
        CHECK_THROWS_AS(load_dataset(probs.string(), gens.string()), ParseError);
    }
    SUBCASE("blank lines and CRLF are tolerated") {
        write_file(probs, "{\"id\": \"a\", \"description\": \"d\", \"language\": \"python\"}\r\n\n");
        write_file(gens, "\n{\"problem_id\": \"a\", \"snippet\": \"x\"}\r\n");
        Dataset ds = load_dataset(probs.string(), gens.string());
        CHECK(ds.generations.size() == 1);
    }
}

TEST_CASE("generation referencing an unknown problem raises DanglingProblemId") {
    auto dir = fresh_dir("core_dangling");
    write_file(dir / "p.jsonl", "{\"id\": \"a\", \"description\": \"d\", \"language\": \"python\"}\n");
    write_file(dir / "g.jsonl",
               "{\"problem_id\": \"a\", \"snippet\": \"x\"}\n"
               "{\"problem_id\": \"ghost\", \"snippet\": \"y\"}\n");
    try {
        load_dataset((dir / "p.jsonl").string(), (dir / "g.jsonl").string());
        FAIL("expected DanglingProblemId");
    } catch (const DanglingProblemId& e) {
        CHECK(e.id == "ghost");
    }
}

TEST_CASE("a problem with no generations is rejected") {
    auto dir = fresh_dir("core_empty_problem");
    write_file(dir / "p.jsonl",
               "{\"id\": \"a\", \"description\": \"d\", \"language\": \"python\"}\n"
               "{\"id\": \"b\", \"description\": \"d\", \"language\": \"python\"}\n");
    write_file(dir / "g.jsonl", "{\"problem_id\": \"a\", \"snippet\": \"x\"}\n");
    CHECK_THROWS_AS(
        load_dataset((dir / "p.jsonl").string(), (dir / "g.jsonl").string()),
        ParseError);
}

TEST_CASE("missing files raise FileNotFound") {
    CHECK_THROWS_AS(load_dataset("/nonexistent/p.jsonl", "/nonexistent/g.jsonl"),
                    FileNotFound);
}

TEST_CASE("fnv1a64 matches published test vectors") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

namespace {

// Re-derivation of the documented sampling contract: per problem, an
// mt19937_64 seeded with seed ^ fnv1a64(problem_id), a partial Fisher-Yates
// over the problem's generation indices using rejection-sampled bounded
// draws, the first `cap` picks kept in original order.
std::vector<size_t> oracle_keep(const std::vector<size_t>& indices, size_t cap,
                                uint64_t seed, const std::string& pid) {
    if (indices.size() <= cap) return indices;
    std::mt19937_64 rng(seed ^ fnv1a64(pid));
    auto draw_below = [&](uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do v = rng(); while (v >= limit);
        return v % n;
    };
    std::vector<size_t> pool = indices;
    for (size_t k = 0; k < cap; ++k)
        std::swap(pool[k], pool[k + static_cast<size_t>(draw_below(pool.size() - k))]);
    pool.resize(cap);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

TEST_CASE("sampling matches the documented per-problem draw") {
    Dataset ds = load_fixture();
    for (uint64_t seed : {0ull, 7ull, 8ull, 123456789ull}) {
        Dataset sampled = sample_per_problem(ds, 3, seed);
        std::vector<size_t> expect;
        std::map<std::string, std::vector<size_t>> by_problem;
        for (size_t i = 0; i < ds.generations.size(); ++i)
            by_problem[ds.generations[i].problem_id].push_back(i);
        for (const auto& [pid, idx] : by_problem) {
            auto kept = oracle_keep(idx, 3, seed, pid);
            expect.insert(expect.end(), kept.begin(), kept.end());
        }
        std::sort(expect.begin(), expect.end());
        REQUIRE(sampled.generations.size() == expect.size());
        for (size_t i = 0; i < expect.size(); ++i) {
            const auto& want = ds.generations[expect[i]];
            CHECK(sampled.generations[i].problem_id == want.problem_id);
            CHECK(sampled.generations[i].snippet == want.snippet);
        }
    }
}

TEST_CASE("sampling is deterministic, seed-sensitive and idempotent") {
    Dataset ds = load_fixture();
    Dataset a = sample_per_problem(ds, 2, 7);
    Dataset b = sample_per_problem(ds, 2, 7);
    REQUIRE(a.generations.size() == b.generations.size());
    CHECK(a.generations.size() == 10);
    bool identical = true;
    for (size_t i = 0; i < a.generations.size(); ++i)
        identical = identical && a.generations[i].snippet == b.generations[i].snippet &&
                    a.generations[i].problem_id == b.generations[i].problem_id;
    CHECK(identical);

    Dataset c = sample_per_problem(ds, 2, 8);
    bool same_as_other_seed = c.generations.size() == a.generations.size();
    if (same_as_other_seed)
        for (size_t i = 0; i < a.generations.size(); ++i)
            same_as_other_seed =
                same_as_other_seed && a.generations[i].snippet == c.generations[i].snippet;
    CHECK_FALSE(same_as_other_seed);

    Dataset again = sample_per_problem(a, 2, 7);
    REQUIRE(again.generations.size() == a.generations.size());
    for (size_t i = 0; i < a.generations.size(); ++i)
        CHECK(again.generations[i].snippet == a.generations[i].snippet);
}

TEST_CASE("sampling keeps order, respects the cap and rejects cap 0") {
    Dataset ds = load_fixture();
    CHECK_THROWS_AS(sample_per_problem(ds, 0, 1), Error);

    Dataset whole = sample_per_problem(ds, 100, 42);
    REQUIRE(whole.generations.size() == ds.generations.size());
    for (size_t i = 0; i < ds.generations.size(); ++i)
        CHECK(whole.generations[i].snippet == ds.generations[i].snippet);

    Dataset one = sample_per_problem(ds, 1, 5);
    CHECK(one.generations.size() == 5);
    std::set<std::string> pids;
    for (const auto& g : one.generations) pids.insert(g.problem_id);
    CHECK(pids.size() == 5);

    // retained records keep their original relative order
    Dataset three = sample_per_problem(ds, 3, 11);
    size_t cursor = 0;
    for (const auto& g : three.generations) {
        while (cursor < ds.generations.size() &&
               ds.generations[cursor].snippet != g.snippet)
            ++cursor;
        CHECK(cursor < ds.generations.size());
    }
}

TEST_CASE("score rows round-trip through JSONL with extras") {
    auto dir = fresh_dir("core_scores");
    std::vector<ScoreRow> rows(3);
    rows[0] = {0, "p0", "bleu", 0.25, std::nullopt, {{"bp", "1"}}};
    rows[1] = {1, "p0", "bleu", std::nullopt, "boom", {}};
    rows[2] = {2, "p1", "judge_usefulness_noref_cot", 4.0, std::nullopt,
               {{"path", "line_scan"}, {"model", "gpt-3.5-turbo"}}};
    save_scores(rows, (dir / "s.jsonl").string());
    auto back = load_scores((dir / "s.jsonl").string());
    REQUIRE(back.size() == 3);
    CHECK(back[0].gen_index == 0);
    CHECK(back[0].value == 0.25);
    CHECK(back[0].extras.at("bp") == "1");
    CHECK_FALSE(back[1].value.has_value());
    CHECK(back[1].error == "boom");
    CHECK(back[2].scorer == "judge_usefulness_noref_cot");
    CHECK(back[2].extras.at("path") == "line_scan");

    write_file(dir / "bad.jsonl", "{\"gen_index\": 0, \"problem_id\": \"p\", \"scorer\": \"s\"}\n");
    CHECK_THROWS_AS(load_scores((dir / "bad.jsonl").string()), ParseError);
}

TEST_CASE("external scores align by order against the dataset") {
    Dataset ds = load_fixture();
    auto dir = fresh_dir("core_external");
    std::string good, short_file, misaligned;
    for (size_t i = 0; i < ds.generations.size(); ++i) {
        const auto& g = ds.generations[i];
        nlohmann::json row{{"problem_id", g.problem_id},
                           {"snippet", g.snippet},
                           {"score", 0.01 * static_cast<double>(i)}};
        good += row.dump() + "\n";
        if (i < 10) short_file += row.dump() + "\n";
        nlohmann::json bad = row;
        if (i == 3) bad["snippet"] = "something else";
        misaligned += bad.dump() + "\n";
    }
    write_file(dir / "good.jsonl", good);
    auto rows = load_external_scores((dir / "good.jsonl").string(), ds, "codebertscore");
    REQUIRE(rows.size() == 25);
    CHECK(rows[7].gen_index == 7);
    CHECK(rows[7].scorer == "codebertscore");
    CHECK(*rows[7].value == doctest::Approx(0.07));

    write_file(dir / "short.jsonl", short_file);
    CHECK_THROWS_AS(load_external_scores((dir / "short.jsonl").string(), ds, "x"), Error);
    write_file(dir / "mis.jsonl", misaligned);
    CHECK_THROWS_AS(load_external_scores((dir / "mis.jsonl").string(), ds, "x"), Error);
}

TEST_CASE("HumanEval-X release files convert to the native schema") {
    auto dir = fresh_dir("core_convert");
    write_file(dir / "tasks.jsonl",
               "{\"task_id\": \"Java/0\", \"prompt\": \"sum two ints\", "
               "\"declaration\": \"int add(int a, int b) {\\n\", "
               "\"canonical_solution\": \"  return a + b;\\n}\\n\"}\n"
               "{\"task_id\": \"Java/1\", \"prompt\": \"noop\", "
               "\"canonical_solution\": \"{}\"}\n");
    write_file(dir / "samples.jsonl",
               "{\"task_id\": \"Java/0\", \"completion\": \"return a+b;\", \"passed\": true}\n"
               "{\"task_id\": \"Java/0\", \"generation\": \"return 0;\", \"passed\": false}\n"
               "{\"task_id\": \"Java/1\", \"completion\": \"x\", \"result\": \"passed\", "
               "\"model\": \"m1\"}\n"
               "{\"task_id\": \"Java/1\", \"completion\": \"y\", \"result\": \"failed: bad\"}\n");

    SUBCASE("language inferred from the task_id prefix") {
        convert_humaneval_x((dir / "tasks.jsonl").string(), (dir / "samples.jsonl").string(),
                            (dir / "p.jsonl").string(), (dir / "g.jsonl").string(),
                            std::nullopt);
        Dataset ds = load_dataset((dir / "p.jsonl").string(), (dir / "g.jsonl").string());
        REQUIRE(ds.problems.size() == 2);
        const Problem& p0 = ds.problems.at("Java/0");
        CHECK(p0.language == Lang::java);
        CHECK(p0.description == "sum two ints");
        CHECK(*p0.reference == "int add(int a, int b) {\n  return a + b;\n}\n");
        CHECK(*ds.problems.at("Java/1").reference == "{}");
        REQUIRE(ds.generations.size() == 4);
        CHECK(ds.generations[0].snippet == "return a+b;");
        CHECK(ds.generations[0].execution_label == 1);
        CHECK(ds.generations[1].snippet == "return 0;");
        CHECK(ds.generations[1].execution_label == 0);
        CHECK(ds.generations[2].execution_label == 1);
        CHECK(ds.generations[2].source_model == "m1");
        CHECK(ds.generations[3].execution_label == 0);
    }
    SUBCASE("explicit language overrides the prefix") {
        convert_humaneval_x((dir / "tasks.jsonl").string(), (dir / "samples.jsonl").string(),
                            (dir / "p.jsonl").string(), (dir / "g.jsonl").string(),
                            std::string("python"));
        Dataset ds = load_dataset((dir / "p.jsonl").string(), (dir / "g.jsonl").string());
        CHECK(ds.problems.at("Java/0").language == Lang::python);
    }
    SUBCASE("no samples file leaves the generations file empty") {
        convert_humaneval_x((dir / "tasks.jsonl").string(), std::nullopt,
                            (dir / "p.jsonl").string(), (dir / "g.jsonl").string(),
                            std::nullopt);
        CHECK(read_file(dir / "g.jsonl").empty());
        CHECK_FALSE(read_file(dir / "p.jsonl").empty());
    }
    SUBCASE("prefix-free task_id without --language is an error") {
        write_file(dir / "bare.jsonl", "{\"task_id\": \"0\", \"prompt\": \"p\", "
                                       "\"canonical_solution\": \"x\"}\n");
        CHECK_THROWS_AS(
            convert_humaneval_x((dir / "bare.jsonl").string(), std::nullopt,
                                (dir / "p.jsonl").string(), (dir / "g.jsonl").string(),
                                std::nullopt),
            ParseError);
    }
}

TEST_CASE("language names round-trip and reject unknowns") {
    for (Lang l : {Lang::python, Lang::java, Lang::cpp, Lang::c, Lang::javascript})
        CHECK(lang_from_name(lang_name(l)) == l);
    CHECK(lang_from_name("c++") == Lang::cpp);
    CHECK(lang_from_name("js") == Lang::javascript);
    CHECK_THROWS_AS(lang_from_name("fortran"), UnsupportedLanguage);
}

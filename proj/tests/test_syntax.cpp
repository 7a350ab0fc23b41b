#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "codejudge/syntax.hpp"

using namespace codejudge;

namespace {

const std::vector<std::pair<std::string, Lang>> kSnippets = {
    {"x = 1", Lang::python},
    {"a = 0\na = a + 1\nb = a", Lang::python},
    {"def f(x):\n    if x > 0:\n        return x * 2\n    return -x\n", Lang::python},
    {"for i in range(10):\n    total += i\n", Lang::python},
    {"result = [y ** 2 for y in values if y != 0]", Lang::python},
    {"print('a b c'.join(parts))", Lang::python},
    {"int add(int a, int b) {\n  return a + b;\n}\n", Lang::c},
    {"for (int i = 0; i < n; ++i) { sum += v[i]; }", Lang::cpp},
    {"public static int f(int x) { return x < 0 ? -x : x; }", Lang::java},
    {"const f = (a, b) => a + b;\nlet x = f(1, 2);", Lang::javascript},
    {"while (true) { break; }", Lang::cpp},
    {"def f(:", Lang::python},
    {"int broken( {", Lang::c},
    {"}} )( nonsense ][", Lang::javascript},
};

std::vector<const SyntaxNode*> leaves_in_order(const SyntaxNode& root) {
    std::vector<const SyntaxNode*> out;
    walk_preorder(root, [&](const SyntaxNode& n, size_t) {
        if (n.is_leaf()) out.push_back(&n);
    });
    return out;
}

bool trees_equal(const SyntaxNode& a, const SyntaxNode& b) {
    if (a.kind != b.kind || a.begin != b.begin || a.end != b.end) return false;
    if (a.children.size() != b.children.size()) return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!trees_equal(a.children[i], b.children[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("spans nest properly and siblings stay ordered") {
    for (const auto& [code, lang] : kSnippets) {
        SyntaxTree tree = parse_tree(code, lang);
        walk_preorder(tree.root, [&](const SyntaxNode& n, size_t) {
            CHECK(n.begin <= n.end);
            CHECK(n.end <= code.size());
            size_t cursor = n.begin;
            for (const auto& c : n.children) {
                CHECK(c.begin >= cursor);
                CHECK(c.end <= n.end);
                cursor = c.end;
            }
        });
    }
}

TEST_CASE("every lexed token appears as a leaf covering its text") {
    for (const auto& [code, lang] : kSnippets) {
        SyntaxTree tree = parse_tree(code, lang);
        auto toks = lex_source(code, lang);
        std::vector<const LexToken*> real;
        for (const auto& t : toks)
            if (t.kind != LexToken::Kind::newline && t.kind != LexToken::Kind::eof)
                real.push_back(&t);
        auto leaves = leaves_in_order(tree.root);
        REQUIRE(leaves.size() == real.size());
        for (size_t i = 0; i < real.size(); ++i) {
            CHECK(leaves[i]->begin == real[i]->begin);
            CHECK(leaves[i]->end == real[i]->end);
            CHECK(code.substr(leaves[i]->begin, leaves[i]->end - leaves[i]->begin) ==
                  real[i]->text);
        }
    }
}

TEST_CASE("x = 1 parses to an assignment under the module") {
    SyntaxTree tree = parse_tree("x = 1", Lang::python);
    CHECK(tree.root.kind == "module");
    CHECK_FALSE(tree.has_errors);
    REQUIRE(tree.root.children.size() == 1);
    CHECK(tree.root.children[0].kind == "assign");
    auto leaves = leaves_in_order(tree.root);
    REQUIRE(leaves.size() == 3);
    CHECK(leaves[0]->kind == "id");
    CHECK(leaves[1]->kind == "op:=");
    CHECK(leaves[2]->kind == "num");
}

TEST_CASE("broken statements become flagged error nodes, never a crash") {
    for (const auto& code : {"def f(:", "if while else", ") ( ] ["}) {
        SyntaxTree tree = parse_tree(code, Lang::python);
        CHECK(tree.has_errors);
        size_t errors = 0;
        walk_preorder(tree.root, [&](const SyntaxNode& n, size_t) {
            if (n.kind == "error") ++errors;
        });
        CHECK(errors >= 1);
    }
    SyntaxTree clean = parse_tree("x = 1\ny = x + 2\n", Lang::python);
    CHECK_FALSE(clean.has_errors);
}

TEST_CASE("parsing is deterministic") {
    for (const auto& [code, lang] : kSnippets) {
        SyntaxTree a = parse_tree(code, lang);
        SyntaxTree b = parse_tree(code, lang);
        CHECK(trees_equal(a.root, b.root));
        CHECK(a.has_errors == b.has_errors);
    }
}

TEST_CASE("shape_label collapses name and literal leaves") {
    SyntaxTree tree = parse_tree("total = count + 'x'", Lang::python);
    auto leaves = leaves_in_order(tree.root);
    REQUIRE(leaves.size() == 5);
    CHECK(shape_label(*leaves[0]) == "id");
    CHECK(shape_label(*leaves[1]) == "op:=");
    CHECK(shape_label(*leaves[2]) == "id");
    CHECK(shape_label(*leaves[3]) == "op:+");
    CHECK(shape_label(*leaves[4]) == "str");
    CHECK(shape_label(tree.root) == "module");

    // alpha-renaming preserves the shape-labeled structure
    SyntaxTree renamed = parse_tree("sum2 = n + 'x'", Lang::python);
    std::vector<std::string> a, b;
    walk_preorder(tree.root, [&](const SyntaxNode& n, size_t d) {
        a.push_back(std::to_string(d) + ":" + shape_label(n));
    });
    walk_preorder(renamed.root, [&](const SyntaxNode& n, size_t d) {
        b.push_back(std::to_string(d) + ":" + shape_label(n));
    });
    CHECK(a == b);
}

TEST_CASE("count_nodes counts the whole tree") {
    SyntaxNode leaf{"id", 0, 1, {}};
    CHECK(count_nodes(leaf) == 1);
    SyntaxTree tree = parse_tree("x = 1", Lang::python);
    // module, assign, and three leaves
    CHECK(count_nodes(tree.root) == 5);
}

TEST_CASE("comments never reach the tree") {
    SyntaxTree with = parse_tree("x = 1  # set x\n", Lang::python);
    SyntaxTree without = parse_tree("x = 1\n", Lang::python);
    CHECK(leaves_in_order(with.root).size() == leaves_in_order(without.root).size());

    SyntaxTree c_with = parse_tree("int x = 1; // set\n/* block */ int y = 2;", Lang::c);
    auto leaves = leaves_in_order(c_with.root);
    for (const auto* l : leaves) {
        std::string text = c_with.source.substr(l->begin, l->end - l->begin);
        CHECK(text.find("set") == std::string::npos);
        CHECK(text.find("block") == std::string::npos);
    }
}

TEST_CASE("binary operators carry their operator in the kind") {
    SyntaxTree tree = parse_tree("z = a * b + c", Lang::python);
    bool saw_add = false, saw_mul = false;
    walk_preorder(tree.root, [&](const SyntaxNode& n, size_t) {
        if (n.kind == "binop:+") saw_add = true;
        if (n.kind == "binop:*") saw_mul = true;
    });
    CHECK(saw_add);
    CHECK(saw_mul);
}

#pragma once

#include <string>
#include <vector>

#include "codejudge/core.hpp"

namespace codejudge {

// Lexical token produced by the parse-time lexer (comments are skipped).
struct LexToken {
    enum class Kind { ident, keyword, number, string, op, newline, eof };
    Kind kind = Kind::eof;
    std::string text;
    size_t begin = 0, end = 0;  // byte span in the source
};

std::vector<LexToken> lex_source(const std::string& source, Lang language);

// Best-effort concrete syntax tree. Internal nodes carry a structural kind;
// leaves correspond to lexed tokens and their spans cover the token text
// exactly. A statement the parser cannot make sense of becomes an "error"
// node holding its tokens as leaves; parsing never throws on arbitrary text.
struct SyntaxNode {
    std::string kind;
    size_t begin = 0, end = 0;
    std::vector<SyntaxNode> children;

    bool is_leaf() const { return children.empty(); }
};

struct SyntaxTree {
    SyntaxNode root;
    bool has_errors = false;
    std::string source;
    Lang language = Lang::python;
};

SyntaxTree parse_tree(const std::string& source, Lang language);

// Label used for structural matching: identifier and literal leaves collapse
// to their class ("id", "num", "str"), operator/keyword leaves keep their
// text, internal nodes keep their kind.
std::string shape_label(const SyntaxNode& node);

size_t count_nodes(const SyntaxNode& node);

// Walks the tree in preorder; fn receives (node, depth).
template <typename Fn>
void walk_preorder(const SyntaxNode& node, Fn&& fn, size_t depth = 0) {
    fn(node, depth);
    for (const auto& c : node.children) walk_preorder(c, fn, depth + 1);
}

}  // namespace codejudge

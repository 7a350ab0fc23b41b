#pragma once

#include <string>
#include <vector>

#include "codejudge/syntax.hpp"

namespace codejudge::detail {

struct ParseFail {};

SyntaxNode leaf(const LexToken& tok);
SyntaxNode make_node(std::string kind, std::vector<SyntaxNode> children);

// Pratt expression parser over a token slice [pos, hi). Throws ParseFail on
// structurally broken input; the statement layer catches and wraps the slice
// in an error node.
class ExprParser {
  public:
    ExprParser(const std::vector<LexToken>& toks, size_t pos, size_t hi, Lang lang)
        : toks_(toks), pos_(pos), hi_(hi), lang_(lang) {}

    SyntaxNode parse_expr(int min_prec = 1);
    SyntaxNode parse_expr_list(const char* list_kind = "expr_list");
    SyntaxNode parse_paren_group(const char* kind) { return parse_group('(', ')', kind); }

    size_t pos() const { return pos_; }
    bool done() const { return pos_ >= hi_; }

  private:
    const LexToken& peek(size_t ahead = 0) const;
    bool peek_is(const char* text, size_t ahead = 0) const;
    SyntaxNode take();  // consume current token as leaf
    SyntaxNode expect(const char* text);

    SyntaxNode parse_primary();
    SyntaxNode parse_postfix(SyntaxNode base);
    SyntaxNode parse_group(char open, char close, const char* kind);
    SyntaxNode parse_comprehension_clauses(SyntaxNode head, const char* kind,
                                           const char* close_text);
    int binary_prec(const LexToken& tok) const;
    bool is_unary(const LexToken& tok) const;

    const std::vector<LexToken>& toks_;
    size_t pos_, hi_;
    Lang lang_;
};

SyntaxNode error_node(const std::vector<LexToken>& toks, size_t lo, size_t hi);

SyntaxTree parse_python(const std::string& source);
SyntaxTree parse_cfamily(const std::string& source, Lang language);

}  // namespace codejudge::detail

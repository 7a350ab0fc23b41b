#include <algorithm>

#include "codejudge/syntax.hpp"
#include "syntax_internal.hpp"

namespace codejudge::detail {

namespace {

struct Line {
    size_t indent = 0;
    std::vector<LexToken> toks;
};

bool opens(const std::string& t) { return t == "(" || t == "[" || t == "{"; }
bool closes(const std::string& t) { return t == ")" || t == "]" || t == "}"; }

std::vector<Line> logical_lines(const std::vector<LexToken>& toks) {
    std::vector<Line> lines;
    Line cur;
    size_t depth = 0, line_start = 0;
    for (const auto& tok : toks) {
        if (tok.kind == LexToken::Kind::eof) break;
        if (tok.kind == LexToken::Kind::newline) {
            if (depth == 0 && !cur.toks.empty()) {
                lines.push_back(std::move(cur));
                cur = {};
            }
            line_start = tok.end;
            continue;
        }
        if (tok.kind == LexToken::Kind::op) {
            if (opens(tok.text)) ++depth;
            if (closes(tok.text) && depth > 0) --depth;
        }
        if (cur.toks.empty()) cur.indent = tok.begin - line_start;
        cur.toks.push_back(tok);
    }
    if (!cur.toks.empty()) lines.push_back(std::move(cur));
    return lines;
}

bool is_kw(const LexToken& t, const char* text) {
    return t.kind == LexToken::Kind::keyword && t.text == text;
}

bool is_op(const LexToken& t, const char* text) {
    return t.kind == LexToken::Kind::op && t.text == text;
}

const char* kCompound[] = {"if", "elif", "else", "for", "while", "def", "class",
                           "with", "try", "except", "finally", "match", "case"};

const char* kAugOps[] = {"+=", "-=", "*=", "/=", "//=", "**=", "%=",
                         "&=", "|=", "^=", "<<=", ">>=", "@="};

class PythonParser {
  public:
    explicit PythonParser(const std::string& source) : source_(source) {}

    SyntaxTree run() {
        auto toks = lex_source(source_, Lang::python);
        lines_ = logical_lines(toks);
        SyntaxTree tree;
        tree.source = source_;
        tree.language = Lang::python;
        size_t idx = 0;
        std::vector<SyntaxNode> stmts;
        while (idx < lines_.size()) stmts.push_back(parse_line(idx));
        tree.root = make_node("module", std::move(stmts));
        tree.root.end = source_.size();
        tree.has_errors = has_errors_;
        return tree;
    }

  private:
    // Statements of one logical line, plus a nested suite when it is a
    // compound header. Advances idx past everything consumed.
    SyntaxNode parse_line(size_t& idx) {
        const Line& line = lines_[idx];
        size_t my_indent = line.indent;
        ++idx;
        auto parts = split_top(line.toks, ";");
        std::vector<SyntaxNode> stmts;
        for (auto& [lo, hi] : parts) {
            if (lo == hi) continue;
            stmts.push_back(parse_statement(line.toks, lo, hi, my_indent, idx));
        }
        if (stmts.empty()) return make_node("empty", {});
        if (stmts.size() == 1) return std::move(stmts.front());
        return make_node("stmt_group", std::move(stmts));
    }

    SyntaxNode parse_statement(const std::vector<LexToken>& toks, size_t lo, size_t hi,
                               size_t indent, size_t& idx) {
        try {
            const LexToken& first = toks[lo];
            if (first.kind == LexToken::Kind::keyword) {
                for (const char* kw : kCompound)
                    if (first.text == kw) {
                        long colon = find_top(toks, lo, hi, ":");
                        if (colon >= 0)
                            return parse_compound(toks, lo, hi, static_cast<size_t>(colon),
                                                  indent, idx);
                        break;
                    }
            }
            return parse_simple(toks, lo, hi);
        } catch (const ParseFail&) {
            has_errors_ = true;
            return error_node(toks, lo, hi);
        }
    }

    SyntaxNode parse_compound(const std::vector<LexToken>& toks, size_t lo, size_t hi,
                              size_t colon, size_t indent, size_t& idx) {
        const std::string& kw = toks[lo].text;
        std::vector<SyntaxNode> children;
        children.push_back(leaf(toks[lo]));
        size_t p = lo + 1;

        if (kw == "def" || kw == "class") {
            if (p < colon && toks[p].kind == LexToken::Kind::ident)
                children.push_back(leaf(toks[p++]));
            if (p < colon && is_op(toks[p], "(")) {
                ExprParser ep(toks, p, colon, Lang::python);
                children.push_back(ep.parse_paren_group(kw == "def" ? "params" : "bases"));
                p = ep.pos();
            }
            if (p < colon && is_op(toks[p], "->")) {
                children.push_back(leaf(toks[p++]));
                ExprParser ep(toks, p, colon, Lang::python);
                children.push_back(ep.parse_expr());
                p = ep.pos();
            }
            if (p != colon) throw ParseFail{};
        } else if (kw == "for") {
            long in_pos = find_top_kw(toks, p, colon, "in");
            if (in_pos < 0) throw ParseFail{};
            children.push_back(parse_expr_slice(toks, p, static_cast<size_t>(in_pos),
                                                "target_list"));
            children.push_back(leaf(toks[in_pos]));
            children.push_back(parse_expr_slice(toks, in_pos + 1, colon, "iter_list"));
        } else if (kw == "if" || kw == "elif" || kw == "while" || kw == "match" ||
                   kw == "case" || kw == "with" || kw == "except") {
            if (p < colon) {
                size_t q = p;
                // strip 'as name' tail (with/except)
                long as_pos = find_top_kw(toks, p, colon, "as");
                size_t expr_end = as_pos >= 0 ? static_cast<size_t>(as_pos) : colon;
                children.push_back(parse_expr_slice(toks, q, expr_end, "cond_list"));
                if (as_pos >= 0) {
                    children.push_back(leaf(toks[as_pos]));
                    for (size_t r = as_pos + 1; r < colon; ++r)
                        children.push_back(leaf(toks[r]));
                }
            }
        } else {  // else, try, finally
            if (p != colon) throw ParseFail{};
        }

        children.push_back(leaf(toks[colon]));
        if (colon + 1 < hi) {
            // inline suite on the header line
            std::vector<SyntaxNode> stmts;
            for (auto& [slo, shi] : split_top(toks, ";", colon + 1, hi)) {
                if (slo == shi) continue;
                size_t dummy = idx;
                stmts.push_back(parse_statement(toks, slo, shi, 0, dummy));
            }
            children.push_back(make_node("suite", std::move(stmts)));
        } else {
            children.push_back(parse_suite(indent, idx));
        }
        return make_node(kw + "_stmt", std::move(children));
    }

    SyntaxNode parse_suite(size_t header_indent, size_t& idx) {
        std::vector<SyntaxNode> stmts;
        if (idx < lines_.size() && lines_[idx].indent > header_indent) {
            size_t block_indent = lines_[idx].indent;
            while (idx < lines_.size() && lines_[idx].indent >= block_indent)
                stmts.push_back(parse_line(idx));
        }
        return make_node("suite", std::move(stmts));
    }

    SyntaxNode parse_simple(const std::vector<LexToken>& toks, size_t lo, size_t hi) {
        const LexToken& first = toks[lo];
        if (first.kind == LexToken::Kind::keyword) {
            const std::string& t = first.text;
            if (t == "pass" || t == "break" || t == "continue")
                return make_node(t + "_stmt", {leaf(first)});
            if (t == "import" || t == "from") {
                std::vector<SyntaxNode> children;
                for (size_t p = lo; p < hi; ++p) children.push_back(leaf(toks[p]));
                return make_node("import_stmt", std::move(children));
            }
            if (t == "global" || t == "nonlocal") {
                std::vector<SyntaxNode> children;
                for (size_t p = lo; p < hi; ++p) children.push_back(leaf(toks[p]));
                return make_node(t + "_stmt", std::move(children));
            }
            if (t == "return" || t == "raise" || t == "assert" || t == "del" ||
                t == "yield" || t == "await") {
                std::vector<SyntaxNode> children{leaf(first)};
                if (lo + 1 < hi)
                    children.push_back(parse_expr_slice(toks, lo + 1, hi, "expr_list"));
                return make_node(t + "_stmt", std::move(children));
            }
        }
        if (is_op(first, "@")) {
            std::vector<SyntaxNode> children{leaf(first)};
            if (lo + 1 < hi)
                children.push_back(parse_expr_slice(toks, lo + 1, hi, "expr_list"));
            return make_node("decorator", std::move(children));
        }

        for (const char* aug : kAugOps) {
            long p = find_top(toks, lo, hi, aug);
            if (p >= 0) {
                std::vector<SyntaxNode> children;
                children.push_back(parse_expr_slice(toks, lo, static_cast<size_t>(p),
                                                    "target_list"));
                children.push_back(leaf(toks[p]));
                children.push_back(parse_expr_slice(toks, p + 1, hi, "expr_list"));
                return make_node("aug_assign", std::move(children));
            }
        }

        // annotated name: ident ':' annotation ['=' value]
        if (hi - lo >= 3 && first.kind == LexToken::Kind::ident && is_op(toks[lo + 1], ":")) {
            std::vector<SyntaxNode> children{leaf(first), leaf(toks[lo + 1])};
            long e = find_top(toks, lo + 2, hi, "=");
            size_t ann_end = e >= 0 ? static_cast<size_t>(e) : hi;
            if (lo + 2 < ann_end)
                children.push_back(parse_expr_slice(toks, lo + 2, ann_end, "annotation"));
            if (e >= 0) {
                children.push_back(leaf(toks[e]));
                children.push_back(parse_expr_slice(toks, e + 1, hi, "expr_list"));
            }
            return make_node("ann_assign", std::move(children));
        }

        std::vector<size_t> eqs;
        for (size_t p = lo, depth = 0; p < hi; ++p) {
            if (toks[p].kind != LexToken::Kind::op) continue;
            if (opens(toks[p].text)) ++depth;
            else if (closes(toks[p].text) && depth > 0) --depth;
            else if (depth == 0 && toks[p].text == "=") eqs.push_back(p);
        }
        if (!eqs.empty()) {
            std::vector<SyntaxNode> children;
            size_t seg = lo;
            for (size_t e : eqs) {
                children.push_back(parse_expr_slice(toks, seg, e, "target_list"));
                children.push_back(leaf(toks[e]));
                seg = e + 1;
            }
            children.push_back(parse_expr_slice(toks, seg, hi, "expr_list"));
            return make_node("assign", std::move(children));
        }

        return make_node("expr_stmt", {parse_expr_slice(toks, lo, hi, "expr_list")});
    }

    SyntaxNode parse_expr_slice(const std::vector<LexToken>& toks, size_t lo, size_t hi,
                                const char* list_kind) {
        if (lo >= hi) throw ParseFail{};
        ExprParser ep(toks, lo, hi, Lang::python);
        SyntaxNode node = ep.parse_expr_list(list_kind);
        if (!ep.done()) throw ParseFail{};
        return node;
    }

    static std::vector<std::pair<size_t, size_t>> split_top(
        const std::vector<LexToken>& toks, const char* sep,
        size_t lo = 0, size_t hi = SIZE_MAX) {
        if (hi == SIZE_MAX) hi = toks.size();
        std::vector<std::pair<size_t, size_t>> parts;
        size_t depth = 0, start = lo;
        for (size_t p = lo; p < hi; ++p) {
            if (toks[p].kind != LexToken::Kind::op) continue;
            if (opens(toks[p].text)) ++depth;
            else if (closes(toks[p].text) && depth > 0) --depth;
            else if (depth == 0 && toks[p].text == sep) {
                parts.emplace_back(start, p);
                start = p + 1;
            }
        }
        parts.emplace_back(start, hi);
        return parts;
    }

    static long find_top(const std::vector<LexToken>& toks, size_t lo, size_t hi,
                         const char* text) {
        size_t depth = 0;
        for (size_t p = lo; p < hi; ++p) {
            if (toks[p].kind == LexToken::Kind::op) {
                if (opens(toks[p].text)) { ++depth; continue; }
                if (closes(toks[p].text) && depth > 0) { --depth; continue; }
            }
            if (depth == 0 && toks[p].text == text &&
                toks[p].kind == LexToken::Kind::op)
                return static_cast<long>(p);
        }
        return -1;
    }

    static long find_top_kw(const std::vector<LexToken>& toks, size_t lo, size_t hi,
                            const char* text) {
        size_t depth = 0;
        for (size_t p = lo; p < hi; ++p) {
            if (toks[p].kind == LexToken::Kind::op) {
                if (opens(toks[p].text)) ++depth;
                else if (closes(toks[p].text) && depth > 0) --depth;
                continue;
            }
            if (depth == 0 && toks[p].kind == LexToken::Kind::keyword &&
                toks[p].text == text)
                return static_cast<long>(p);
        }
        return -1;
    }

    std::string source_;
    std::vector<Line> lines_;
    bool has_errors_ = false;
};

}  // namespace

SyntaxTree parse_python(const std::string& source) {
    return PythonParser(source).run();
}

}  // namespace codejudge::detail

#include "codejudge/syntax.hpp"

#include <algorithm>

#include "syntax_internal.hpp"

namespace codejudge {

namespace detail {

SyntaxNode leaf(const LexToken& tok) {
    SyntaxNode node;
    switch (tok.kind) {
        case LexToken::Kind::ident: node.kind = "id"; break;
        case LexToken::Kind::number: node.kind = "num"; break;
        case LexToken::Kind::string: node.kind = "str"; break;
        case LexToken::Kind::keyword: node.kind = "kw:" + tok.text; break;
        default: node.kind = "op:" + tok.text; break;
    }
    node.begin = tok.begin;
    node.end = tok.end;
    return node;
}

SyntaxNode make_node(std::string kind, std::vector<SyntaxNode> children) {
    SyntaxNode node;
    node.kind = std::move(kind);
    node.children = std::move(children);
    if (!node.children.empty()) {
        node.begin = node.children.front().begin;
        node.end = node.children.back().end;
        for (const auto& c : node.children) {
            node.begin = std::min(node.begin, c.begin);
            node.end = std::max(node.end, c.end);
        }
    }
    return node;
}

SyntaxNode error_node(const std::vector<LexToken>& toks, size_t lo, size_t hi) {
    std::vector<SyntaxNode> leaves;
    for (size_t i = lo; i < hi; ++i)
        if (toks[i].kind != LexToken::Kind::newline && toks[i].kind != LexToken::Kind::eof)
            leaves.push_back(leaf(toks[i]));
    return make_node("error", std::move(leaves));
}

namespace {

const LexToken kEof{LexToken::Kind::eof, "", 0, 0};

bool text_in(const std::string& t, std::initializer_list<const char*> set) {
    for (const char* s : set)
        if (t == s) return true;
    return false;
}

}  // namespace

const LexToken& ExprParser::peek(size_t ahead) const {
    return pos_ + ahead < hi_ ? toks_[pos_ + ahead] : kEof;
}

bool ExprParser::peek_is(const char* text, size_t ahead) const {
    return peek(ahead).text == text && peek(ahead).kind != LexToken::Kind::string;
}

SyntaxNode ExprParser::take() {
    if (pos_ >= hi_) throw ParseFail{};
    return leaf(toks_[pos_++]);
}

SyntaxNode ExprParser::expect(const char* text) {
    if (!peek_is(text)) throw ParseFail{};
    return take();
}

bool ExprParser::is_unary(const LexToken& tok) const {
    if (tok.kind == LexToken::Kind::op)
        return text_in(tok.text, {"-", "+", "~", "!", "*", "**", "&", "++", "--"});
    if (tok.kind == LexToken::Kind::keyword) {
        if (lang_ == Lang::python) return tok.text == "not" || tok.text == "await";
        return text_in(tok.text, {"new", "delete", "typeof", "void", "await", "throw",
                                  "not", "compl", "sizeof", "co_await"});
    }
    return false;
}

int ExprParser::binary_prec(const LexToken& tok) const {
    const std::string& t = tok.text;
    if (tok.kind == LexToken::Kind::keyword) {
        if (lang_ == Lang::python) {
            if (t == "or") return 2;
            if (t == "and") return 3;
            if (t == "in" || t == "is") return 5;
            return 0;
        }
        if (t == "instanceof" || t == "in" || t == "of") return 7;
        if (t == "and") return 3;  // cpp alternative tokens
        if (t == "or") return 2;
        return 0;
    }
    if (tok.kind != LexToken::Kind::op) return 0;
    if (lang_ == Lang::python) {
        if (t == ":=") return 1;
        if (text_in(t, {"==", "!=", "<", ">", "<=", ">="})) return 5;
        if (t == "|") return 6;
        if (t == "^") return 7;
        if (t == "&") return 8;
        if (t == "<<" || t == ">>") return 9;
        if (t == "+" || t == "-") return 10;
        if (text_in(t, {"*", "/", "//", "%", "@"})) return 11;
        if (t == "**") return 13;
        return 0;
    }
    if (text_in(t, {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", "**="}))
        return 1;
    if (t == "=>") return 1;
    if (t == "??") return 2;
    if (t == "||") return 2;
    if (t == "&&") return 3;
    if (t == "|") return 4;
    if (t == "^") return 5;
    if (t == "&") return 6;
    if (text_in(t, {"==", "!=", "===", "!==", "<=>"})) return 7;
    if (text_in(t, {"<", ">", "<=", ">="})) return 8;
    if (t == "<<" || t == ">>") return 9;
    if (t == "+" || t == "-") return 10;
    if (text_in(t, {"*", "/", "%"})) return 11;
    if (t == "**") return 13;
    return 0;
}

SyntaxNode ExprParser::parse_group(char open, char close, const char* kind) {
    std::vector<SyntaxNode> children;
    children.push_back(take());  // the opener
    std::string close_s(1, close);
    bool python = lang_ == Lang::python;
    while (!done() && !peek_is(close_s.c_str())) {
        if (python && peek().kind == LexToken::Kind::keyword && peek().text == "for") {
            SyntaxNode head = make_node(kind, std::move(children));
            return parse_comprehension_clauses(std::move(head), kind, close_s.c_str());
        }
        if (peek_is(",") || peek_is(":") || peek_is(";")) {
            children.push_back(take());
            continue;
        }
        size_t before = pos_;
        try {
            children.push_back(parse_expr());
        } catch (const ParseFail&) {
            // tolerate non-expression material (statement keywords in js
            // arrow bodies, C declarator noise): keep the raw token
            pos_ = before;
            children.push_back(take());
        }
    }
    if (done()) throw ParseFail{};
    children.push_back(take());  // the closer
    return make_node(kind, std::move(children));
}

// `head` holds the opener and element expression(s); consumes the trailing
// for/in/if clauses and the closing bracket.
SyntaxNode ExprParser::parse_comprehension_clauses(SyntaxNode head, const char* kind,
                                                   const char* close_text) {
    std::vector<SyntaxNode> children = std::move(head.children);
    while (!done() && !peek_is(close_text)) {
        if (peek().kind == LexToken::Kind::keyword &&
            (peek().text == "for" || peek().text == "if" || peek().text == "async")) {
            if (peek().text == "for") {
                children.push_back(take());
                std::vector<SyntaxNode> target;
                while (!done() && !(peek().kind == LexToken::Kind::keyword && peek().text == "in")) {
                    if (peek_is(",")) {
                        target.push_back(take());
                        continue;
                    }
                    target.push_back(parse_expr(12));  // bind tighter than 'in'
                }
                children.push_back(make_node("comp_target", std::move(target)));
                if (done()) throw ParseFail{};
                children.push_back(take());  // 'in'
                children.push_back(parse_expr(6));
            } else {
                children.push_back(take());
                children.push_back(parse_expr(2));
            }
        } else if (peek_is(",")) {
            children.push_back(take());
        } else {
            children.push_back(parse_expr());
        }
    }
    if (done()) throw ParseFail{};
    children.push_back(take());
    return make_node(std::string("comprehension_") + kind, std::move(children));
}

SyntaxNode ExprParser::parse_primary() {
    if (done()) throw ParseFail{};
    const LexToken& tok = peek();
    if (tok.kind == LexToken::Kind::ident) return take();
    if (tok.kind == LexToken::Kind::number) return take();
    if (tok.kind == LexToken::Kind::string) {
        SyntaxNode first = take();
        if (lang_ == Lang::python && peek().kind == LexToken::Kind::string) {
            std::vector<SyntaxNode> parts{std::move(first)};
            while (peek().kind == LexToken::Kind::string) parts.push_back(take());
            return make_node("str_concat", std::move(parts));
        }
        return first;
    }
    if (tok.kind == LexToken::Kind::keyword) {
        const std::string& t = tok.text;
        if (lang_ == Lang::python) {
            if (text_in(t, {"None", "True", "False", "match", "case"})) return take();
            if (t == "lambda") {
                std::vector<SyntaxNode> children{take()};
                while (!done() && !peek_is(":")) {
                    if (peek_is(",")) {
                        children.push_back(take());
                        continue;
                    }
                    children.push_back(parse_expr(2));
                }
                if (done()) throw ParseFail{};
                children.push_back(take());  // ':'
                children.push_back(parse_expr(2));
                return make_node("lambda", std::move(children));
            }
            if (t == "yield") {
                std::vector<SyntaxNode> children{take()};
                if (!done() && !peek_is(")") && !peek_is(",") && !peek_is("]"))
                    children.push_back(parse_expr(2));
                return make_node("yield_expr", std::move(children));
            }
        } else {
            if (text_in(t, {"true", "false", "null", "nullptr", "this", "undefined",
                            "super", "int", "long", "short", "char", "float", "double",
                            "bool", "boolean", "byte", "void", "unsigned", "signed",
                            "var", "let", "const", "static", "auto", "function"}))
                return take();
        }
        if (is_unary(tok)) {
            SyntaxNode op = take();
            SyntaxNode operand = parse_expr(12);
            return make_node("unary", {std::move(op), std::move(operand)});
        }
        throw ParseFail{};
    }
    // operators
    if (tok.text == "(") {
        SyntaxNode group = parse_group('(', ')', "paren");
        // C-style cast: a parenthesized group directly followed by a primary
        if (lang_ != Lang::python && lang_ != Lang::javascript && !done()) {
            const LexToken& next = peek();
            bool starts_primary = next.kind == LexToken::Kind::ident ||
                                  next.kind == LexToken::Kind::number ||
                                  next.kind == LexToken::Kind::string ||
                                  (next.kind == LexToken::Kind::op && is_unary(next));
            if (starts_primary)
                return make_node("cast", {std::move(group), parse_expr(12)});
        }
        return group;
    }
    if (tok.text == "[") {
        SyntaxNode group = parse_group('[', ']', lang_ == Lang::python ? "list" : "bracket");
        if (lang_ == Lang::cpp && peek_is("(")) {
            // lambda introducer: captures, parameters, body handled by postfix/caller
            return make_node("lambda_head", {std::move(group)});
        }
        return group;
    }
    if (tok.text == "{") return parse_group('{', '}', lang_ == Lang::python ? "dict" : "braced");
    if (is_unary(tok)) {
        SyntaxNode op = take();
        SyntaxNode operand = parse_expr(12);
        return make_node("unary", {std::move(op), std::move(operand)});
    }
    if (tok.text == "*" || tok.text == "**") {  // star-args in call position
        SyntaxNode op = take();
        SyntaxNode operand = parse_expr(12);
        return make_node("unary", {std::move(op), std::move(operand)});
    }
    throw ParseFail{};
}

SyntaxNode ExprParser::parse_postfix(SyntaxNode base) {
    for (;;) {
        if (done()) return base;
        const LexToken& tok = peek();
        if (tok.text == "(" && tok.kind == LexToken::Kind::op) {
            SyntaxNode args = parse_group('(', ')', "args");
            base = make_node("call", {std::move(base), std::move(args)});
            continue;
        }
        if (tok.text == "[" && tok.kind == LexToken::Kind::op) {
            SyntaxNode idx = parse_group('[', ']', "subscript");
            base = make_node("index", {std::move(base), std::move(idx)});
            continue;
        }
        if ((tok.text == "." || tok.text == "->" || tok.text == "::" || tok.text == "?.") &&
            tok.kind == LexToken::Kind::op) {
            SyntaxNode dot = take();
            if (done()) throw ParseFail{};
            SyntaxNode name = take();
            name.kind = "prop";
            base = make_node("attr", {std::move(base), std::move(dot), std::move(name)});
            continue;
        }
        if (lang_ != Lang::python && tok.kind == LexToken::Kind::op &&
            (tok.text == "++" || tok.text == "--")) {
            SyntaxNode op = take();
            base = make_node("postfix", {std::move(base), std::move(op)});
            continue;
        }
        // lambda/function body attached to a head expression (cpp/js)
        if (lang_ != Lang::python && tok.text == "{" && tok.kind == LexToken::Kind::op &&
            (base.kind == "call" || base.kind == "lambda_head")) {
            SyntaxNode body = parse_group('{', '}', "braced");
            base = make_node("lambda", {std::move(base), std::move(body)});
            continue;
        }
        return base;
    }
}

SyntaxNode ExprParser::parse_expr(int min_prec) {
    SyntaxNode lhs = parse_postfix(parse_primary());
    for (;;) {
        if (done()) return lhs;
        const LexToken& tok = peek();
        // Python conditional expression: a if b else c
        if (lang_ == Lang::python && tok.kind == LexToken::Kind::keyword &&
            tok.text == "if" && min_prec <= 2) {
            SyntaxNode kw_if = take();
            SyntaxNode cond = parse_expr(3);
            SyntaxNode kw_else = expect("else");
            SyntaxNode orelse = parse_expr(2);
            lhs = make_node("ifexp", {std::move(lhs), std::move(kw_if), std::move(cond),
                                      std::move(kw_else), std::move(orelse)});
            continue;
        }
        // C-family ternary
        if (lang_ != Lang::python && tok.kind == LexToken::Kind::op && tok.text == "?" &&
            min_prec <= 2) {
            SyntaxNode q = take();
            SyntaxNode mid = parse_expr(2);
            SyntaxNode colon = expect(":");
            SyntaxNode rhs = parse_expr(2);
            lhs = make_node("ternary", {std::move(lhs), std::move(q), std::move(mid),
                                        std::move(colon), std::move(rhs)});
            continue;
        }
        // Python 'not in' / 'is not'
        if (lang_ == Lang::python && tok.kind == LexToken::Kind::keyword &&
            tok.text == "not" && peek_is("in", 1) && min_prec <= 5) {
            SyntaxNode a = take(), b = take();
            SyntaxNode rhs = parse_expr(6);
            lhs = make_node("binop:not in", {std::move(lhs), std::move(a), std::move(b),
                                             std::move(rhs)});
            continue;
        }
        int prec = binary_prec(tok);
        if (prec == 0 || prec < min_prec) return lhs;
        bool right_assoc = tok.text == "**" || prec == 1;
        SyntaxNode op = take();
        SyntaxNode rhs = parse_expr(right_assoc ? prec : prec + 1);
        std::string kind = "binop:" + op.kind.substr(op.kind.find(':') + 1);
        if (op.kind == "op:=") kind = "assign_expr";
        if (op.kind == "op:=>") kind = "arrow_fn";
        lhs = make_node(kind, {std::move(lhs), std::move(op), std::move(rhs)});
    }
}

SyntaxNode ExprParser::parse_expr_list(const char* list_kind) {
    std::vector<SyntaxNode> children;
    children.push_back(parse_expr());
    if (done() || !peek_is(",")) return std::move(children.front());
    while (!done() && peek_is(",")) {
        children.push_back(take());
        if (done()) break;  // trailing comma
        children.push_back(parse_expr());
    }
    return make_node(list_kind, std::move(children));
}

}  // namespace detail

SyntaxTree parse_tree(const std::string& source, Lang language) {
    if (language == Lang::python) return detail::parse_python(source);
    return detail::parse_cfamily(source, language);
}

std::string shape_label(const SyntaxNode& node) {
    return node.kind;
}

size_t count_nodes(const SyntaxNode& node) {
    size_t n = 1;
    for (const auto& c : node.children) n += count_nodes(c);
    return n;
}

}  // namespace codejudge

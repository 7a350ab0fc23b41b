#include <algorithm>

#include "codejudge/syntax.hpp"
#include "syntax_internal.hpp"

namespace codejudge::detail {

namespace {

bool opens(const std::string& t) { return t == "(" || t == "[" || t == "{"; }
bool closes(const std::string& t) { return t == ")" || t == "]" || t == "}"; }

bool text_in(const std::string& t, std::initializer_list<const char*> set) {
    for (const char* s : set)
        if (t == s) return true;
    return false;
}

// keywords that act as operators or statement heads, never as a type in a
// declaration prefix
bool non_type_keyword(const std::string& t) {
    return text_in(t, {"new", "delete", "typeof", "sizeof", "await", "throw", "in",
                       "of", "instanceof", "and", "or", "not", "compl", "co_await",
                       "return", "case", "else", "do", "yield"});
}

bool type_def_keyword(const std::string& t) {
    return text_in(t, {"class", "struct", "interface", "enum", "namespace", "union"});
}

struct PreprocEntry {
    size_t at = 0;  // filtered-token index the directive precedes
    SyntaxNode node;
};

class CfamilyParser {
  public:
    CfamilyParser(const std::string& source, Lang lang) : source_(source), lang_(lang) {}

    SyntaxTree run() {
        split_preprocs(lex_source(source_, lang_));
        SyntaxTree tree;
        tree.source = source_;
        tree.language = lang_;
        tree.root = make_node("module", parse_stmts(false));
        tree.root.end = source_.size();
        tree.has_errors = has_errors_;
        return tree;
    }

  private:
    void split_preprocs(const std::vector<LexToken>& raw) {
        bool preproc_lang = lang_ == Lang::c || lang_ == Lang::cpp;
        bool at_line_start = true;
        size_t i = 0;
        while (i < raw.size()) {
            const LexToken& tok = raw[i];
            if (tok.kind == LexToken::Kind::eof) break;
            if (tok.kind == LexToken::Kind::newline) {
                at_line_start = true;
                ++i;
                continue;
            }
            if (preproc_lang && at_line_start && tok.kind == LexToken::Kind::op &&
                tok.text == "#") {
                std::vector<SyntaxNode> leaves;
                while (i < raw.size() && raw[i].kind != LexToken::Kind::newline &&
                       raw[i].kind != LexToken::Kind::eof)
                    leaves.push_back(leaf(raw[i++]));
                preprocs_.push_back({toks_.size(), make_node("preproc", std::move(leaves))});
                continue;
            }
            at_line_start = false;
            toks_.push_back(tok);
            ++i;
        }
    }

    bool done() const { return pos_ >= toks_.size(); }
    const LexToken& peek(size_t ahead = 0) const {
        static LexToken eof_tok{LexToken::Kind::eof, "", 0, 0};
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : eof_tok;
    }
    bool peek_op(const char* text, size_t ahead = 0) const {
        return peek(ahead).kind == LexToken::Kind::op && peek(ahead).text == text;
    }
    bool peek_kw(const char* text, size_t ahead = 0) const {
        return peek(ahead).kind == LexToken::Kind::keyword && peek(ahead).text == text;
    }
    SyntaxNode take_tok() {
        if (done()) throw ParseFail{};
        return leaf(toks_[pos_++]);
    }

    void emit_preprocs(std::vector<SyntaxNode>& out) {
        while (ppi_ < preprocs_.size() && preprocs_[ppi_].at <= pos_)
            out.push_back(std::move(preprocs_[ppi_++].node));
    }

    std::vector<SyntaxNode> parse_stmts(bool stop_at_brace) {
        std::vector<SyntaxNode> stmts;
        for (;;) {
            emit_preprocs(stmts);
            if (done()) break;
            if (stop_at_brace && peek_op("}")) break;
            stmts.push_back(parse_statement());
        }
        return stmts;
    }

    SyntaxNode parse_statement() {
        size_t lo = pos_;
        try {
            return parse_statement_inner();
        } catch (const ParseFail&) {
            has_errors_ = true;
            return recover(lo);
        }
    }

    SyntaxNode recover(size_t lo) {
        pos_ = lo;
        if (peek_op("}")) return make_node("error", {take_tok()});
        std::vector<SyntaxNode> leaves;
        size_t depth = 0;
        while (!done()) {
            const LexToken& tok = peek();
            if (tok.kind == LexToken::Kind::op && depth == 0 && !leaves.empty() &&
                (tok.text == "{" || tok.text == "}"))
                break;
            if (tok.kind == LexToken::Kind::op) {
                if (opens(tok.text)) ++depth;
                else if (closes(tok.text) && depth > 0) --depth;
            }
            bool stop = tok.kind == LexToken::Kind::op && tok.text == ";" && depth == 0;
            leaves.push_back(take_tok());
            if (stop) break;
        }
        if (leaves.empty()) leaves.push_back(take_tok());  // lone brace
        return make_node("error", std::move(leaves));
    }

    SyntaxNode parse_block() {
        std::vector<SyntaxNode> children;
        if (!peek_op("{")) throw ParseFail{};
        children.push_back(take_tok());
        for (auto& s : parse_stmts(true)) children.push_back(std::move(s));
        if (!done()) children.push_back(take_tok());
        else has_errors_ = true;
        return make_node("block", std::move(children));
    }

    SyntaxNode expr_group(const char* kind) {
        if (!peek_op("(")) throw ParseFail{};
        ExprParser ep(toks_, pos_, toks_.size(), lang_);
        SyntaxNode node = ep.parse_paren_group(kind);
        pos_ = ep.pos();
        return node;
    }

    SyntaxNode body_statement() { return parse_statement(); }

    SyntaxNode parse_statement_inner() {
        const LexToken& first = peek();
        if (first.kind == LexToken::Kind::op) {
            if (first.text == "{") return parse_block();
            if (first.text == ";") return make_node("empty", {take_tok()});
            if (first.text == "@" && lang_ == Lang::java) {
                std::vector<SyntaxNode> children{take_tok()};
                ExprParser ep(toks_, pos_, toks_.size(), lang_);
                children.push_back(ep.parse_expr());
                pos_ = ep.pos();
                return make_node("annotation", std::move(children));
            }
        }
        if (first.kind == LexToken::Kind::keyword) {
            const std::string& kw = first.text;
            if (kw == "if") return parse_if();
            if (kw == "while") {
                std::vector<SyntaxNode> children{take_tok(), expr_group("cond")};
                children.push_back(body_statement());
                return make_node("while_stmt", std::move(children));
            }
            if (kw == "for") {
                std::vector<SyntaxNode> children{take_tok(), expr_group("for_spec")};
                children.push_back(body_statement());
                return make_node("for_stmt", std::move(children));
            }
            if (kw == "do") {
                std::vector<SyntaxNode> children{take_tok(), body_statement()};
                if (!peek_kw("while")) throw ParseFail{};
                children.push_back(take_tok());
                children.push_back(expr_group("cond"));
                if (peek_op(";")) children.push_back(take_tok());
                return make_node("do_stmt", std::move(children));
            }
            if (kw == "switch") {
                std::vector<SyntaxNode> children{take_tok(), expr_group("cond")};
                children.push_back(body_statement());
                return make_node("switch_stmt", std::move(children));
            }
            if (kw == "case") {
                std::vector<SyntaxNode> children{take_tok()};
                ExprParser ep(toks_, pos_, toks_.size(), lang_);
                children.push_back(ep.parse_expr());
                pos_ = ep.pos();
                if (!peek_op(":")) throw ParseFail{};
                children.push_back(take_tok());
                return make_node("case_label", std::move(children));
            }
            if (kw == "default" && peek_op(":", 1)) {
                SyntaxNode k = take_tok();
                return make_node("default_label", {std::move(k), take_tok()});
            }
            if ((kw == "public" || kw == "private" || kw == "protected") &&
                peek_op(":", 1)) {
                SyntaxNode k = take_tok();
                return make_node("access_label", {std::move(k), take_tok()});
            }
            if (kw == "return" || kw == "throw") {
                std::vector<SyntaxNode> children{take_tok()};
                if (!done() && !peek_op(";") && !peek_op("}")) {
                    ExprParser ep(toks_, pos_, toks_.size(), lang_);
                    children.push_back(ep.parse_expr_list());
                    pos_ = ep.pos();
                }
                if (peek_op(";")) children.push_back(take_tok());
                return make_node(kw + "_stmt", std::move(children));
            }
            if (kw == "break" || kw == "continue") {
                std::vector<SyntaxNode> children{take_tok()};
                if (peek().kind == LexToken::Kind::ident) children.push_back(take_tok());
                if (peek_op(";")) children.push_back(take_tok());
                return make_node(kw + "_stmt", std::move(children));
            }
            if (kw == "goto") {
                std::vector<SyntaxNode> children{take_tok()};
                if (peek().kind == LexToken::Kind::ident) children.push_back(take_tok());
                if (peek_op(";")) children.push_back(take_tok());
                return make_node("goto_stmt", std::move(children));
            }
            if (kw == "try") return parse_try();
            if (kw == "import" || kw == "package") return leaves_to_semi("import_stmt");
            if (kw == "typedef" || kw == "using") return leaves_to_semi("alias_stmt");
            if (kw == "function" && lang_ == Lang::javascript) return parse_function();
            if (kw == "template" && lang_ == Lang::cpp) return parse_template_head();
            if (type_def_keyword(kw)) return parse_type_def(pos_);
        }
        // label: ident ':' (java/js loop labels)
        if (first.kind == LexToken::Kind::ident && peek_op(":", 1)) {
            SyntaxNode name = take_tok();
            return make_node("label", {std::move(name), take_tok()});
        }
        return parse_general();
    }

    SyntaxNode parse_if() {
        std::vector<SyntaxNode> children{take_tok(), expr_group("cond")};
        children.push_back(body_statement());
        if (peek_kw("else")) {
            children.push_back(take_tok());
            children.push_back(body_statement());
        }
        return make_node("if_stmt", std::move(children));
    }

    SyntaxNode parse_try() {
        std::vector<SyntaxNode> children{take_tok()};
        if (peek_op("(")) children.push_back(expr_group("resources"));
        children.push_back(parse_block());
        while (peek_kw("catch")) {
            children.push_back(take_tok());
            if (peek_op("(")) children.push_back(expr_group("catch_param"));
            children.push_back(parse_block());
        }
        if (peek_kw("finally")) {
            children.push_back(take_tok());
            children.push_back(parse_block());
        }
        return make_node("try_stmt", std::move(children));
    }

    SyntaxNode leaves_to_semi(const char* kind) {
        std::vector<SyntaxNode> leaves;
        size_t depth = 0;
        while (!done()) {
            const LexToken& tok = peek();
            if (tok.kind == LexToken::Kind::op) {
                if (opens(tok.text)) ++depth;
                else if (closes(tok.text) && depth > 0) --depth;
            }
            bool stop = depth == 0 && tok.kind == LexToken::Kind::op && tok.text == ";";
            leaves.push_back(take_tok());
            if (stop) break;
        }
        return make_node(kind, std::move(leaves));
    }

    SyntaxNode parse_function() {
        std::vector<SyntaxNode> children{take_tok()};
        if (peek_op("*")) children.push_back(take_tok());
        if (peek().kind == LexToken::Kind::ident) children.push_back(take_tok());
        ExprParser ep(toks_, pos_, toks_.size(), lang_);
        children.push_back(ep.parse_paren_group("params"));
        pos_ = ep.pos();
        children.push_back(parse_block());
        return make_node("func_def", std::move(children));
    }

    SyntaxNode parse_template_head() {
        std::vector<SyntaxNode> children{take_tok()};
        if (peek_op("<")) {
            size_t depth = 0;
            while (!done()) {
                const LexToken& tok = peek();
                bool stop = false;
                if (tok.kind == LexToken::Kind::op) {
                    if (tok.text == "<") ++depth;
                    if (tok.text == ">" && depth > 0) stop = --depth == 0;
                }
                children.push_back(take_tok());
                if (stop) break;
            }
        }
        return make_node("template_head", std::move(children));
    }

    SyntaxNode parse_type_def(size_t lo) {
        std::vector<SyntaxNode> children;
        size_t depth = 0;
        pos_ = lo;
        while (!done()) {
            const LexToken& tok = peek();
            if (tok.kind == LexToken::Kind::op && depth == 0 && tok.text == "{") break;
            if (tok.kind == LexToken::Kind::op) {
                if (opens(tok.text)) ++depth;
                else if (closes(tok.text) && depth > 0) --depth;
            }
            bool stop = depth == 0 && tok.kind == LexToken::Kind::op && tok.text == ";";
            children.push_back(take_tok());
            if (stop)  // forward declaration
                return make_node("type_def", std::move(children));
        }
        if (done()) return make_node("type_def", std::move(children));
        children.push_back(parse_block());
        if (peek_op(";")) children.push_back(take_tok());
        return make_node("type_def", std::move(children));
    }

    // boundary: first top-level ';', '{' or '}' from pos_
    std::pair<size_t, char> find_boundary() const {
        size_t depth = 0;
        for (size_t k = pos_; k < toks_.size(); ++k) {
            const LexToken& tok = toks_[k];
            if (tok.kind != LexToken::Kind::op) continue;
            if (depth == 0 && (tok.text == ";" || tok.text == "{" || tok.text == "}"))
                return {k, tok.text[0]};
            if (opens(tok.text)) ++depth;
            else if (closes(tok.text) && depth > 0) --depth;
        }
        return {toks_.size(), 0};
    }

    static bool type_ish(const LexToken& tok) {
        if (tok.kind == LexToken::Kind::ident) return true;
        if (tok.kind == LexToken::Kind::keyword) return !non_type_keyword(tok.text);
        if (tok.kind == LexToken::Kind::op)
            return text_in(tok.text, {"*", "&", "&&", "<", ">", ",", "::", ".", "[",
                                      "]", "~", "..."});
        return false;
    }

    SyntaxNode parse_general() {
        auto [b, bchar] = find_boundary();
        if (bchar == '{') {
            // function definition: head '(' params ')' [specifiers] block
            size_t tail = b;
            while (tail > pos_ + 1 && (toks_[tail - 1].kind == LexToken::Kind::ident ||
                                       toks_[tail - 1].kind == LexToken::Kind::keyword))
                --tail;
            if (tail > pos_ && toks_[tail - 1].kind == LexToken::Kind::op &&
                toks_[tail - 1].text == ")") {
                long open_idx = -1;
                {
                    size_t depth = 0, k = tail - 1;
                    for (;;) {
                        const LexToken& tok = toks_[k];
                        if (tok.kind == LexToken::Kind::op) {
                            if (closes(tok.text)) ++depth;
                            else if (opens(tok.text) && depth > 0 && --depth == 0) {
                                if (tok.text == "(") open_idx = static_cast<long>(k);
                                break;
                            }
                        }
                        if (k == pos_) break;
                        --k;
                    }
                }
                if (open_idx > static_cast<long>(pos_)) {
                    bool head_ok = true, has_name = false;
                    for (size_t k = pos_; k < static_cast<size_t>(open_idx); ++k) {
                        if (!type_ish(toks_[k])) head_ok = false;
                        if (toks_[k].kind == LexToken::Kind::ident) has_name = true;
                    }
                    if (head_ok && has_name) {
                        std::vector<SyntaxNode> children;
                        for (size_t k = pos_; k < static_cast<size_t>(open_idx); ++k)
                            children.push_back(leaf(toks_[k]));
                        pos_ = static_cast<size_t>(open_idx);
                        ExprParser ep(toks_, pos_, toks_.size(), lang_);
                        children.push_back(ep.parse_paren_group("params"));
                        pos_ = ep.pos();
                        while (pos_ < b) children.push_back(take_tok());
                        children.push_back(parse_block());
                        return make_node("func_def", std::move(children));
                    }
                }
            }
            for (size_t k = pos_; k < b; ++k)
                if (toks_[k].kind == LexToken::Kind::keyword &&
                    type_def_keyword(toks_[k].text))
                    return parse_type_def(pos_);
            // expression carrying a braced operand (js object literal, lambda)
            ExprParser ep(toks_, pos_, toks_.size(), lang_);
            SyntaxNode expr = ep.parse_expr_list();
            if (ep.pos() == pos_) throw ParseFail{};
            pos_ = ep.pos();
            std::vector<SyntaxNode> children{std::move(expr)};
            if (peek_op(";")) children.push_back(take_tok());
            return make_node("expr_stmt", std::move(children));
        }

        // declaration heuristic: before any top-level '=', an adjacent
        // type-token/name pair
        size_t eq = b;
        {
            size_t depth = 0;
            for (size_t k = pos_; k < b; ++k) {
                const LexToken& tok = toks_[k];
                if (tok.kind != LexToken::Kind::op) continue;
                if (depth == 0 && tok.text == "=") {
                    eq = k;
                    break;
                }
                if (opens(tok.text)) ++depth;
                else if (closes(tok.text) && depth > 0) --depth;
            }
        }
        long name_idx = -1;
        {
            size_t depth = 0;
            for (size_t k = pos_; k + 1 < eq; ++k) {
                const LexToken& tok = toks_[k];
                if (tok.kind == LexToken::Kind::op) {
                    if (opens(tok.text)) { ++depth; continue; }
                    if (closes(tok.text) && depth > 0) { --depth; continue; }
                }
                if (depth != 0) continue;
                const LexToken& next = toks_[k + 1];
                if (next.kind != LexToken::Kind::ident) continue;
                bool head = (tok.kind == LexToken::Kind::ident) ||
                            (tok.kind == LexToken::Kind::keyword &&
                             !non_type_keyword(tok.text)) ||
                            (tok.kind == LexToken::Kind::op &&
                             text_in(tok.text, {">", "*", "&", "]"}));
                if (head) {
                    name_idx = static_cast<long>(k + 1);
                    break;
                }
            }
        }
        if (name_idx >= 0) {
            std::vector<SyntaxNode> children;
            while (pos_ < static_cast<size_t>(name_idx)) children.push_back(take_tok());
            ExprParser ep(toks_, pos_, b, lang_);
            SyntaxNode decls = ep.parse_expr_list("declarators");
            if (decls.kind != "declarators")
                decls = make_node("declarators", {std::move(decls)});
            children.push_back(std::move(decls));
            if (!ep.done()) throw ParseFail{};
            pos_ = ep.pos();
            if (bchar == ';') children.push_back(take_tok());
            return make_node("decl_stmt", std::move(children));
        }

        if (pos_ == b) throw ParseFail{};  // empty slice before '}' or EOF
        ExprParser ep(toks_, pos_, b, lang_);
        SyntaxNode expr = ep.parse_expr_list();
        if (!ep.done()) throw ParseFail{};
        pos_ = ep.pos();
        std::vector<SyntaxNode> children{std::move(expr)};
        if (bchar == ';') children.push_back(take_tok());
        return make_node("expr_stmt", std::move(children));
    }

    std::string source_;
    Lang lang_;
    std::vector<LexToken> toks_;
    std::vector<PreprocEntry> preprocs_;
    size_t ppi_ = 0;
    size_t pos_ = 0;
    bool has_errors_ = false;
};

}  // namespace

SyntaxTree parse_cfamily(const std::string& source, Lang language) {
    return CfamilyParser(source, language).run();
}

}  // namespace codejudge::detail

#include "codejudge/dataflow.hpp"

#include <unordered_map>

namespace codejudge {

namespace {

bool starts_with(const std::string& s, const char* prefix) {
    return s.rfind(prefix, 0) == 0;
}

bool is_compound_assign(const std::string& kind) {
    static const char* ops[] = {"binop:+=", "binop:-=", "binop:*=", "binop:/=",
                                "binop:%=", "binop:&=", "binop:|=", "binop:^=",
                                "binop:<<=", "binop:>>=", "binop:**="};
    for (const char* op : ops)
        if (kind == op) return true;
    return false;
}

class Builder {
  public:
    explicit Builder(const SyntaxTree& tree) : tree_(tree) {
        size_t counter = 0;
        walk_preorder(tree_.root, [&](const SyntaxNode& n, size_t) { ids_[&n] = counter++; });
    }

    DataflowGraph run() {
        if (tree_.language == Lang::python) py_stmt(tree_.root);
        else cf_stmt(tree_.root);
        return {std::move(edges_)};
    }

  private:
    std::string name_of(const SyntaxNode& n) const {
        return tree_.source.substr(n.begin, n.end - n.begin);
    }

    void use(const SyntaxNode& n) {
        std::string name = name_of(n);
        auto it = last_def_.find(name);
        if (it != last_def_.end())
            edges_.push_back({it->second, ids_.at(&n), std::move(name)});
    }

    void define(const SyntaxNode& n) { last_def_[name_of(n)] = ids_.at(&n); }

    // ---- shared expression handling ----

    void uses(const SyntaxNode& n) {
        if (n.is_leaf()) {
            if (n.kind == "id") use(n);
            return;
        }
        if (n.kind == "attr") {  // base '.' prop: the member name is not a variable
            uses(n.children[0]);
            return;
        }
        if (n.kind == "assign_expr" || n.kind == "binop::=") {
            if (n.children.size() == 3) {
                uses(n.children[2]);
                target(n.children[0]);
                return;
            }
        }
        if (is_compound_assign(n.kind) && n.children.size() == 3) {
            uses(n.children[2]);
            read_write_target(n.children[0]);
            return;
        }
        if (n.kind == "arrow_fn" && n.children.size() == 3) {
            target(n.children[0]);
            uses(n.children[2]);
            return;
        }
        if ((n.kind == "unary" || n.kind == "postfix") && n.children.size() == 2) {
            const SyntaxNode& op = n.children[n.kind == "unary" ? 0 : 1];
            const SyntaxNode& operand = n.children[n.kind == "unary" ? 1 : 0];
            if (op.kind == "op:++" || op.kind == "op:--") {
                read_write_target(operand);
                return;
            }
        }
        if (n.kind == "lambda" && tree_.language == Lang::python) {
            bool in_params = true;
            for (const auto& c : n.children) {
                if (c.is_leaf() && c.kind == "op::") {
                    in_params = false;
                    continue;
                }
                if (in_params) target(c);
                else uses(c);
            }
            return;
        }
        if (starts_with(n.kind, "comprehension_")) {
            comprehension(n);
            return;
        }
        for (const auto& c : n.children) uses(c);
    }

    // assignment target: only bare identifiers bind, compound targets read
    void target(const SyntaxNode& n) {
        if (n.is_leaf()) {
            if (n.kind == "id") define(n);
            return;
        }
        if (n.kind == "attr" || n.kind == "index") {
            uses(n);
            return;
        }
        if (n.kind == "unary" && n.children.size() == 2) {
            target(n.children[1]);
            return;
        }
        for (const auto& c : n.children) target(c);
    }

    void read_write_target(const SyntaxNode& n) {
        if (n.is_leaf()) {
            if (n.kind == "id") {
                use(n);
                define(n);
            }
            return;
        }
        uses(n);
    }

    void comprehension(const SyntaxNode& n) {
        const auto& ch = n.children;
        size_t first_for = ch.size();
        for (size_t i = 0; i < ch.size(); ++i)
            if (ch[i].kind == "kw:for") {
                first_for = i;
                break;
            }
        for (size_t i = first_for; i < ch.size();) {
            if (ch[i].kind == "kw:for" && i + 3 < ch.size()) {
                uses(ch[i + 3]);
                target(ch[i + 1]);
                i += 4;
            } else if (ch[i].kind == "kw:if" && i + 1 < ch.size()) {
                uses(ch[i + 1]);
                i += 2;
            } else {
                ++i;
            }
        }
        for (size_t i = 1; i < first_for; ++i) uses(ch[i]);
    }

    // parameter list: per comma segment the declared name binds, a default
    // value after '=' is read first
    void param_defs(const SyntaxNode& params) {
        std::vector<const SyntaxNode*> segment;
        auto flush = [&] {
            std::vector<const SyntaxNode*> ids;
            for (const SyntaxNode* c : segment) collect_param_ids(*c, ids);
            for (size_t i = 0; i + 1 < ids.size(); ++i) use(*ids[i]);
            if (!ids.empty()) define(*ids.back());
            segment.clear();
        };
        for (const auto& c : params.children) {
            if (c.is_leaf() && (c.kind == "op:," || c.kind == "op:(" || c.kind == "op:)")) {
                if (c.kind == "op:,") flush();
                continue;
            }
            segment.push_back(&c);
        }
        flush();
    }

    void collect_param_ids(const SyntaxNode& n, std::vector<const SyntaxNode*>& out) {
        if (n.is_leaf()) {
            if (n.kind == "id") out.push_back(&n);
            return;
        }
        if (n.kind == "assign_expr" && n.children.size() == 3) {  // default value
            collect_param_ids(n.children[0], out);
            uses(n.children[2]);
            return;
        }
        if (n.kind == "attr") return;  // qualified type name, not a binding
        for (const auto& c : n.children) collect_param_ids(c, out);
    }

    // python def parameters: names bind, annotations after ':' and defaults
    // after '=' are reads
    void py_param_defs(const SyntaxNode& params) {
        enum class Mode { binding, rest } mode = Mode::binding;
        for (const auto& c : params.children) {
            if (c.is_leaf()) {
                if (c.kind == "op:,") mode = Mode::binding;
                else if (c.kind == "op::" || c.kind == "op:=") mode = Mode::rest;
                else if (c.kind == "id" && mode == Mode::binding) define(c);
                continue;
            }
            if (mode == Mode::binding) target(c);
            else uses(c);
        }
    }

    // ---- python statements ----

    void py_stmt(const SyntaxNode& n) {
        const std::string& k = n.kind;
        const auto& ch = n.children;
        if (k == "module" || k == "suite" || k == "stmt_group") {
            for (const auto& c : ch) py_stmt(c);
            return;
        }
        if (k == "assign") {
            if (ch.empty()) return;
            uses(ch.back());
            for (size_t i = 0; i + 1 < ch.size(); ++i)
                if (!(ch[i].is_leaf() && ch[i].kind == "op:=")) target(ch[i]);
            return;
        }
        if (k == "aug_assign") {
            if (ch.size() == 3) {
                uses(ch[2]);
                read_write_target(ch[0]);
            }
            return;
        }
        if (k == "ann_assign") {
            for (size_t i = 2; i < ch.size(); ++i)
                if (!ch[i].is_leaf() || ch[i].kind == "id") uses(ch[i]);
            if (!ch.empty()) define(ch[0]);
            return;
        }
        if (k == "for_stmt") {
            size_t in_pos = ch.size();
            for (size_t i = 0; i < ch.size(); ++i)
                if (ch[i].kind == "kw:in") {
                    in_pos = i;
                    break;
                }
            for (size_t i = in_pos + 1; i < ch.size(); ++i)
                if (ch[i].kind != "suite") uses(ch[i]);
            for (size_t i = 1; i < in_pos; ++i) target(ch[i]);
            for (const auto& c : ch)
                if (c.kind == "suite") py_stmt(c);
            return;
        }
        if (k == "def_stmt" || k == "class_stmt") {
            bool named = false;
            for (const auto& c : ch) {
                if (c.is_leaf() && c.kind == "id" && !named) {
                    define(c);
                    named = true;
                } else if (c.kind == "params") {
                    py_param_defs(c);
                } else if (c.kind == "bases") {
                    uses(c);
                } else if (c.kind == "suite") {
                    py_stmt(c);
                } else if (!c.is_leaf() || c.kind == "id") {
                    uses(c);
                }
            }
            return;
        }
        if (k == "with_stmt" || k == "except_stmt" || k == "case_stmt") {
            bool saw_as = false;
            for (const auto& c : ch) {
                if (c.is_leaf() && c.kind == "kw:as") {
                    saw_as = true;
                } else if (c.is_leaf() && c.kind == "id") {
                    if (saw_as) define(c);
                    else use(c);
                } else if (c.kind == "suite") {
                    py_stmt(c);
                } else if (!c.is_leaf()) {
                    uses(c);
                }
            }
            return;
        }
        if (k == "import_stmt") {
            import_defs(n);
            return;
        }
        if (k == "del_stmt") {
            for (const auto& c : ch) {
                if (c.is_leaf() && c.kind == "id") last_def_.erase(name_of(c));
                else if (!c.is_leaf()) del_target(c);
            }
            return;
        }
        if (k == "global_stmt" || k == "nonlocal_stmt" || k == "empty" ||
            k == "pass_stmt" || k == "break_stmt" || k == "continue_stmt")
            return;
        // everything else: condition-like children are reads, suites recurse
        for (const auto& c : ch) {
            if (c.kind == "suite" || starts_with(c.kind, "stmt_group")) py_stmt(c);
            else if (c.is_leaf() && c.kind == "id") use(c);
            else if (!c.is_leaf()) uses(c);
        }
    }

    void del_target(const SyntaxNode& n) {
        for (const auto& c : n.children) {
            if (c.is_leaf() && c.kind == "id") last_def_.erase(name_of(c));
            else if (!c.is_leaf()) uses(c);
        }
    }

    void import_defs(const SyntaxNode& n) {
        const auto& ch = n.children;
        size_t start = 0;
        for (size_t i = 0; i < ch.size(); ++i)
            if (ch[i].kind == "kw:import") start = i + 1;
        std::vector<const SyntaxNode*> segment;
        auto flush = [&] {
            if (segment.empty()) return;
            const SyntaxNode* bound = segment.front();
            for (size_t i = 0; i + 1 < segment.size(); ++i)
                if (segment[i]->kind == "kw:as") bound = segment[i + 1];
            if (bound->kind == "id") define(*bound);
            segment.clear();
        };
        for (size_t i = start; i < ch.size(); ++i) {
            if (ch[i].kind == "op:,") flush();
            else if (ch[i].kind == "id" || ch[i].kind == "kw:as") segment.push_back(&ch[i]);
        }
        flush();
    }

    // ---- c-family statements ----

    void cf_stmt(const SyntaxNode& n) {
        const std::string& k = n.kind;
        const auto& ch = n.children;
        if (k == "module" || k == "block") {
            for (const auto& c : ch) cf_stmt(c);
            return;
        }
        if (k == "decl_stmt") {
            for (const auto& c : ch)
                if (c.kind == "declarators") declarators(c);
            return;
        }
        if (k == "func_def") {
            if (ch.size() > 1 && ch[0].kind == "kw:function" && ch[1].kind == "id")
                define(ch[1]);  // js function names are variables
            for (const auto& c : ch) {
                if (c.kind == "params") param_defs(c);
                else if (c.kind == "block") cf_stmt(c);
            }
            return;
        }
        if (k == "for_stmt") {
            for (const auto& c : ch) {
                if (c.kind == "for_spec") for_spec(c);
                else if (!c.is_leaf()) cf_stmt(c);
            }
            return;
        }
        if (k == "try_stmt") {
            for (const auto& c : ch) {
                if (c.kind == "catch_param") param_defs(c);
                else if (c.kind == "block") cf_stmt(c);
                else if (c.kind == "resources") uses(c);
            }
            return;
        }
        if (k == "type_def") {
            for (const auto& c : ch)
                if (c.kind == "block") cf_stmt(c);
            return;
        }
        if (k == "import_stmt" || k == "alias_stmt" || k == "preproc" ||
            k == "template_head" || k == "annotation" || k == "access_label" ||
            k == "label" || k == "goto_stmt" || k == "empty" || k == "break_stmt" ||
            k == "continue_stmt" || k == "default_label")
            return;
        // if/while/do/switch/case/return/throw/expr/error and anything else:
        // groups and expressions are reads, nested statements recurse
        for (const auto& c : ch) {
            if (c.kind == "block" || ends_with_stmt(c.kind)) cf_stmt(c);
            else if (c.is_leaf() && c.kind == "id") use(c);
            else if (!c.is_leaf()) uses(c);
        }
    }

    static bool ends_with_stmt(const std::string& kind) {
        static const char suffix[] = "_stmt";
        return kind.size() >= sizeof(suffix) - 1 &&
               kind.compare(kind.size() - (sizeof(suffix) - 1), sizeof(suffix) - 1,
                            suffix) == 0;
    }

    void declarators(const SyntaxNode& n) {
        for (const auto& c : n.children) {
            if (c.is_leaf()) {
                if (c.kind == "id") define(c);
                continue;
            }
            decl_target(c);
        }
    }

    void decl_target(const SyntaxNode& n) {
        if (n.is_leaf()) {
            if (n.kind == "id") define(n);
            return;
        }
        if (n.kind == "assign_expr" && n.children.size() == 3) {
            uses(n.children[2]);
            decl_target(n.children[0]);
            return;
        }
        if (n.kind == "index" && n.children.size() == 2) {
            uses(n.children[1]);
            decl_target(n.children[0]);
            return;
        }
        if (n.kind == "unary" && n.children.size() == 2) {
            decl_target(n.children[1]);
            return;
        }
        uses(n);
    }

    void for_spec(const SyntaxNode& n) {
        const auto& ch = n.children;
        // range-for: '(' target ':' iterable ')'
        long colon = -1;
        for (size_t i = 0; i < ch.size(); ++i)
            if (ch[i].is_leaf() && ch[i].kind == "op::") {
                colon = static_cast<long>(i);
                break;
            }
        if (colon >= 0) {
            for (size_t i = colon + 1; i < ch.size(); ++i)
                if (!ch[i].is_leaf() || ch[i].kind == "id") uses(ch[i]);
            std::vector<const SyntaxNode*> ids;
            for (size_t i = 0; i < static_cast<size_t>(colon); ++i)
                collect_param_ids(ch[i], ids);
            if (!ids.empty()) define(*ids.back());
            return;
        }
        for (const auto& c : ch) {
            if (c.is_leaf()) continue;
            if ((c.kind == "binop:in" || c.kind == "binop:of") && c.children.size() == 3) {
                uses(c.children[2]);
                target(c.children[0]);
            } else {
                uses(c);
            }
        }
    }

    const SyntaxTree& tree_;
    std::unordered_map<const SyntaxNode*, size_t> ids_;
    std::unordered_map<std::string, size_t> last_def_;
    std::vector<DataflowEdge> edges_;
};

}  // namespace

DataflowGraph extract_dataflow(const SyntaxTree& tree) {
    return Builder(tree).run();
}

}  // namespace codejudge

#include "codejudge/code_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "codejudge/dataflow.hpp"
#include "codejudge/errors.hpp"
#include "codejudge/keywords.hpp"
#include "codejudge/tree_edit.hpp"

namespace codejudge {

namespace {

std::map<std::string, size_t> multiset_of(const std::vector<std::string>& items) {
    std::map<std::string, size_t> m;
    for (const auto& s : items) ++m[s];
    return m;
}

// sum of min counts over the reference multiset, and the reference total
std::pair<size_t, size_t> overlap(const std::map<std::string, size_t>& cand,
                                  const std::map<std::string, size_t>& ref) {
    size_t matched = 0, total = 0;
    for (const auto& [item, count] : ref) {
        total += count;
        auto it = cand.find(item);
        if (it != cand.end()) matched += std::min(count, it->second);
    }
    return {matched, total};
}

double jaccard(const std::map<std::string, size_t>& a,
               const std::map<std::string, size_t>& b) {
    size_t inter = 0, uni = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            uni += ia->second;
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            uni += ib->second;
            ++ib;
        } else {
            inter += std::min(ia->second, ib->second);
            uni += std::max(ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
    if (uni == 0) return 1.0;  // no structure on either side
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// keyword-weighted clipped n-gram precisions, mirroring bleu()'s smoothing
double weighted_bleu(const TokenSequence& cand, const TokenSequence& ref,
                     size_t max_n, Lang language,
                     std::map<std::string, double>& components) {
    const auto& reserved = keywords(language);
    double log_sum = 0.0;
    bool zero = false;
    for (size_t n = 1; n <= max_n; ++n) {
        struct Entry {
            size_t count = 0;
            double weight = 1.0;
        };
        std::map<std::string, Entry> grams;
        if (cand.tokens.size() >= n) {
            for (size_t i = 0; i + n <= cand.tokens.size(); ++i) {
                std::string key;
                double w = 1.0;
                for (size_t k = 0; k < n; ++k) {
                    if (k) key += '\x1f';
                    key += cand.tokens[i + k];
                    if (reserved.count(cand.tokens[i + k])) w = 4.0;
                }
                auto& e = grams[key];
                ++e.count;
                e.weight = w;
            }
        }
        auto ref_counts = token_ngrams(ref, n);
        double matched = 0.0, total = 0.0;
        for (const auto& [gram, e] : grams) {
            total += e.weight * static_cast<double>(e.count);
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end())
                matched += e.weight * static_cast<double>(std::min(e.count, it->second));
        }
        double p;
        if (matched == 0.0 && n > 1)
            p = 1.0 / (total + 1.0);
        else
            p = total > 0.0 ? matched / total : 0.0;
        components["weighted_p" + std::to_string(n)] = p;
        if (p <= 0.0)
            zero = true;
        else
            log_sum += std::log(p) / static_cast<double>(max_n);
    }
    size_t c = cand.tokens.size(), r = ref.tokens.size();
    double bp = c >= r ? 1.0
                       : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
    return zero ? 0.0 : bp * std::exp(log_sum);
}

void shape_strings(const SyntaxNode& n, std::vector<std::string>& out) {
    if (!n.is_leaf()) {
        std::string s2 = shape_label(n) + "(";
        bool grandchild = false;
        for (const auto& c : n.children) {
            s2 += shape_label(c);
            s2 += ',';
            if (!c.is_leaf()) grandchild = true;
        }
        s2 += ')';
        out.push_back(s2);
        if (grandchild) {
            std::string s3 = shape_label(n) + "(";
            for (const auto& c : n.children) {
                if (c.is_leaf()) {
                    s3 += shape_label(c);
                } else {
                    s3 += shape_label(c);
                    s3 += '(';
                    for (const auto& g : c.children) {
                        s3 += shape_label(g);
                        s3 += ',';
                    }
                    s3 += ')';
                }
                s3 += ',';
            }
            s3 += ')';
            out.push_back(s3);
        }
    }
    for (const auto& c : n.children) shape_strings(c, out);
}

std::vector<std::string> dataflow_items(const SyntaxTree& tree) {
    std::vector<std::string> items;
    for (const auto& t : canonical_dataflow(tree))
        items.push_back("d|" + std::to_string(t.var) + "|" + std::to_string(t.def_ord) +
                        "|" + std::to_string(t.use_ord));
    return items;
}

void control_items(const SyntaxNode& n, std::vector<std::string>& out) {
    if (n.kind == "module" || n.kind == "suite" || n.kind == "block" ||
        n.kind == "stmt_group") {
        const SyntaxNode* prev = nullptr;
        for (const auto& c : n.children) {
            if (c.is_leaf()) continue;
            if (prev) out.push_back("c|" + prev->kind + "|" + c.kind);
            prev = &c;
        }
    }
    for (const auto& c : n.children) control_items(c, out);
}

}  // namespace

std::vector<DataflowTriple> canonical_dataflow(const SyntaxTree& tree) {
    DataflowGraph graph = extract_dataflow(tree);
    std::unordered_map<std::string, size_t> var_index;
    std::unordered_map<std::string, std::unordered_map<size_t, size_t>> def_ords;
    std::unordered_map<std::string, size_t> use_counts;
    std::vector<DataflowTriple> triples;
    triples.reserve(graph.edges.size());
    for (const auto& e : graph.edges) {
        auto [vi, _] = var_index.try_emplace(e.name, var_index.size());
        auto& defs = def_ords[e.name];
        auto [di, __] = defs.try_emplace(e.def_id, defs.size());
        size_t ui = use_counts[e.name]++;
        triples.push_back({vi->second, di->second, ui});
    }
    return triples;
}

std::vector<std::string> subtree_shapes(const SyntaxTree& tree) {
    std::vector<std::string> out;
    shape_strings(tree.root, out);
    return out;
}

MetricScore codebleu(const std::string& candidate, const std::string& reference,
                     Lang language, const CodeBleuWeights& weights) {
    double wsum = weights.ngram + weights.weighted + weights.syntax + weights.dataflow;
    if (weights.ngram < 0.0 || weights.weighted < 0.0 || weights.syntax < 0.0 ||
        weights.dataflow < 0.0 || std::abs(wsum - 1.0) > 1e-9)
        throw Error("codebleu weights must be non-negative and sum to 1");

    MetricScore s;
    s.metric_name = "codebleu";

    TokenSequence cand_toks = tokenize_code(candidate, language);
    TokenSequence ref_toks = tokenize_code(reference, language);
    SyntaxTree cand_tree = parse_tree(candidate, language);
    SyntaxTree ref_tree = parse_tree(reference, language);

    double ngram_score = 0.0, weighted_score = 0.0, syntax_score = 0.0,
           dataflow_score = 0.0;
    bool text_defined = !ref_toks.tokens.empty();
    if (text_defined && !cand_toks.tokens.empty()) {
        ngram_score = bleu(cand_toks, {ref_toks}).value;
        weighted_score = weighted_bleu(cand_toks, ref_toks, 4, language, s.components);
    }

    auto cand_shapes = multiset_of(subtree_shapes(cand_tree));
    auto ref_shapes = multiset_of(subtree_shapes(ref_tree));
    auto [shape_matched, shape_total] = overlap(cand_shapes, ref_shapes);
    bool syntax_defined = shape_total > 0;
    if (syntax_defined)
        syntax_score = static_cast<double>(shape_matched) / static_cast<double>(shape_total);

    auto cand_flow = multiset_of(dataflow_items(cand_tree));
    auto ref_flow = multiset_of(dataflow_items(ref_tree));
    auto [flow_matched, flow_total] = overlap(cand_flow, ref_flow);
    bool dataflow_defined = flow_total > 0;
    if (dataflow_defined)
        dataflow_score = static_cast<double>(flow_matched) / static_cast<double>(flow_total);

    struct Sub {
        const char* name;
        double score;
        bool defined;
        double weight;
    } subs[] = {
        {"ngram", ngram_score, text_defined, weights.ngram},
        {"weighted", weighted_score, text_defined, weights.weighted},
        {"syntax", syntax_score, syntax_defined, weights.syntax},
        {"dataflow", dataflow_score, dataflow_defined, weights.dataflow},
    };
    double total_w = 0.0;
    for (const auto& sub : subs)
        if (sub.defined) total_w += sub.weight;
    double value = 0.0;
    for (const auto& sub : subs) {
        double eff = (sub.defined && total_w > 0.0) ? sub.weight / total_w : 0.0;
        s.components[sub.name] = sub.score;
        s.components[std::string(sub.name) + "_defined"] = sub.defined ? 1.0 : 0.0;
        s.components[std::string(sub.name) + "_weight"] = eff;
        value += eff * sub.score;
    }
    if (total_w == 0.0) s.degenerate = true;
    s.value = value;
    return s;
}

MetricScore ruby(const std::string& candidate, const std::string& reference,
                 Lang language) {
    MetricScore s;
    s.metric_name = "ruby";

    SyntaxTree cand_tree = parse_tree(candidate, language);
    SyntaxTree ref_tree = parse_tree(reference, language);
    bool cand_ok = !cand_tree.has_errors;
    bool ref_ok = !ref_tree.has_errors;
    s.components["candidate_parse_ok"] = cand_ok ? 1.0 : 0.0;
    s.components["reference_parse_ok"] = ref_ok ? 1.0 : 0.0;
    s.components["tier_pdg"] = 0.0;
    s.components["tier_ast"] = 0.0;
    s.components["tier_string"] = 0.0;

    if (language == Lang::python && cand_ok && ref_ok) {
        std::vector<std::string> cand_items = dataflow_items(cand_tree);
        control_items(cand_tree.root, cand_items);
        std::vector<std::string> ref_items = dataflow_items(ref_tree);
        control_items(ref_tree.root, ref_items);
        // two edgeless graphs carry nothing to compare; fall to the AST tier
        if (!cand_items.empty() || !ref_items.empty()) {
            s.components["tier_pdg"] = 1.0;
            s.components["pdg_items_candidate"] = static_cast<double>(cand_items.size());
            s.components["pdg_items_reference"] = static_cast<double>(ref_items.size());
            s.value = jaccard(multiset_of(cand_items), multiset_of(ref_items));
            return s;
        }
    }
    if (cand_ok && ref_ok) {
        size_t ted = tree_edit_distance(cand_tree.root, ref_tree.root);
        size_t larger = std::max(count_nodes(cand_tree.root), count_nodes(ref_tree.root));
        s.components["tier_ast"] = 1.0;
        s.components["tree_edit_distance"] = static_cast<double>(ted);
        s.components["max_nodes"] = static_cast<double>(larger);
        double sim = 1.0 - static_cast<double>(ted) / static_cast<double>(larger);
        s.value = std::max(0.0, sim);
        return s;
    }
    s.components["tier_string"] = 1.0;
    MetricScore edit = token_edit_similarity(tokenize_code(candidate, language),
                                             tokenize_code(reference, language));
    s.value = edit.value;
    s.degenerate = edit.degenerate;
    return s;
}

RubyTier ruby_tier(const MetricScore& score) {
    auto flag = [&](const char* name) {
        auto it = score.components.find(name);
        return it != score.components.end() && it->second == 1.0;
    };
    if (flag("tier_pdg")) return RubyTier::pdg;
    if (flag("tier_ast")) return RubyTier::ast;
    return RubyTier::string;
}

std::vector<std::string> builtin_scorers() {
    return {"bleu", "rouge_l", "chrf", "meteor", "ruby", "codebleu"};
}

MetricScore run_scorer(const std::string& name, const std::string& candidate,
                       const std::string& reference, Lang language) {
    if (name == "bleu")
        return bleu(tokenize_code(candidate, language),
                    {tokenize_code(reference, language)});
    if (name == "rouge_l")
        return rouge_l(tokenize_code(candidate, language),
                       tokenize_code(reference, language));
    if (name == "chrf") return chrf(candidate, reference);
    if (name == "meteor")
        return meteor(tokenize_code(candidate, language),
                      tokenize_code(reference, language));
    if (name == "ruby") return ruby(candidate, reference, language);
    if (name == "codebleu") return codebleu(candidate, reference, language);
    std::string known;
    for (const auto& n : builtin_scorers()) {
        if (!known.empty()) known += ", ";
        known += n;
    }
    throw Error("unknown scorer '" + name + "' (available: " + known + ")");
}

}  // namespace codejudge

#pragma once

#include <string>
#include <vector>

#include "codejudge/core.hpp"
#include "codejudge/string_metrics.hpp"
#include "codejudge/syntax.hpp"

namespace codejudge {

struct CodeBleuWeights {
    double ngram = 0.25;
    double weighted = 0.25;
    double syntax = 0.25;
    double dataflow = 0.25;
};

// Canonical def-use triple: variables are numbered by first mention in edge
// order, definitions and uses get per-variable ordinals, so alpha-renamed
// programs produce identical triples.
struct DataflowTriple {
    size_t var = 0;
    size_t def_ord = 0;
    size_t use_ord = 0;

    bool operator==(const DataflowTriple&) const = default;
};

std::vector<DataflowTriple> canonical_dataflow(const SyntaxTree& tree);

// Truncated subtree shapes used by the syntax sub-metric: every node with
// children yields its height-2 shape, and additionally its height-3 shape
// when it has a grandchild. Identifier and literal leaves collapse via
// shape_label.
std::vector<std::string> subtree_shapes(const SyntaxTree& tree);

// Composite of token BLEU, keyword-weighted token BLEU (n-grams containing a
// reserved word count 4x), subtree-shape match and dataflow match, each
// weighted 1/4. A sub-metric with nothing to match on the reference side is
// dropped and the remaining weights renormalize. Components carry each
// sub-score, its defined flag and its effective weight.
MetricScore codebleu(const std::string& candidate, const std::string& reference,
                     Lang language, const CodeBleuWeights& weights = {});

enum class RubyTier { pdg, ast, string };

// Tiered program similarity: def-use + control-sequence graph Jaccard when
// both sides are python and parse cleanly, else normalized tree edit
// similarity when both parse cleanly, else token edit similarity. The tier
// taken is recorded one-hot in components (tier_pdg, tier_ast, tier_string).
MetricScore ruby(const std::string& candidate, const std::string& reference,
                 Lang language);

RubyTier ruby_tier(const MetricScore& score);

// Names accepted by run_scorer, in report order.
std::vector<std::string> builtin_scorers();

// Dispatch by scorer name; throws Error for unknown names.
MetricScore run_scorer(const std::string& name, const std::string& candidate,
                       const std::string& reference, Lang language);

}  // namespace codejudge

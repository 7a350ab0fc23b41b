#pragma once

#include <map>
#include <string>
#include <vector>

#include "codejudge/tokenize.hpp"

namespace codejudge {

// Every metric returns a value in [0,1]. Degenerate inputs (empty candidate
// or reference where the math needs one) never abort a run: the score is 0
// (or 1 for the documented both-empty identity cases) and `degenerate` is set.
struct MetricScore {
    std::string metric_name;
    double value = 0.0;
    std::map<std::string, double> components;
    bool degenerate = false;
};

enum class BleuSmoothing { none, add_one };

// Sentence BLEU over token sequences with clipped n-gram precisions for
// n = 1..max_n and a brevity penalty against the closest reference length
// (ties resolved toward the shorter reference). With add_one smoothing (the
// default) a zero raw match count for n > 1 is replaced by 1/(total+1);
// unigram precision is never smoothed, so a fully disjoint candidate scores 0.
MetricScore bleu(const TokenSequence& candidate,
                 const std::vector<TokenSequence>& references,
                 size_t max_n = 4,
                 BleuSmoothing smoothing = BleuSmoothing::add_one);

// LCS-based F-score: P = LCS/|candidate|, R = LCS/|reference|,
// F = (1+beta^2)PR / (R + beta^2 P).
MetricScore rouge_l(const TokenSequence& candidate,
                    const TokenSequence& reference,
                    double beta = 1.0);

// Character n-gram F-beta over whitespace-stripped text, n = 1..max_n capped
// by the shorter side's length. Per-n precision/recall are averaged
// arithmetically, then combined with beta (recall weighted beta^2 times).
MetricScore chrf(const std::string& candidate,
                 const std::string& reference,
                 size_t max_n = 6,
                 double beta = 2.0);

// Exact unigram matching (per-type match count = min of the two
// multiplicities). Chunks are counted by a greedy left-to-right alignment
// that extends the current chunk when the next reference position matches,
// otherwise takes the leftmost unused occurrence; exact chunk minimization
// is intractable in general.
// Score = Fmean * (1 - gamma * (chunks/matches)^beta_frag), with
// Fmean = P*R / (alpha*P + (1-alpha)*R).
MetricScore meteor(const TokenSequence& candidate,
                   const TokenSequence& reference,
                   double alpha = 0.9,
                   double beta_frag = 3.0,
                   double gamma = 0.5);

// 1 - levenshtein(candidate, reference) / max(lengths); 1.0 when both are
// empty. Unit insert/delete/substitute costs over whole tokens.
MetricScore token_edit_similarity(const TokenSequence& candidate,
                                  const TokenSequence& reference);

size_t lcs_length(const std::vector<std::string>& a,
                  const std::vector<std::string>& b);

size_t levenshtein(const std::vector<std::string>& a,
                   const std::vector<std::string>& b);

}  // namespace codejudge

#include "codejudge/string_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace codejudge {

namespace {

MetricScore degenerate_score(const char* name, double value, const char* why) {
    MetricScore s;
    s.metric_name = name;
    s.value = value;
    s.degenerate = true;
    s.components[why] = 1.0;
    return s;
}

}  // namespace

MetricScore bleu(const TokenSequence& candidate,
                 const std::vector<TokenSequence>& references,
                 size_t max_n,
                 BleuSmoothing smoothing) {
    if (references.empty()) return degenerate_score("bleu", 0.0, "no_references");
    if (candidate.tokens.empty()) return degenerate_score("bleu", 0.0, "empty_candidate");

    MetricScore s;
    s.metric_name = "bleu";
    double log_sum = 0.0;
    bool zero = false;
    for (size_t n = 1; n <= max_n; ++n) {
        auto cand = token_ngrams(candidate, n);
        std::map<std::string, size_t> best;
        for (const auto& ref : references)
            for (const auto& [gram, count] : token_ngrams(ref, n))
                best[gram] = std::max(best[gram], count);
        size_t total = 0, matched = 0;
        for (const auto& [gram, count] : cand) {
            total += count;
            auto it = best.find(gram);
            if (it != best.end()) matched += std::min(count, it->second);
        }
        double p;
        if (matched == 0 && n > 1 && smoothing == BleuSmoothing::add_one)
            p = 1.0 / static_cast<double>(total + 1);
        else
            p = total ? static_cast<double>(matched) / static_cast<double>(total) : 0.0;
        s.components["p" + std::to_string(n)] = p;
        if (p <= 0.0)
            zero = true;
        else
            log_sum += std::log(p) / static_cast<double>(max_n);
    }

    size_t c = candidate.tokens.size();
    size_t r = references[0].tokens.size();
    for (const auto& ref : references) {
        size_t len = ref.tokens.size();
        auto dist = [&](size_t l) {
            return l > c ? l - c : c - l;
        };
        if (dist(len) < dist(r) || (dist(len) == dist(r) && len < r)) r = len;
    }
    double bp = c >= r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
    s.components["brevity_penalty"] = bp;
    s.value = zero ? 0.0 : bp * std::exp(log_sum);
    return s;
}

size_t lcs_length(const std::vector<std::string>& a,
                  const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

MetricScore rouge_l(const TokenSequence& candidate,
                    const TokenSequence& reference,
                    double beta) {
    if (candidate.tokens.empty()) return degenerate_score("rouge_l", 0.0, "empty_candidate");
    if (reference.tokens.empty()) return degenerate_score("rouge_l", 0.0, "empty_reference");

    MetricScore s;
    s.metric_name = "rouge_l";
    size_t lcs = lcs_length(candidate.tokens, reference.tokens);
    double p = static_cast<double>(lcs) / static_cast<double>(candidate.tokens.size());
    double r = static_cast<double>(lcs) / static_cast<double>(reference.tokens.size());
    s.components["lcs"] = static_cast<double>(lcs);
    s.components["precision"] = p;
    s.components["recall"] = r;
    double denom = r + beta * beta * p;
    s.value = denom > 0.0 ? (1.0 + beta * beta) * p * r / denom : 0.0;
    return s;
}

MetricScore chrf(const std::string& candidate,
                 const std::string& reference,
                 size_t max_n,
                 double beta) {
    size_t clen = char_count_no_ws(candidate);
    size_t rlen = char_count_no_ws(reference);
    if (clen == 0 && rlen == 0) return degenerate_score("chrf", 0.0, "both_empty");
    if (clen == 0) return degenerate_score("chrf", 0.0, "empty_candidate");
    if (rlen == 0) return degenerate_score("chrf", 0.0, "empty_reference");

    MetricScore s;
    s.metric_name = "chrf";
    size_t eff_n = std::min(max_n, std::min(clen, rlen));
    double psum = 0.0, rsum = 0.0;
    for (size_t n = 1; n <= eff_n; ++n) {
        auto cand = char_ngrams(candidate, n);
        auto ref = char_ngrams(reference, n);
        size_t ctotal = 0, rtotal = 0, matched = 0;
        for (const auto& [g, cnt] : cand) ctotal += cnt;
        for (const auto& [g, cnt] : ref) rtotal += cnt;
        for (const auto& [g, cnt] : cand) {
            auto it = ref.find(g);
            if (it != ref.end()) matched += std::min(cnt, it->second);
        }
        psum += ctotal ? static_cast<double>(matched) / static_cast<double>(ctotal) : 0.0;
        rsum += rtotal ? static_cast<double>(matched) / static_cast<double>(rtotal) : 0.0;
    }
    double p = psum / static_cast<double>(eff_n);
    double r = rsum / static_cast<double>(eff_n);
    s.components["precision"] = p;
    s.components["recall"] = r;
    double denom = beta * beta * p + r;
    s.value = denom > 0.0 ? (1.0 + beta * beta) * p * r / denom : 0.0;
    return s;
}

MetricScore meteor(const TokenSequence& candidate,
                   const TokenSequence& reference,
                   double alpha,
                   double beta_frag,
                   double gamma) {
    if (candidate.tokens.empty()) return degenerate_score("meteor", 0.0, "empty_candidate");
    if (reference.tokens.empty()) return degenerate_score("meteor", 0.0, "empty_reference");

    const auto& cand = candidate.tokens;
    const auto& ref = reference.tokens;
    std::vector<bool> used(ref.size(), false);
    std::vector<long> match_pos(cand.size(), -1);
    long prev = -2;
    size_t matches = 0, chunks = 0;
    for (size_t i = 0; i < cand.size(); ++i) {
        long pos = -1;
        size_t next = static_cast<size_t>(prev + 1);
        if (prev >= -1 && next < ref.size() && !used[next] && ref[next] == cand[i]) {
            pos = static_cast<long>(next);
        } else {
            for (size_t j = 0; j < ref.size(); ++j)
                if (!used[j] && ref[j] == cand[i]) {
                    pos = static_cast<long>(j);
                    break;
                }
        }
        if (pos >= 0) {
            used[static_cast<size_t>(pos)] = true;
            match_pos[i] = pos;
            ++matches;
            if (pos != prev + 1) ++chunks;
            prev = pos;
        } else {
            prev = -2;
        }
    }

    MetricScore s;
    s.metric_name = "meteor";
    s.components["matches"] = static_cast<double>(matches);
    s.components["chunks"] = static_cast<double>(chunks);
    if (matches == 0) {
        s.degenerate = true;
        s.components["no_matches"] = 1.0;
        return s;
    }
    double p = static_cast<double>(matches) / static_cast<double>(cand.size());
    double r = static_cast<double>(matches) / static_cast<double>(ref.size());
    double fmean = p * r / (alpha * p + (1.0 - alpha) * r);
    double frag = static_cast<double>(chunks) / static_cast<double>(matches);
    double penalty = gamma * std::pow(frag, beta_frag);
    s.components["fmean"] = fmean;
    s.components["penalty"] = penalty;
    s.value = fmean * (1.0 - penalty);
    return s;
}

size_t levenshtein(const std::vector<std::string>& a,
                   const std::vector<std::string>& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

MetricScore token_edit_similarity(const TokenSequence& candidate,
                                  const TokenSequence& reference) {
    MetricScore s;
    s.metric_name = "token_edit_similarity";
    size_t maxlen = std::max(candidate.tokens.size(), reference.tokens.size());
    if (maxlen == 0) {
        s.value = 1.0;
        s.degenerate = true;
        s.components["both_empty"] = 1.0;
        return s;
    }
    size_t dist = levenshtein(candidate.tokens, reference.tokens);
    s.components["distance"] = static_cast<double>(dist);
    s.value = 1.0 - static_cast<double>(dist) / static_cast<double>(maxlen);
    return s;
}

}  // namespace codejudge

#include "codejudge/meta_eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace codejudge {

namespace {

void validate(const PairedSeries& series) {
    if (series.x.size() != series.y.size())
        throw LengthMismatch(series.x.size(), series.y.size());
    if (!series.group_ids.empty() && series.group_ids.size() != series.x.size())
        throw LengthMismatch(series.group_ids.size(), series.x.size());
    for (double v : series.x)
        if (!std::isfinite(v)) throw Error("paired series contains a non-finite x value");
    for (double v : series.y)
        if (!std::isfinite(v)) throw Error("paired series contains a non-finite y value");
}

bool constant(const std::vector<double>& values) {
    return std::all_of(values.begin(), values.end(),
                       [&](double v) { return v == values.front(); });
}

// pairs within runs of equal keys: sum k(k-1)/2
unsigned long long tie_pairs(const std::vector<double>& sorted) {
    unsigned long long total = 0;
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        unsigned long long run = j - i;
        total += run * (run - 1) / 2;
        i = j;
    }
    return total;
}

// strict inversions counted by merge sort
unsigned long long count_inversions(std::vector<double>& values) {
    std::vector<double> buffer(values.size());
    unsigned long long inversions = 0;
    for (size_t width = 1; width < values.size(); width *= 2) {
        for (size_t lo = 0; lo + width < values.size(); lo += 2 * width) {
            size_t mid = lo + width;
            size_t hi = std::min(lo + 2 * width, values.size());
            size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (values[b] < values[a]) {
                    inversions += mid - a;
                    buffer[out++] = values[b++];
                } else {
                    buffer[out++] = values[a++];
                }
            }
            while (a < mid) buffer[out++] = values[a++];
            while (b < hi) buffer[out++] = values[b++];
            std::copy(buffer.begin() + static_cast<long>(lo),
                      buffer.begin() + static_cast<long>(hi),
                      values.begin() + static_cast<long>(lo));
        }
    }
    return inversions;
}

}  // namespace

std::optional<double> kendall_tau(const PairedSeries& series) {
    validate(series);
    const size_t n = series.x.size();
    if (n < 2) throw TooFewPoints(n);
    if (constant(series.x) || constant(series.y)) return std::nullopt;

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (series.x[a] != series.x[b]) return series.x[a] < series.x[b];
        return series.y[a] < series.y[b];
    });

    // tie counts in x and in (x, y) jointly over runs of the sorted order
    unsigned long long xtie = 0, xytie = 0;
    {
        size_t i = 0;
        while (i < n) {
            size_t j = i + 1;
            while (j < n && series.x[order[j]] == series.x[order[i]]) ++j;
            unsigned long long run = j - i;
            xtie += run * (run - 1) / 2;
            size_t k = i;
            while (k < j) {
                size_t m = k + 1;
                while (m < j && series.y[order[m]] == series.y[order[k]]) ++m;
                unsigned long long sub = m - k;
                xytie += sub * (sub - 1) / 2;
                k = m;
            }
            i = j;
        }
    }

    std::vector<double> y_in_x_order(n);
    for (size_t i = 0; i < n; ++i) y_in_x_order[i] = series.y[order[i]];
    unsigned long long discordant = count_inversions(y_in_x_order);
    // y_in_x_order is now sorted
    unsigned long long ytie = tie_pairs(y_in_x_order);

    const unsigned long long n0 = static_cast<unsigned long long>(n) * (n - 1) / 2;
    long double numerator = static_cast<long double>(n0) - xtie - ytie + xytie -
                            2.0L * static_cast<long double>(discordant);
    long double denominator = std::sqrt(static_cast<long double>(n0 - xtie)) *
                              std::sqrt(static_cast<long double>(n0 - ytie));
    double tau = static_cast<double>(numerator / denominator);
    return std::clamp(tau, -1.0, 1.0);
}

std::optional<double> pearson(const PairedSeries& series) {
    validate(series);
    const size_t n = series.x.size();
    if (n < 2) throw TooFewPoints(n);
    if (constant(series.x) || constant(series.y)) return std::nullopt;

    long double mean_x = 0, mean_y = 0;
    for (size_t i = 0; i < n; ++i) {
        mean_x += series.x[i];
        mean_y += series.y[i];
    }
    mean_x /= n;
    mean_y /= n;
    long double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        long double dx = series.x[i] - mean_x;
        long double dy = series.y[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) return std::nullopt;
    double r = static_cast<double>(sxy / std::sqrt(sxx) / std::sqrt(syy));
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const size_t n = values.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (size_t k = i; k < j; ++k) ranks[order[k]] = mean_rank;
        i = j;
    }
    return ranks;
}

std::optional<double> spearman(const PairedSeries& series) {
    validate(series);
    if (series.x.size() < 2) throw TooFewPoints(series.x.size());
    PairedSeries ranked;
    ranked.x = average_ranks(series.x);
    ranked.y = average_ranks(series.y);
    return pearson(ranked);
}

CorrelationReport example_level(const PairedSeries& series, UndefinedGroupPolicy policy) {
    validate(series);
    if (series.group_ids.empty())
        throw Error("example-level correlation needs group ids");

    std::map<std::string, PairedSeries> groups;
    for (size_t i = 0; i < series.x.size(); ++i) {
        PairedSeries& group = groups[series.group_ids[i]];
        group.x.push_back(series.x[i]);
        group.y.push_back(series.y[i]);
    }

    long double sum_tau = 0, sum_r_p = 0, sum_r_s = 0;
    size_t defined = 0, undefined = 0;
    for (const auto& [id, group] : groups) {
        (void)id;
        std::optional<double> tau, r_p, r_s;
        if (group.x.size() >= 2) {
            tau = kendall_tau(group);
            r_p = pearson(group);
            r_s = spearman(group);
        }
        if (tau && r_p && r_s) {
            sum_tau += *tau;
            sum_r_p += *r_p;
            sum_r_s += *r_s;
            ++defined;
        } else {
            ++undefined;
        }
    }

    CorrelationReport report;
    report.level = Level::example;
    if (policy == UndefinedGroupPolicy::skip) {
        if (defined == 0) throw NoUsableGroups();
        report.n_groups_used = defined;
        report.n_groups_skipped = undefined;
        report.tau = static_cast<double>(sum_tau / defined);
        report.r_p = static_cast<double>(sum_r_p / defined);
        report.r_s = static_cast<double>(sum_r_s / defined);
    } else {
        // undefined groups enter the mean as 0
        size_t total = defined + undefined;
        if (total == 0) throw NoUsableGroups();
        report.n_groups_used = total;
        report.n_groups_skipped = undefined;
        report.tau = static_cast<double>(sum_tau / total);
        report.r_p = static_cast<double>(sum_r_p / total);
        report.r_s = static_cast<double>(sum_r_s / total);
    }
    return report;
}

CorrelationReport corpus_level(const PairedSeries& series) {
    validate(series);
    if (series.x.size() < 2) throw TooFewPoints(series.x.size());
    CorrelationReport report;
    report.level = Level::corpus;
    report.tau = kendall_tau(series);
    report.r_p = pearson(series);
    report.r_s = spearman(series);
    return report;
}

}  // namespace codejudge

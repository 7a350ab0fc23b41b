#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "codejudge/errors.hpp"

namespace codejudge {

struct PairedSeries {
    std::vector<double> x;                // metric scores
    std::vector<double> y;                // human grades or execution labels
    std::vector<std::string> group_ids;   // problem ids; empty means ungrouped
};

enum class Level { example, corpus };
enum class UndefinedGroupPolicy { skip, zero };

struct CorrelationReport {
    std::optional<double> tau;   // Kendall tau-b
    std::optional<double> r_p;   // Pearson
    std::optional<double> r_s;   // Spearman
    Level level = Level::corpus;
    size_t n_groups_used = 0;     // example level only
    size_t n_groups_skipped = 0;  // example level only
};

// Tie-corrected Kendall tau-b via Knight's O(n log n) algorithm:
// (C - D) / sqrt((n0 - Tx)(n0 - Ty)). nullopt when either side is constant.
std::optional<double> kendall_tau(const PairedSeries& series);

// Product-moment correlation; nullopt on zero variance.
std::optional<double> pearson(const PairedSeries& series);

// Pearson over average ranks (ties get the mean rank).
std::optional<double> spearman(const PairedSeries& series);

// 1-based ranks with ties averaged, e.g. (10, 10, 20) -> (1.5, 1.5, 3).
std::vector<double> average_ranks(const std::vector<double>& values);

// Unweighted mean of per-group statistics. Groups where the statistics are
// undefined (size < 2 or a constant side) are skipped and counted under the
// default policy; the zero policy counts them into the mean as 0 instead.
CorrelationReport example_level(const PairedSeries& series,
                                UndefinedGroupPolicy policy = UndefinedGroupPolicy::skip);

// One statistic over the pooled pairs, groups ignored.
CorrelationReport corpus_level(const PairedSeries& series);

}  // namespace codejudge

#pragma once

#include <string>
#include <vector>

#include "codejudge/meta_eval.hpp"

namespace codejudge {

struct ScorerSeries {
    std::string scorer;
    PairedSeries series;  // scores paired with the target, grouped by problem
};

struct ReportRow {
    std::string scorer;
    CorrelationReport example;
    CorrelationReport corpus;
};

struct ReportTable {
    std::string target;  // "human_grade" or "execution_label"
    std::vector<ReportRow> rows;
};

// One row per scorer, in input order. Scorers whose series is too small or
// degenerate get undefined entries instead of aborting the table.
ReportTable build_report(const std::vector<ScorerSeries>& columns,
                         const std::string& target_name,
                         UndefinedGroupPolicy policy = UndefinedGroupPolicy::skip);

// Fixed columns: tau/r_p/r_s at example and corpus level plus group counts.
// Per column the best value is starred (*v*) and the second best underlined
// (_v_); exact ties share the marker; undefined prints as n/a.
std::string render_report_text(const ReportTable& table);

// Long format: scorer,level,stat,value,groups_used,groups_skipped. Values at
// full precision (%.12g), empty when undefined; group counts only on example
// rows.
std::string render_report_csv(const ReportTable& table);

}  // namespace codejudge

#include "codejudge/report.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>

namespace codejudge {

namespace {

size_t distinct_groups(const PairedSeries& series) {
    return std::set<std::string>(series.group_ids.begin(), series.group_ids.end()).size();
}

std::string format_value(double value, const char* spec) {
    if (value == 0) value = 0;  // avoid "-0.000"
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), spec, value);
    return buffer;
}

const std::optional<double>& cell(const ReportRow& row, size_t column) {
    switch (column) {
        case 0: return row.example.tau;
        case 1: return row.example.r_p;
        case 2: return row.example.r_s;
        case 3: return row.corpus.tau;
        case 4: return row.corpus.r_p;
        default: return row.corpus.r_s;
    }
}

}  // namespace

ReportTable build_report(const std::vector<ScorerSeries>& columns,
                         const std::string& target_name, UndefinedGroupPolicy policy) {
    ReportTable table;
    table.target = target_name;
    for (const ScorerSeries& column : columns) {
        ReportRow row;
        row.scorer = column.scorer;
        row.example.level = Level::example;
        row.corpus.level = Level::corpus;
        try {
            row.example = example_level(column.series, policy);
        } catch (const NoUsableGroups&) {
            row.example.n_groups_skipped = distinct_groups(column.series);
        } catch (const Error&) {
            // missing group ids or too few pairs: leave undefined
        }
        try {
            row.corpus = corpus_level(column.series);
        } catch (const TooFewPoints&) {
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string render_report_text(const ReportTable& table) {
    const char* headers[] = {"scorer",     "example_tau", "example_r_p", "example_r_s",
                             "corpus_tau", "corpus_r_p",  "corpus_r_s",  "groups"};

    // per column: values equal to the best get *v*, the next distinct value _v_
    std::optional<double> best[6], second[6];
    for (size_t c = 0; c < 6; ++c) {
        std::set<double, std::greater<double>> values;
        for (const ReportRow& row : table.rows)
            if (const std::optional<double>& v = cell(row, c)) values.insert(*v);
        auto it = values.begin();
        if (it != values.end()) best[c] = *it++;
        if (it != values.end()) second[c] = *it;
    }

    std::vector<std::vector<std::string>> cells;
    cells.push_back({headers, headers + 8});
    for (const ReportRow& row : table.rows) {
        std::vector<std::string> line;
        line.push_back(row.scorer);
        for (size_t c = 0; c < 6; ++c) {
            const std::optional<double>& v = cell(row, c);
            if (!v) {
                line.push_back("n/a");
            } else if (best[c] && *v == *best[c]) {
                line.push_back("*" + format_value(*v, "%.3f") + "*");
            } else if (second[c] && *v == *second[c]) {
                line.push_back("_" + format_value(*v, "%.3f") + "_");
            } else {
                line.push_back(format_value(*v, "%.3f"));
            }
        }
        line.push_back(std::to_string(row.example.n_groups_used) + "/" +
                       std::to_string(row.example.n_groups_skipped));
        cells.push_back(std::move(line));
    }

    size_t widths[8] = {0};
    for (const auto& line : cells)
        for (size_t c = 0; c < 8; ++c) widths[c] = std::max(widths[c], line[c].size());

    std::string out = "correlation with " + table.target + "\n\n";
    for (const auto& line : cells) {
        for (size_t c = 0; c < 8; ++c) {
            if (c > 0) out += "  ";
            // scorer column left-aligned, the rest right-aligned
            size_t pad = widths[c] - line[c].size();
            if (c == 0) {
                out += line[c];
                if (c + 1 < 8) out.append(pad, ' ');
            } else {
                out.append(pad, ' ');
                out += line[c];
            }
        }
        out += "\n";
    }
    return out;
}

std::string render_report_csv(const ReportTable& table) {
    std::string out = "scorer,level,stat,value,groups_used,groups_skipped\n";
    const char* stat_names[] = {"tau", "r_p", "r_s"};
    for (const ReportRow& row : table.rows) {
        for (size_t c = 0; c < 6; ++c) {
            const std::optional<double>& v = cell(row, c);
            out += row.scorer;
            out += c < 3 ? ",example," : ",corpus,";
            out += stat_names[c % 3];
            out += ",";
            if (v) out += format_value(*v, "%.12g");
            if (c < 3) {
                out += "," + std::to_string(row.example.n_groups_used) + "," +
                       std::to_string(row.example.n_groups_skipped);
            } else {
                out += ",,";
            }
            out += "\n";
        }
    }
    return out;
}

}  // namespace codejudge

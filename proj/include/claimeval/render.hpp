#pragma once
// Plain-text table rendering for reports and correlation summaries.
//
// Tables show metric fractions scaled to percent with one decimal; an
// undefined value prints as an em dash. Stored (jsonl) values stay full
// precision — scaling is display-only.

#include <array>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "claimeval/io.hpp"
#include "claimeval/meta.hpp"
#include "claimeval/metrics.hpp"

namespace claimeval {

inline constexpr std::string_view kAbsentCell = "—";

inline std::string format_percent(std::optional<double> value) {
    if (!value) return std::string(kAbsentCell);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", *value * 100.0);
    return buf;
}

namespace detail {

// Column widths count code points, not bytes, so the em dash lines up.
inline size_t display_width(std::string_view s) {
    size_t width = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++width;
    }
    return width;
}

inline std::string pad_left(std::string_view s, size_t width) {
    const size_t w = display_width(s);
    std::string out(width > w ? width - w : 0, ' ');
    out += s;
    return out;
}

inline std::string pad_right(std::string_view s, size_t width) {
    std::string out(s);
    const size_t w = display_width(s);
    out.append(width > w ? width - w : 0, ' ');
    return out;
}

struct TableRow {
    std::string label;
    std::vector<std::string> cells;
};

inline std::string render_table(std::string_view label_header,
                                const std::vector<std::string>& cell_headers,
                                const std::vector<TableRow>& rows,
                                size_t rule_before_last_rows) {
    size_t label_width = display_width(label_header);
    for (const TableRow& row : rows) {
        label_width = std::max(label_width, display_width(row.label));
    }
    std::vector<size_t> widths(cell_headers.size());
    for (size_t c = 0; c < cell_headers.size(); ++c) {
        widths[c] = display_width(cell_headers[c]);
        for (const TableRow& row : rows) {
            widths[c] = std::max(widths[c], display_width(row.cells[c]));
        }
    }

    const auto emit_rule = [&](std::string& out) {
        size_t total = label_width;
        for (size_t w : widths) total += 2 + w;
        out.append(total, '-');
        out += '\n';
    };

    std::string out;
    out += pad_right(label_header, label_width);
    for (size_t c = 0; c < cell_headers.size(); ++c) {
        out += "  ";
        out += pad_left(cell_headers[c], widths[c]);
    }
    out += '\n';
    emit_rule(out);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rule_before_last_rows > 0 && r + rule_before_last_rows == rows.size()) {
            emit_rule(out);
        }
        out += pad_right(rows[r].label, label_width);
        for (size_t c = 0; c < rows[r].cells.size(); ++c) {
            out += "  ";
            out += pad_left(rows[r].cells[c], widths[c]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace detail

// Per-query rows followed by a ruled-off "average" row; one column per
// metric plus the mean response-claim count.
inline std::string render_report_table(std::span<const ReportRecord> per_query,
                                       const ReportRecord& aggregate) {
    std::vector<std::string> headers;
    for (Metric m : kAllMetrics) headers.emplace_back(metric_header(m));
    headers.emplace_back("#Claim");

    std::vector<detail::TableRow> rows;
    const auto to_row = [](std::string label, const ReportRecord& record) {
        detail::TableRow row;
        row.label = std::move(label);
        for (Metric m : kAllMetrics) {
            row.cells.push_back(format_percent(record.metrics.get(m)));
        }
        row.cells.push_back(std::to_string(record.metrics.n_response_claims));
        return row;
    };
    for (const ReportRecord& record : per_query) {
        rows.push_back(to_row(record.query_id, record));
    }
    rows.push_back(to_row("average", aggregate));
    return detail::render_table("query_id", headers, rows, 1);
}

struct CorrelationRow {
    std::string metric;
    std::string aspect;
    CorrelationResult result;
};

inline std::string render_correlation_table(std::span<const CorrelationRow> rows) {
    const std::vector<std::string> headers = {"Aspect", "Pearson", "Spearman", "N"};
    std::vector<detail::TableRow> out_rows;
    for (const CorrelationRow& row : rows) {
        detail::TableRow r;
        r.label = row.metric;
        r.cells.push_back(row.aspect);
        r.cells.push_back(format_percent(row.result.pearson));
        r.cells.push_back(format_percent(row.result.spearman));
        r.cells.push_back(std::to_string(row.result.n));
        out_rows.push_back(std::move(r));
    }
    return detail::render_table("Metric", headers, out_rows, 0);
}

// jsonl form keeps raw correlation fractions (no percent scaling).
inline std::string serialize_correlation(const CorrelationRow& row) {
    nlohmann::ordered_json doc;
    doc["metric"] = row.metric;
    doc["aspect"] = row.aspect;
    if (row.result.pearson) {
        doc["pearson"] = *row.result.pearson;
    } else {
        doc["pearson"] = nullptr;
    }
    if (row.result.spearman) {
        doc["spearman"] = *row.result.spearman;
    } else {
        doc["spearman"] = nullptr;
    }
    doc["n"] = row.result.n;
    doc["excluded_pairs"] = row.result.excluded_pairs;
    return doc.dump();
}

}  // namespace claimeval

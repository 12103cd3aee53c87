#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "hct.hpp"

namespace hctgen {

enum class RenderFormat { html, csv, markdown };

inline RenderFormat parse_render_format(const std::string& s) {
    if (s == "html") return RenderFormat::html;
    if (s == "csv") return RenderFormat::csv;
    if (s == "markdown" || s == "md") return RenderFormat::markdown;
    throw ConfigError("unknown render format: " + s);
}

namespace detail {

inline std::string html_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string csv_escape(const std::string& s) {
    bool need = s.find_first_of(",\"\n") != std::string::npos;
    if (!need) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// Per-leaf column of header labels, one per header line; merged cells are
// repeated across their whole span.
inline std::vector<std::vector<std::string>> flatten_header(const AxisLayout& axis) {
    std::vector<std::vector<std::string>> out(axis.leaves.size(),
                                              std::vector<std::string>(axis.depth));
    std::vector<const HeaderNode*> stack;
    auto walk = [&](auto&& self, const HeaderNode& node) -> void {
        stack.push_back(&node);
        if (node.children.empty()) {
            for (std::size_t leaf = node.leaf_begin; leaf < node.leaf_begin + node.leaf_count; ++leaf)
                for (const HeaderNode* n : stack)
                    for (int line = n->level; line < n->level + n->depth_span && line < axis.depth;
                         ++line)
                        out[leaf][static_cast<std::size_t>(line)] = n->label;
        } else {
            for (const auto& c : node.children) self(self, c);
        }
        stack.pop_back();
    };
    for (const auto& root : axis.forest) walk(walk, root);
    return out;
}

// Header cells that START on each leaf line of the row axis (for HTML
// rowspan emission), ordered outer to inner.
struct SpanCell {
    std::string label;
    std::size_t rowspan = 1;
    int colspan = 1;
    int level = 0;
};

inline std::vector<std::vector<SpanCell>> row_header_cells(const AxisLayout& axis) {
    std::vector<std::vector<SpanCell>> out(axis.leaves.size());
    auto walk = [&](auto&& self, const HeaderNode& node) -> void {
        out[node.leaf_begin].push_back(
            {node.label, node.leaf_count, node.children.empty() ? node.depth_span : 1, node.level});
        for (const auto& c : node.children) self(self, c);
    };
    for (const auto& root : axis.forest) walk(walk, root);
    for (auto& cells : out)
        std::sort(cells.begin(), cells.end(),
                  [](const SpanCell& a, const SpanCell& b) { return a.level < b.level; });
    return out;
}

struct BodyLine {
    bool label_only = false;  // indent-mode bare parent line
    std::string label;
    int indent = 0;
    std::size_t leaf = 0;  // valid when !label_only
};

inline std::vector<BodyLine> indent_lines(const AxisLayout& axis) {
    std::vector<BodyLine> out;
    auto walk = [&](auto&& self, const HeaderNode& node) -> void {
        if (node.children.empty()) {
            out.push_back({false, node.label, node.level, node.leaf_begin});
            return;
        }
        // the implicit aggregate line carries this node's label already
        const bool has_implicit = !node.children.empty() && node.children.front().implicit;
        if (!has_implicit) out.push_back({true, node.label, node.level, 0});
        for (const auto& c : node.children) self(self, c);
    };
    for (const auto& root : axis.forest) walk(walk, root);
    return out;
}

inline std::string indent_pad(int level) { return std::string(static_cast<std::size_t>(level) * 2, ' '); }

}  // namespace detail

inline std::string render_html(const HctTable& hct) {
    std::ostringstream os;
    const auto& cols = hct.col_axis;
    const auto& rows = hct.row_axis;
    const int row_header_width = hct.row_format == RowFormat::indent ? 1 : rows.depth;
    os << "<table border=\"" << (hct.borders ? 1 : 0) << "\">\n";
    os << "<caption>" << detail::html_escape(hct.title) << "</caption>\n";

    // column header lines
    std::vector<std::vector<const HeaderNode*>> per_line(static_cast<std::size_t>(cols.depth));
    auto walk = [&](auto&& self, const HeaderNode& node) -> void {
        per_line[static_cast<std::size_t>(node.level)].push_back(&node);
        for (const auto& c : node.children) self(self, c);
    };
    for (const auto& root : cols.forest) walk(walk, root);
    for (int line = 0; line < cols.depth; ++line) {
        os << "<tr>";
        if (line == 0)
            os << "<th colspan=\"" << row_header_width << "\" rowspan=\"" << cols.depth << "\"></th>";
        // nodes are pushed in DFS order which matches leaf order per line
        std::vector<const HeaderNode*> nodes = per_line[static_cast<std::size_t>(line)];
        std::sort(nodes.begin(), nodes.end(),
                  [](const HeaderNode* a, const HeaderNode* b) { return a->leaf_begin < b->leaf_begin; });
        for (const HeaderNode* n : nodes) {
            os << "<th";
            if (n->leaf_count > 1) os << " colspan=\"" << n->leaf_count << "\"";
            if (n->depth_span > 1) os << " rowspan=\"" << n->depth_span << "\"";
            os << ">" << detail::html_escape(n->label) << "</th>";
        }
        os << "</tr>\n";
    }

    auto value_cells = [&](std::size_t leaf_row) {
        std::ostringstream cells;
        for (std::size_t j = 0; j < cols.leaves.size(); ++j) {
            bool agg = rows.leaves[leaf_row].is_aggregate || cols.leaves[j].is_aggregate;
            cells << "<td>" << hct.format_cell(hct.grid[leaf_row][j], agg) << "</td>";
        }
        return cells.str();
    };

    if (hct.row_format == RowFormat::indent) {
        for (const auto& line : detail::indent_lines(rows)) {
            os << "<tr><th style=\"text-align:left;padding-left:" << line.indent * 2 << "em\">"
               << detail::html_escape(line.label) << "</th>";
            if (line.label_only)
                for (std::size_t j = 0; j < cols.leaves.size(); ++j) os << "<td></td>";
            else
                os << value_cells(line.leaf);
            os << "</tr>\n";
        }
    } else {
        auto cells = detail::row_header_cells(rows);
        for (std::size_t i = 0; i < rows.leaves.size(); ++i) {
            os << "<tr>";
            for (const auto& c : cells[i]) {
                os << "<th";
                if (c.rowspan > 1) os << " rowspan=\"" << c.rowspan << "\"";
                if (c.colspan > 1) os << " colspan=\"" << c.colspan << "\"";
                os << ">" << detail::html_escape(c.label) << "</th>";
            }
            os << value_cells(i) << "</tr>\n";
        }
    }
    os << "</table>\n";
    return os.str();
}

namespace detail {

// Shared CSV/Markdown flattening: header lines then body lines.
inline std::vector<std::vector<std::string>> flatten_table(const HctTable& hct) {
    const auto& cols = hct.col_axis;
    const auto& rows = hct.row_axis;
    const int row_header_width = hct.row_format == RowFormat::indent ? 1 : rows.depth;
    auto col_labels = flatten_header(cols);

    std::vector<std::vector<std::string>> lines;
    for (int line = 0; line < cols.depth; ++line) {
        std::vector<std::string> fields(static_cast<std::size_t>(row_header_width));
        for (std::size_t j = 0; j < cols.leaves.size(); ++j)
            fields.push_back(col_labels[j][static_cast<std::size_t>(line)]);
        lines.push_back(std::move(fields));
    }

    auto value_fields = [&](std::size_t i, std::vector<std::string>& fields) {
        for (std::size_t j = 0; j < cols.leaves.size(); ++j) {
            bool agg = rows.leaves[i].is_aggregate || cols.leaves[j].is_aggregate;
            fields.push_back(hct.format_cell(hct.grid[i][j], agg));
        }
    };

    if (hct.row_format == RowFormat::indent) {
        for (const auto& line : indent_lines(rows)) {
            std::vector<std::string> fields{indent_pad(line.indent) + line.label};
            if (line.label_only)
                fields.resize(1 + cols.leaves.size());
            else
                value_fields(line.leaf, fields);
            lines.push_back(std::move(fields));
        }
    } else {
        auto row_labels = flatten_header(rows);
        for (std::size_t i = 0; i < rows.leaves.size(); ++i) {
            std::vector<std::string> fields(row_labels[i].begin(), row_labels[i].end());
            value_fields(i, fields);
            lines.push_back(std::move(fields));
        }
    }
    return lines;
}

}  // namespace detail

inline std::string render_csv(const HctTable& hct) {
    std::ostringstream os;
    for (const auto& line : detail::flatten_table(hct)) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) os << ',';
            os << detail::csv_escape(line[i]);
        }
        os << '\n';
    }
    return os.str();
}

inline std::string render_markdown(const HctTable& hct) {
    std::ostringstream os;
    auto lines = detail::flatten_table(hct);
    const std::size_t header_lines = static_cast<std::size_t>(hct.col_axis.depth);
    std::size_t width = 0;
    for (const auto& l : lines) width = std::max(width, l.size());
    for (std::size_t k = 0; k < lines.size(); ++k) {
        os << '|';
        for (std::size_t i = 0; i < width; ++i) {
            std::string cell = i < lines[k].size() ? lines[k][i] : "";
            std::string esc;
            for (char c : cell) {
                if (c == '|') esc += "\\|";
                else esc += c;
            }
            os << ' ' << esc << " |";
        }
        os << '\n';
        if (k + 1 == header_lines) {
            os << '|';
            for (std::size_t i = 0; i < width; ++i) os << " --- |";
            os << '\n';
        }
    }
    return os.str();
}

inline std::string render(const HctTable& hct, RenderFormat fmt) {
    switch (fmt) {
        case RenderFormat::html: return render_html(hct);
        case RenderFormat::csv: return render_csv(hct);
        case RenderFormat::markdown: return render_markdown(hct);
    }
    return {};
}

// T_REL rendering for the *_DB.html companion file.
inline std::string render_relational_html(const RelationalTable& rel) {
    std::ostringstream os;
    os << "<table border=\"1\">\n<tr>";
    for (const auto& c : rel.column_names) os << "<th>" << detail::html_escape(c) << "</th>";
    os << "</tr>\n";
    for (std::size_t i = 0; i < rel.row_count(); ++i) {
        os << "<tr>";
        for (const auto& v : rel.tuples[i]) os << "<td>" << detail::html_escape(v) << "</td>";
        os << "<td>" << rel.format_value(rel.values[i]) << "</td></tr>\n";
    }
    os << "</table>\n";
    return os.str();
}

}  // namespace hctgen

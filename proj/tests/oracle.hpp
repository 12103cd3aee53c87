// Independent reference evaluator: exhaustive nested loops, its own
// formatting, grouping and sorting code. Shares only the data contracts
// (QueryInstance / RelationalTable) with the implementation it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hctgen/query.hpp"

namespace oracle {

inline std::string num_plain(double v) {
    v += 0.0;
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        char b[32];
        std::snprintf(b, sizeof(b), "%.0f", v);
        return b;
    }
    char b[64];
    std::snprintf(b, sizeof(b), "%.6f", v);
    std::string s = b;
    while (s.size() && s.back() == '0') s.pop_back();
    if (s.size() && s.back() == '.') s.pop_back();
    return s;
}

inline std::string num_fixed(double v, int d) {
    char b[64];
    std::snprintf(b, sizeof(b), "%.*f", d, v + 0.0);
    return b;
}

inline std::string value_text(const hctgen::RelationalTable& rel, double v) {
    return rel.integer_mode ? num_plain(v) : num_fixed(v, rel.decimals);
}

inline double round_at(double v, int d) {
    double s = 1;
    for (int i = 0; i < d; ++i) s *= 10;
    return std::round(v * s) / s;
}

inline std::string agg_text(hctgen::AggFun f, const std::vector<double>& xs,
                            const hctgen::RelationalTable& rel) {
    using hctgen::AggFun;
    double r = 0;
    if (f == AggFun::count) return num_plain(static_cast<double>(xs.size()));
    if (f == AggFun::min) {
        r = xs[0];
        for (double x : xs) r = x < r ? x : r;
    } else if (f == AggFun::max) {
        r = xs[0];
        for (double x : xs) r = x > r ? x : r;
    } else {
        for (double x : xs) r += x;
        if (f == AggFun::avg) {
            r = round_at(r / static_cast<double>(xs.size()), rel.decimals);
            return rel.integer_mode ? num_plain(r) : num_fixed(r, rel.decimals);
        }
    }
    if (!rel.integer_mode) r = round_at(r, rel.decimals);
    return value_text(rel, r);
}

inline bool tuple_in_block(const hctgen::AxisCondition& block,
                           const std::vector<std::string>& tuple,
                           const std::vector<hctgen::AxisComponent>& comps, std::size_t base) {
    std::size_t off = base;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& cond = block.comps[ci];
        if (!cond.paths.empty()) {
            bool hit = false;
            for (const auto& p : cond.paths) {
                bool same = true;
                for (std::size_t k = 0; k < p.size(); ++k)
                    if (tuple[off + k] != p[k]) same = false;
                if (same) hit = true;
            }
            if (!hit) return false;
        }
        off += static_cast<std::size_t>(comps[ci].level_count);
    }
    return true;
}

inline hctgen::Answer oracle_evaluate(const hctgen::QueryInstance& q,
                                      const hctgen::RelationalTable& rel,
                                      const hctgen::IndividualTableTemplate& tpl) {
    hctgen::Answer out;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < rel.tuples.size(); ++i) {
        if (!tuple_in_block(q.rows, rel.tuples[i], tpl.row_components, 0)) continue;
        bool any = false;
        for (const auto& b : q.col_blocks)
            any = any || tuple_in_block(b, rel.tuples[i], tpl.col_components, rel.row_levels);
        if (!any) continue;
        if (q.compare_op == '>' && rel.values[i] <= q.threshold) continue;
        if (q.compare_op == '<' && rel.values[i] >= q.threshold) continue;
        rows.push_back(i);
    }

    const int id = q.template_id;
    if (id == 1 || id == 2 || id == 3 || id == 6) {
        for (std::size_t i : rows) out.rows.push_back({value_text(rel, rel.values[i])});
        return out;
    }
    if (id == 4 || id == 5 || id == 7) {
        if (rows.empty()) return out;
        std::vector<double> xs;
        for (std::size_t i : rows) xs.push_back(rel.values[i]);
        std::vector<std::string> r;
        for (auto f : q.aggs) r.push_back(agg_text(f, xs, rel));
        out.rows.push_back(r);
        return out;
    }
    if (id >= 8 && id <= 11) {
        std::vector<std::pair<std::vector<std::string>, std::vector<double>>> groups;
        for (std::size_t i : rows) {
            std::vector<std::string> key;
            for (std::size_t c : q.group_by) key.push_back(rel.tuples[i][c]);
            bool found = false;
            for (auto& [k, xs] : groups)
                if (k == key) {
                    xs.push_back(rel.values[i]);
                    found = true;
                }
            if (!found) groups.push_back({key, {rel.values[i]}});
        }
        std::sort(groups.begin(), groups.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [key, xs] : groups) {
            std::vector<std::string> r;
            if (q.report_group_keys) r = key;
            for (auto f : q.aggs) r.push_back(agg_text(f, xs, rel));
            out.rows.push_back(r);
        }
        return out;
    }
    if (id == 12 || id == 13) {
        std::vector<double> xs;
        for (std::size_t i : rows) xs.push_back(rel.values[i]);
        for (std::size_t a = 0; a + 1 < xs.size(); ++a)  // selection sort
            for (std::size_t b = a + 1; b < xs.size(); ++b) {
                bool swap = q.order == hctgen::SortDir::desc ? xs[b] > xs[a] : xs[b] < xs[a];
                if (swap) std::swap(xs[a], xs[b]);
            }
        std::size_t n = xs.size();
        if (q.limit_k && static_cast<std::size_t>(*q.limit_k) < n)
            n = static_cast<std::size_t>(*q.limit_k);
        for (std::size_t a = 0; a < n; ++a) out.rows.push_back({value_text(rel, xs[a])});
        return out;
    }
    if (id == 14) {
        for (std::size_t i : rows) {
            std::vector<std::string> r;
            for (std::size_t c = 0; c < rel.row_levels; ++c) r.push_back(rel.tuples[i][c]);
            out.rows.push_back(r);
        }
        return out;
    }
    if (id == 15) {
        hctgen::Answer inner = oracle_evaluate(*q.inner, rel, tpl);
        for (std::size_t i : rows) {
            std::vector<std::string> attrs;
            for (std::size_t c = 0; c < rel.row_levels; ++c) attrs.push_back(rel.tuples[i][c]);
            bool keep = false;
            for (const auto& r : inner.rows)
                if (r == attrs) keep = true;
            if (!keep) continue;
            attrs.push_back(value_text(rel, rel.values[i]));
            out.rows.push_back(attrs);
        }
        return out;
    }
    return out;
}

}  // namespace oracle

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hct.hpp"

namespace hctgen {

enum class SortDir { none, asc, desc };

// Condition on one axis component. Paths are value tuples at one level of
// the component: a hierarchical group conditioned at level 2 holds (parent,
// child) pairs; an independent attribute holds single-value paths. An empty
// path list means the component is unconstrained (and unmentioned).
struct ComponentCondition {
    std::vector<std::vector<std::string>> paths;

    bool constrained() const { return !paths.empty(); }
    std::size_t level() const { return paths.empty() ? 0 : paths.front().size(); }

    friend bool operator==(const ComponentCondition& a, const ComponentCondition& b) {
        return a.paths == b.paths;
    }
};

// One conjunctive block over an axis (aligned with the template's components).
struct AxisCondition {
    std::vector<ComponentCondition> comps;

    bool constrained() const {
        for (const auto& c : comps)
            if (c.constrained()) return true;
        return false;
    }
};

struct QueryInstance {
    int template_id = 1;
    AxisCondition rows;
    std::vector<AxisCondition> col_blocks;  // disjunction of blocks, >= 1
    std::vector<AggFun> aggs;
    std::vector<std::size_t> group_by;      // T_REL column indices, ascending
    std::vector<std::string> group_names;   // display names for $GROUPBY
    std::vector<std::string> report_names;  // display names for $REPORTATTR / $OPPATTR
    bool report_group_keys = false;
    bool select_row_attrs = false;  // templates 14, 15
    bool select_value_too = false;  // template 15
    SortDir order = SortDir::none;
    std::optional<int> limit_k;
    char compare_op = 0;  // '<' or '>' (templates 14, 15)
    double threshold = 0.0;
    std::shared_ptr<QueryInstance> inner;  // template 15's embedded template 14
};

struct Answer {
    std::vector<std::vector<std::string>> rows;  // pre-formatted atoms
};

// "," between columns, "; " between rows.
inline std::string format_answer(const Answer& a) {
    std::string out;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < a.rows[i].size(); ++j) {
            if (j) out += ",";
            out += a.rows[i][j];
        }
    }
    return out;
}

namespace detail {

inline std::vector<std::size_t> component_offsets(const std::vector<AxisComponent>& comps,
                                                  std::size_t base) {
    std::vector<std::size_t> out;
    std::size_t o = base;
    for (const auto& c : comps) {
        out.push_back(o);
        o += static_cast<std::size_t>(c.level_count);
    }
    return out;
}

inline bool component_matches(const ComponentCondition& cond,
                              const std::vector<std::string>& tuple, std::size_t offset) {
    if (!cond.constrained()) return true;
    const std::size_t level = cond.level();
    for (const auto& path : cond.paths) {
        bool ok = true;
        for (std::size_t i = 0; i < level; ++i)
            if (tuple[offset + i] != path[i]) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

inline bool axis_matches(const AxisCondition& cond, const std::vector<std::string>& tuple,
                         const std::vector<std::size_t>& offsets) {
    for (std::size_t ci = 0; ci < cond.comps.size(); ++ci)
        if (!component_matches(cond.comps[ci], tuple, offsets[ci])) return false;
    return true;
}

inline std::string format_agg_result(AggFun fun, const std::vector<double>& xs,
                                     const RelationalTable& rel) {
    double v = apply_agg(fun, xs);
    if (fun == AggFun::count) return format_number(v);
    if (fun == AggFun::avg) {
        v = round_to(v, rel.decimals);
        return rel.integer_mode ? format_number(v) : format_fixed(v, rel.decimals);
    }
    if (!rel.integer_mode) v = round_to(v, rel.decimals);
    return rel.format_value(v);
}

}  // namespace detail

// Row indices matching the instance's conditions, in T_REL order.
inline std::vector<std::size_t> selected_rows(const QueryInstance& q, const RelationalTable& rel,
                                              const IndividualTableTemplate& tpl) {
    const auto row_offsets = detail::component_offsets(tpl.row_components, 0);
    const auto col_offsets = detail::component_offsets(tpl.col_components, rel.row_levels);
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < rel.row_count(); ++i) {
        if (!detail::axis_matches(q.rows, rel.tuples[i], row_offsets)) continue;
        bool col_ok = false;
        for (const auto& block : q.col_blocks)
            if (detail::axis_matches(block, rel.tuples[i], col_offsets)) {
                col_ok = true;
                break;
            }
        if (!col_ok) continue;
        if (q.compare_op == '>' && !(rel.values[i] > q.threshold)) continue;
        if (q.compare_op == '<' && !(rel.values[i] < q.threshold)) continue;
        selected.push_back(i);
    }
    return selected;
}

// Evaluates a query instance against the relational base table. Selection
// templates preserve T_REL row order; grouped templates emit groups sorted
// by key; avg results are rounded to the configured decimals at the end.
inline Answer evaluate(const QueryInstance& q, const RelationalTable& rel,
                       const IndividualTableTemplate& tpl) {
    const std::vector<std::size_t> selected = selected_rows(q, rel, tpl);
    Answer out;
    switch (q.template_id) {
        case 1:
        case 2:
        case 3:
        case 6: {
            for (std::size_t i : selected) out.rows.push_back({rel.format_value(rel.values[i])});
            break;
        }
        case 4:
        case 5:
        case 7: {
            if (selected.empty()) break;
            std::vector<double> xs;
            for (std::size_t i : selected) xs.push_back(rel.values[i]);
            std::vector<std::string> row;
            for (AggFun f : q.aggs) row.push_back(detail::format_agg_result(f, xs, rel));
            out.rows.push_back(std::move(row));
            break;
        }
        case 8:
        case 9:
        case 10:
        case 11: {
            std::map<std::vector<std::string>, std::vector<double>> groups;
            for (std::size_t i : selected) {
                std::vector<std::string> key;
                for (std::size_t c : q.group_by) key.push_back(rel.tuples[i][c]);
                groups[key].push_back(rel.values[i]);
            }
            for (const auto& [key, xs] : groups) {
                std::vector<std::string> row;
                if (q.report_group_keys) row = key;
                for (AggFun f : q.aggs) row.push_back(detail::format_agg_result(f, xs, rel));
                out.rows.push_back(std::move(row));
            }
            break;
        }
        case 12:
        case 13: {
            std::vector<double> xs;
            for (std::size_t i : selected) xs.push_back(rel.values[i]);
            std::sort(xs.begin(), xs.end());
            if (q.order == SortDir::desc) std::reverse(xs.begin(), xs.end());
            if (q.limit_k && static_cast<std::size_t>(*q.limit_k) < xs.size())
                xs.resize(static_cast<std::size_t>(*q.limit_k));
            for (double v : xs) out.rows.push_back({rel.format_value(v)});
            break;
        }
        case 14: {
            for (std::size_t i : selected) {
                std::vector<std::string> row(rel.tuples[i].begin(),
                                             rel.tuples[i].begin() + rel.row_levels);
                out.rows.push_back(std::move(row));
            }
            break;
        }
        case 15: {
            Answer inner_rows = evaluate(*q.inner, rel, tpl);
            std::set<std::vector<std::string>> keep(inner_rows.rows.begin(), inner_rows.rows.end());
            for (std::size_t i : selected) {
                std::vector<std::string> attrs(rel.tuples[i].begin(),
                                               rel.tuples[i].begin() + rel.row_levels);
                if (!keep.count(attrs)) continue;
                attrs.push_back(rel.format_value(rel.values[i]));
                out.rows.push_back(std::move(attrs));
            }
            break;
        }
        default: throw ConfigError("unknown template id " + std::to_string(q.template_id));
    }
    return out;
}

// ---------------------------------------------------------------------------
// SQL rendering
// ---------------------------------------------------------------------------

namespace detail {

inline std::string sql_quote(const std::string& v) {
    std::string out = "'";
    for (char c : v) {
        out += c;
        if (c == '\'') out += '\'';
    }
    out += "'";
    return out;
}

inline std::string sql_ident(const std::string& name) { return placeholder_key(name); }

inline std::string sql_agg(AggFun f) {
    switch (f) {
        case AggFun::sum: return "SUM";
        case AggFun::avg: return "AVG";
        case AggFun::min: return "MIN";
        case AggFun::max: return "MAX";
        case AggFun::count: return "COUNT";
    }
    return "SUM";
}

// One conjunctive block: fragments per component joined with AND.
inline std::string sql_block(const AxisCondition& cond, const std::vector<AxisComponent>& comps,
                             const DomainVocabulary& vocab) {
    std::vector<std::string> frags;
    for (std::size_t ci = 0; ci < cond.comps.size(); ++ci) {
        const auto& cc = cond.comps[ci];
        if (!cc.constrained()) continue;
        const AttributeSpec& attr = vocab.require(comps[ci].code);
        const std::size_t level = cc.level();
        if (level == 1) {
            std::string name = sql_ident(attr.names[0]);
            if (cc.paths.size() == 1) {
                frags.push_back(name + " = " + sql_quote(cc.paths[0][0]));
            } else {
                std::string list;
                for (std::size_t i = 0; i < cc.paths.size(); ++i) {
                    if (i) list += ", ";
                    list += sql_quote(cc.paths[i][0]);
                }
                frags.push_back(name + " IN (" + list + ")");
            }
        } else {
            std::vector<std::string> parts;
            for (const auto& path : cc.paths) {
                std::string part;
                for (std::size_t i = 0; i < level; ++i) {
                    if (i) part += " AND ";
                    part += sql_ident(attr.names[i]) + " = " + sql_quote(path[i]);
                }
                parts.push_back(part);
            }
            if (parts.size() == 1)
                frags.push_back(parts[0]);
            else {
                std::string j = "(";
                for (std::size_t i = 0; i < parts.size(); ++i) {
                    if (i) j += " OR ";
                    j += "(" + parts[i] + ")";
                }
                frags.push_back(j + ")");
            }
        }
    }
    std::string out;
    for (std::size_t i = 0; i < frags.size(); ++i) {
        if (i) out += " AND ";
        out += frags[i];
    }
    return out;
}

inline std::string sql_where(const QueryInstance& q, const IndividualTableTemplate& tpl,
                             const DomainVocabulary& vocab, const RelationalTable& rel) {
    std::vector<std::string> parts;
    std::vector<std::string> blocks;
    for (const auto& b : q.col_blocks) {
        std::string s = sql_block(b, tpl.col_components, vocab);
        if (!s.empty()) blocks.push_back("(" + s + ")");
    }
    if (!blocks.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i) joined += " OR ";
            joined += blocks[i];
        }
        parts.push_back("(" + joined + ")");
    }
    // row conditions are a one-block disjunction: same ((...)) shape as columns
    if (q.rows.constrained())
        parts.push_back("((" + sql_block(q.rows, tpl.row_components, vocab) + "))");
    if (q.compare_op)
        parts.push_back(std::string("Value ") + q.compare_op + " " + format_number(q.threshold));
    if (q.inner) {
        std::string cols;
        for (std::size_t i = 0; i < rel.row_levels; ++i) {
            if (i) cols += ", ";
            cols += sql_ident(rel.column_names[i]);
        }
        // row-value IN over the embedded template-14 result
        parts.push_back("(" + cols + ") IN (%%INNER%%)");
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " AND ";
        out += parts[i];
    }
    return out;
}

}  // namespace detail

inline std::string render_sql(const QueryInstance& q, const RelationalTable& rel,
                              const IndividualTableTemplate& tpl, const DomainVocabulary& vocab) {
    std::string select;
    auto agg_list = [&](std::size_t from = 0) {
        std::string s;
        for (std::size_t i = from; i < q.aggs.size(); ++i) {
            if (!s.empty()) s += ", ";
            s += detail::sql_agg(q.aggs[i]) + "(Value)";
        }
        return s;
    };
    auto names_of = [&](const std::vector<std::size_t>& cols) {
        std::string s;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) s += ", ";
            s += detail::sql_ident(rel.column_names[cols[i]]);
        }
        return s;
    };
    auto row_attr_names = [&]() {
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < rel.row_levels; ++i) cols.push_back(i);
        return names_of(cols);
    };

    switch (q.template_id) {
        case 1: case 2: case 3: case 6: case 12: case 13: select = "Value"; break;
        case 4: case 5: case 7: select = agg_list(); break;
        case 8: case 10: case 11: select = names_of(q.group_by) + ", " + agg_list(); break;
        case 9: select = agg_list(); break;
        case 14: select = row_attr_names(); break;
        case 15: select = row_attr_names() + ", Value"; break;
    }

    std::string sql = "SELECT " + select + " FROM DBdata";
    std::string where = detail::sql_where(q, tpl, vocab, rel);
    if (!where.empty()) sql += " WHERE " + where;
    if (!q.group_by.empty())
        sql += " GROUP BY " + names_of(q.group_by) + " ORDER BY " + names_of(q.group_by);
    if (q.order != SortDir::none) {
        sql += " ORDER BY Value ";
        sql += q.order == SortDir::asc ? "ASC" : "DESC";
        if (q.limit_k) sql += " LIMIT " + std::to_string(*q.limit_k);
    }
    if (q.inner) {
        std::string inner_sql = render_sql(*q.inner, rel, tpl, vocab);
        if (!inner_sql.empty() && inner_sql.back() == ';') inner_sql.pop_back();
        auto pos = sql.find("%%INNER%%");
        if (pos != std::string::npos) sql.replace(pos, 9, inner_sql);
    }
    return sql + ";";
}

// ---------------------------------------------------------------------------
// Instantiation: draw a concrete query from values present in the table
// ---------------------------------------------------------------------------

namespace detail {

inline void canonicalize(std::vector<std::vector<std::string>>& paths) {
    std::sort(paths.begin(), paths.end());
    paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
}

inline ComponentCondition one_leaf_path(const SampledComponent& sc, Rng& rng) {
    auto leaves = sc.leaf_paths();
    return ComponentCondition{{leaves[rng.index(leaves.size())]}};
}

inline ComponentCondition subset_at_level(const SampledComponent& sc, std::size_t level, Rng& rng,
                                          bool prefer_multi) {
    auto paths = sc.paths_at_level(level);
    std::size_t lo = prefer_multi && paths.size() >= 2 ? 2 : 1;
    std::size_t k = static_cast<std::size_t>(rng.uniform(lo, paths.size()));
    auto idx = rng.pick_indices(paths.size(), k);
    ComponentCondition out;
    for (std::size_t i : idx) out.paths.push_back(paths[i]);
    canonicalize(out.paths);
    return out;
}

inline AxisCondition sample_eq(const SampledAxis& axis, Rng& rng) {
    AxisCondition out;
    for (const auto& sc : axis.components) out.comps.push_back(one_leaf_path(sc, rng));
    return out;
}

// IN-style sampling: each component is either dropped (1/3) or constrained to
// a subset at a random level of its hierarchy; at least one stays constrained.
inline AxisCondition sample_in(const SampledAxis& axis, Rng& rng) {
    AxisCondition out;
    out.comps.resize(axis.components.size());
    bool any = false;
    for (std::size_t ci = 0; ci < axis.components.size(); ++ci) {
        if (rng.uniform(0, 2) == 0) continue;
        const auto& sc = axis.components[ci];
        std::size_t level = sc.depth() > 1 ? rng.uniform(1, sc.depth()) : 1;
        out.comps[ci] = subset_at_level(sc, level, rng, true);
        any = true;
    }
    if (!any) {
        const auto& sc = axis.components[0];
        std::size_t level = sc.depth() > 1 ? rng.uniform(1, sc.depth()) : 1;
        out.comps[0] = subset_at_level(sc, level, rng, true);
    }
    return out;
}

// Column selections may be non-rectangular: one conjunctive block per chosen
// value of the innermost independent attribute, each with its own selection
// of the outer attributes.
inline std::vector<AxisCondition> sample_col_blocks(const SampledAxis& axis, Rng& rng) {
    const auto& comps = axis.components;
    const bool can_split = comps.size() >= 2 && !comps.back().hierarchical &&
                           comps.back().values.size() >= 2;
    if (!can_split || !rng.coin()) return {sample_in(axis, rng)};

    std::vector<std::string> inner_values;
    for (const auto& n : comps.back().values) inner_values.push_back(n.value);
    std::size_t k = static_cast<std::size_t>(rng.uniform(2, inner_values.size()));
    auto idx = rng.pick_indices(inner_values.size(), k);
    std::vector<std::string> chosen;
    for (std::size_t i : idx) chosen.push_back(inner_values[i]);
    std::sort(chosen.begin(), chosen.end());

    std::vector<AxisCondition> blocks;
    for (const auto& v : chosen) {
        AxisCondition b;
        b.comps.resize(comps.size());
        for (std::size_t ci = 0; ci + 1 < comps.size(); ++ci) {
            const auto& sc = comps[ci];
            std::size_t level = sc.depth() > 1 ? rng.uniform(1, sc.depth()) : 1;
            b.comps[ci] = subset_at_level(sc, level, rng, false);
        }
        b.comps.back().paths = {{v}};
        blocks.push_back(std::move(b));
    }
    // identical outer selections collapse into one rectangular block
    bool uniform_outer = true;
    for (std::size_t bi = 1; bi < blocks.size() && uniform_outer; ++bi)
        for (std::size_t ci = 0; ci + 1 < comps.size(); ++ci)
            if (blocks[bi].comps[ci].paths != blocks[0].comps[ci].paths) {
                uniform_outer = false;
                break;
            }
    if (uniform_outer) {
        AxisCondition fused = blocks[0];
        fused.comps.back().paths.clear();
        for (const auto& v : chosen) fused.comps.back().paths.push_back({v});
        return {std::move(fused)};
    }
    return blocks;
}

inline AggFun random_agg(Rng& rng) {
    static const AggFun funs[] = {AggFun::sum, AggFun::avg, AggFun::min, AggFun::max};
    return funs[rng.index(4)];
}

inline std::pair<AggFun, AggFun> two_distinct_aggs(Rng& rng) {
    AggFun a = random_agg(rng);
    AggFun b = random_agg(rng);
    while (b == a) b = random_agg(rng);
    return {a, b};
}

inline double value_mean(const RelationalTable& rel) {
    double s = 0;
    for (double v : rel.values) s += v;
    return s / static_cast<double>(rel.values.size());
}

}  // namespace detail

// Builds a template-5 instance from an aggregate cell actually present in
// the pivoted HCT: the scope of the chosen cell becomes the condition set.
namespace detail {

struct AggCellChoice {
    bool agg_on_cols = true;
    std::size_t agg_leaf = 0;
    std::size_t data_leaf = 0;
};

inline std::optional<QueryInstance> instantiate_template5(const IndividualTableTemplate& tpl,
                                                          const HctTable& hct, Rng& rng) {
    std::vector<AggCellChoice> candidates;
    for (std::size_t j = 0; j < hct.col_axis.leaves.size(); ++j)
        if (hct.col_axis.leaves[j].is_aggregate)
            for (std::size_t i : hct.row_axis.data_leaves()) candidates.push_back({true, j, i});
    for (std::size_t i = 0; i < hct.row_axis.leaves.size(); ++i)
        if (hct.row_axis.leaves[i].is_aggregate)
            for (std::size_t j : hct.col_axis.data_leaves()) candidates.push_back({false, i, j});
    if (candidates.empty()) return std::nullopt;
    const AggCellChoice pick = candidates[rng.index(candidates.size())];

    QueryInstance q;
    q.template_id = 5;
    q.aggs = {tpl.agg_fun};
    q.rows.comps.resize(tpl.row_components.size());
    AxisCondition cols;
    cols.comps.resize(tpl.col_components.size());

    auto place = [&](const std::string& code, ComponentCondition cond) {
        for (std::size_t ci = 0; ci < tpl.row_components.size(); ++ci)
            if (tpl.row_components[ci].code == code) {
                q.rows.comps[ci] = std::move(cond);
                return;
            }
        for (std::size_t ci = 0; ci < tpl.col_components.size(); ++ci)
            if (tpl.col_components[ci].code == code) {
                cols.comps[ci] = std::move(cond);
                return;
            }
    };

    // constrain components along a (possibly partial) header path
    auto constrain_prefix = [&](const AxisLayout& axis, const std::vector<std::string>& path) {
        std::size_t offset = 0;
        for (const auto& sc : axis.components) {
            if (offset >= path.size()) break;
            std::size_t take = std::min(sc.depth(), path.size() - offset);
            ComponentCondition cond;
            cond.paths = {{path.begin() + static_cast<long>(offset),
                           path.begin() + static_cast<long>(offset + take)}};
            place(sc.code, std::move(cond));
            offset += sc.depth();
        }
    };

    const AxisLayout& agg_axis = pick.agg_on_cols ? hct.col_axis : hct.row_axis;
    const AxisLayout& data_axis = pick.agg_on_cols ? hct.row_axis : hct.col_axis;
    const LeafInfo& agg_leaf = agg_axis.leaves[pick.agg_leaf];
    const LeafInfo& data_leaf = data_axis.leaves[pick.data_leaf];

    constrain_prefix(data_axis, data_leaf.path);
    if (agg_leaf.scope == AggScope::local) constrain_prefix(agg_axis, agg_leaf.path);

    // components untouched by the scope may still be mentioned with all
    // their values, or stay silent
    std::size_t covered = agg_leaf.scope == AggScope::local ? agg_leaf.path.size() : 0;
    std::size_t offset = 0;
    for (const auto& sc : agg_axis.components) {
        if (offset >= covered && rng.coin()) {
            ComponentCondition cond;
            cond.paths = sc.leaf_paths();
            canonicalize(cond.paths);
            place(sc.code, std::move(cond));
        }
        offset += sc.depth();
    }

    q.col_blocks.push_back(std::move(cols));
    return q;
}

}  // namespace detail

// Draws a query instance for the given template against a generated table.
// Returns nullopt for the template-5 "not applicable" signal (no aggregate in
// the table). Template 5 needs the pivoted HCT to locate a displayed cell.
inline std::optional<QueryInstance> instantiate(int template_id, const RelationalTable& rel,
                                                const IndividualTableTemplate& tpl,
                                                const DomainVocabulary& vocab, Rng& rng,
                                                const HctTable* hct = nullptr) {
    const SampledAxis row_axis = derive_axis(rel, tpl, vocab, true);
    const SampledAxis col_axis = derive_axis(rel, tpl, vocab, false);

    auto col_level_names = [&]() {
        std::vector<std::string> out;
        for (std::size_t i = rel.row_levels; i + 1 < rel.column_names.size(); ++i)
            out.push_back(rel.column_names[i]);
        return out;
    };
    auto col_level_indices = [&]() {
        std::vector<std::size_t> out;
        for (std::size_t i = rel.row_levels; i + 1 < rel.column_names.size(); ++i) out.push_back(i);
        return out;
    };
    auto row_attr_names = [&]() {
        return std::vector<std::string>(rel.column_names.begin(),
                                        rel.column_names.begin() + rel.row_levels);
    };

    QueryInstance q;
    q.template_id = template_id;
    q.rows.comps.resize(tpl.row_components.size());

    switch (template_id) {
        case 1:
            q.rows = detail::sample_eq(row_axis, rng);
            q.col_blocks = {detail::sample_eq(col_axis, rng)};
            break;
        case 2:
            q.rows = detail::sample_in(row_axis, rng);
            q.col_blocks = {detail::sample_eq(col_axis, rng)};
            break;
        case 3:
            q.rows = detail::sample_eq(row_axis, rng);
            q.col_blocks = detail::sample_col_blocks(col_axis, rng);
            break;
        case 4: {
            q.rows = detail::sample_eq(row_axis, rng);
            q.col_blocks = detail::sample_col_blocks(col_axis, rng);
            auto [a, b] = detail::two_distinct_aggs(rng);
            q.aggs = {a, b};
            break;
        }
        case 5: {
            if (!tpl.has_aggregates() || !hct) return std::nullopt;
            auto q5 = detail::instantiate_template5(tpl, *hct, rng);
            if (!q5) return std::nullopt;
            return q5;
        }
        case 6:
            q.rows = detail::sample_in(row_axis, rng);
            q.col_blocks = detail::sample_col_blocks(col_axis, rng);
            break;
        case 7: {
            q.rows = detail::sample_in(row_axis, rng);
            q.col_blocks = {detail::sample_eq(col_axis, rng)};
            auto [a, b] = detail::two_distinct_aggs(rng);
            q.aggs = {a, b};
            break;
        }
        case 8: {
            q.rows = detail::sample_in(row_axis, rng);
            q.col_blocks = detail::sample_col_blocks(col_axis, rng);
            auto [a, b] = detail::two_distinct_aggs(rng);
            q.aggs = {a, b};
            q.group_by = col_level_indices();
            q.group_names = col_level_names();
            q.report_names = q.group_names;
            q.report_group_keys = true;
            break;
        }
        case 9:
            q.rows = detail::sample_in(row_axis, rng);
            q.col_blocks = {detail::sample_eq(col_axis, rng)};
            q.aggs = {AggFun::min};
            q.group_by = {0};
            q.group_names = {rel.column_names[0]};
            break;
        case 10:
            q.rows = detail::sample_in(row_axis, rng);
            q.col_blocks = {detail::sample_eq(col_axis, rng)};
            q.aggs = {detail::random_agg(rng)};
            q.group_by = {0};
            q.group_names = {rel.column_names[0]};
            q.report_names = q.group_names;
            q.report_group_keys = true;
            break;
        case 11: {
            q.rows = detail::sample_in(row_axis, rng);
            q.col_blocks = detail::sample_col_blocks(col_axis, rng);
            q.aggs = {detail::random_agg(rng)};
            q.group_by = {0};
            for (std::size_t i : col_level_indices()) q.group_by.push_back(i);
            q.group_names = {rel.column_names[0]};
            for (const auto& n : col_level_names()) q.group_names.push_back(n);
            q.report_names = q.group_names;
            q.report_group_keys = true;
            break;
        }
        case 12:
        case 13: {
            AxisCondition rows;
            rows.comps.resize(tpl.row_components.size());
            rows.comps[0] = detail::subset_at_level(row_axis.components[0], 1, rng, true);
            q.rows = std::move(rows);
            q.col_blocks = {detail::sample_eq(col_axis, rng)};
            q.order = rng.coin() ? SortDir::asc : SortDir::desc;
            if (template_id == 12) q.limit_k = static_cast<int>(rng.uniform(2, 5));
            break;
        }
        case 14:
            q.col_blocks = {detail::sample_eq(col_axis, rng)};
            q.compare_op = rng.coin() ? '>' : '<';
            // one decimal past the value precision, so ties are impossible
            q.threshold =
                round_to(detail::value_mean(rel), (rel.integer_mode ? 0 : rel.decimals) + 1);
            q.select_row_attrs = true;
            q.report_names = row_attr_names();
            break;
        case 15: {
            auto inner = instantiate(14, rel, tpl, vocab, rng, hct);
            q.inner = std::make_shared<QueryInstance>(std::move(*inner));
            AxisCondition outer = q.inner->col_blocks[0];
            // change one attribute of the inner column tuple
            std::vector<std::size_t> alts;
            for (std::size_t ci = 0; ci < col_axis.components.size(); ++ci)
                if (col_axis.components[ci].leaf_paths().size() >= 2) alts.push_back(ci);
            if (!alts.empty()) {
                std::size_t ci = alts[rng.index(alts.size())];
                auto leaves = col_axis.components[ci].leaf_paths();
                std::vector<std::string> current = outer.comps[ci].paths[0];
                std::vector<std::string> next = current;
                while (next == current) next = leaves[rng.index(leaves.size())];
                outer.comps[ci].paths = {next};
            }
            q.col_blocks = {std::move(outer)};
            q.select_row_attrs = true;
            q.select_value_too = true;
            q.report_names = row_attr_names();
            break;
        }
        default: throw ConfigError("template id must be 1..15");
    }
    if (q.col_blocks.empty()) q.col_blocks.push_back(AxisCondition{});
    if (q.rows.comps.empty()) q.rows.comps.resize(tpl.row_components.size());
    for (auto& b : q.col_blocks) b.comps.resize(tpl.col_components.size());
    return q;
}

}  // namespace hctgen

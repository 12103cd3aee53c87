#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "relational.hpp"

namespace hctgen {

enum class AggScope { none, global, local };

struct HeaderNode {
    std::string label;
    int level = 0;       // 0-based header line this node starts on
    int depth_span = 1;  // header lines covered (aggregate leaves span down)
    bool is_aggregate = false;
    AggScope scope = AggScope::none;
    bool implicit = false;  // indent-mode parent line doubling as aggregate
    std::vector<HeaderNode> children;
    // set after layout:
    std::size_t leaf_begin = 0;
    std::size_t leaf_count = 0;
};

struct LeafInfo {
    std::string label;
    bool is_aggregate = false;
    AggScope scope = AggScope::none;
    bool implicit = false;
    int display_level = 0;
    std::vector<std::string> path;        // data: full value path; local agg: group prefix
    std::vector<std::size_t> covered;     // data-leaf indices an aggregate covers
};

struct AxisLayout {
    std::vector<SampledComponent> components;  // post-shuffle order
    std::vector<HeaderNode> forest;
    std::vector<LeafInfo> leaves;
    int depth = 0;

    std::vector<std::string> level_names() const {
        std::vector<std::string> out;
        for (const auto& c : components)
            out.insert(out.end(), c.level_names.begin(), c.level_names.end());
        return out;
    }

    std::vector<std::size_t> data_leaves() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (!leaves[i].is_aggregate) out.push_back(i);
        return out;
    }
};

struct HctTable {
    std::string title;
    AxisLayout col_axis, row_axis;
    std::vector<std::vector<double>> grid;  // [row leaf][col leaf]
    RowFormat row_format = RowFormat::new_row;
    bool borders = true;
    bool integer_mode = true;
    int decimals = 2;
    AggFun agg_fun = AggFun::sum;
    std::string agg_name;

    std::string format_cell(double v, bool aggregate) const {
        if (aggregate && agg_fun == AggFun::avg)
            return integer_mode ? format_number(round_to(v, decimals))
                                : format_fixed(round_to(v, decimals), decimals);
        return integer_mode ? format_number(v) : format_fixed(v, decimals);
    }
};

namespace detail {

inline HeaderNode build_node(const std::vector<SampledComponent>& comps, std::size_t ci,
                             const ValueNode& vn, int level_in_comp, int level) {
    HeaderNode node;
    node.label = vn.value;
    node.level = level;
    const bool comp_done = level_in_comp + 1 == static_cast<int>(comps[ci].depth());
    if (!comp_done) {
        for (const auto& child : vn.children)
            node.children.push_back(build_node(comps, ci, child, level_in_comp + 1, level + 1));
    } else if (ci + 1 < comps.size()) {
        for (const auto& root : comps[ci + 1].values)
            node.children.push_back(build_node(comps, ci + 1, root, 0, level + 1));
    }
    return node;
}

inline void add_local_aggregates(HeaderNode& node, int total_depth, const std::string& agg_name,
                                 bool at_front, bool implicit_front) {
    if (node.children.empty()) return;
    for (auto& c : node.children) add_local_aggregates(c, total_depth, agg_name, at_front, implicit_front);
    HeaderNode agg;
    agg.is_aggregate = true;
    agg.scope = AggScope::local;
    agg.implicit = at_front && implicit_front;
    // implicit lines sit at the parent's own indent; explicit ones one level in
    agg.level = node.level + (agg.implicit ? 0 : 1);
    agg.depth_span = total_depth - agg.level;
    agg.label = agg.implicit ? node.label : agg_name;
    if (at_front)
        node.children.insert(node.children.begin(), std::move(agg));
    else
        node.children.push_back(std::move(agg));
}

inline void layout_leaves(std::vector<HeaderNode>& forest, std::vector<LeafInfo>& leaves,
                          std::vector<std::string>& path) {
    for (auto& node : forest) {
        if (!node.is_aggregate) path.push_back(node.label);
        node.leaf_begin = leaves.size();
        if (node.children.empty()) {
            LeafInfo leaf;
            leaf.label = node.label;
            leaf.is_aggregate = node.is_aggregate;
            leaf.scope = node.scope;
            leaf.implicit = node.implicit;
            leaf.display_level = node.level;
            if (node.is_aggregate) {
                if (node.scope == AggScope::local) leaf.path = path;  // group prefix
            } else {
                leaf.path = path;
            }
            leaves.push_back(std::move(leaf));
        } else {
            layout_leaves(node.children, leaves, path);
        }
        node.leaf_count = leaves.size() - node.leaf_begin;
        if (!node.is_aggregate) path.pop_back();
    }
}

inline void resolve_agg_coverage(std::vector<LeafInfo>& leaves) {
    for (auto& leaf : leaves) {
        if (!leaf.is_aggregate) continue;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (leaves[i].is_aggregate) continue;
            if (leaf.scope == AggScope::global) {
                leaf.covered.push_back(i);
            } else if (leaves[i].path.size() >= leaf.path.size() &&
                       std::equal(leaf.path.begin(), leaf.path.end(), leaves[i].path.begin())) {
                leaf.covered.push_back(i);
            }
        }
    }
}

}  // namespace detail

// Builds header structure for one axis: nested cross product of the
// components' sampled values, with aggregate lines inserted per position.
inline AxisLayout build_axis_layout(std::vector<SampledComponent> comps, bool with_agg,
                                    bool agg_first, const std::string& agg_name,
                                    bool implicit_locals) {
    AxisLayout layout;
    layout.components = std::move(comps);
    for (const auto& c : layout.components) layout.depth += static_cast<int>(c.depth());
    for (const auto& root : layout.components.front().values)
        layout.forest.push_back(detail::build_node(layout.components, 0, root, 0, 0));

    if (with_agg) {
        for (auto& node : layout.forest)
            detail::add_local_aggregates(node, layout.depth, agg_name, agg_first, implicit_locals);
        HeaderNode global;
        global.label = agg_name;
        global.is_aggregate = true;
        global.scope = AggScope::global;
        global.level = 0;
        global.depth_span = layout.depth;
        if (agg_first)
            layout.forest.insert(layout.forest.begin(), std::move(global));
        else
            layout.forest.push_back(std::move(global));
    }

    std::vector<std::string> path;
    detail::layout_leaves(layout.forest, layout.leaves, path);
    detail::resolve_agg_coverage(layout.leaves);
    return layout;
}

namespace detail {

inline double apply_agg(AggFun fun, const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    switch (fun) {
        case AggFun::sum: {
            double s = 0;
            for (double x : xs) s += x;
            return s;
        }
        case AggFun::avg: {
            double s = 0;
            for (double x : xs) s += x;
            return s / static_cast<double>(xs.size());
        }
        case AggFun::min: return *std::min_element(xs.begin(), xs.end());
        case AggFun::max: return *std::max_element(xs.begin(), xs.end());
        case AggFun::count: return static_cast<double>(xs.size());
    }
    return 0.0;
}

// Enumerates every (column order, row order) assignment of the components
// that keeps the declared depths; hierarchies stay whole by construction.
inline std::pair<std::vector<SampledComponent>, std::vector<SampledComponent>> shuffle_axes(
    const SampledAxis& rows, const SampledAxis& cols, ShuffleMode mode, int col_depth, Rng& rng) {
    std::vector<SampledComponent> r = rows.components;
    std::vector<SampledComponent> c = cols.components;
    switch (mode) {
        case ShuffleMode::none: break;
        case ShuffleMode::rows: rng.shuffle(r); break;
        case ShuffleMode::cols: rng.shuffle(c); break;
        case ShuffleMode::rowscols:
            rng.shuffle(r);
            rng.shuffle(c);
            break;
        case ShuffleMode::all: {
            std::vector<SampledComponent> pool = c;
            pool.insert(pool.end(), r.begin(), r.end());
            std::vector<std::size_t> idx(pool.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end());
            std::vector<std::pair<std::vector<std::size_t>, std::size_t>> candidates;
            do {
                int depth = 0;
                for (std::size_t k = 0; k < idx.size(); ++k) {
                    depth += static_cast<int>(pool[idx[k]].depth());
                    if (depth == col_depth && k + 1 < idx.size()) {
                        candidates.emplace_back(idx, k + 1);
                        break;
                    }
                    if (depth >= col_depth) break;
                }
            } while (std::next_permutation(idx.begin(), idx.end()));
            const auto& [perm, split] = candidates[rng.index(candidates.size())];
            c.clear();
            r.clear();
            for (std::size_t k = 0; k < perm.size(); ++k)
                (k < split ? c : r).push_back(pool[perm[k]]);
            break;
        }
    }
    return {std::move(r), std::move(c)};
}

}  // namespace detail

inline HctTable pivot(const RelationalTable& rel, const IndividualTableTemplate& tpl,
                      const DomainVocabulary& vocab, Rng& rng) {
    SampledAxis row_axis = derive_axis(rel, tpl, vocab, true);
    SampledAxis col_axis = derive_axis(rel, tpl, vocab, false);
    auto [row_comps, col_comps] =
        detail::shuffle_axes(row_axis, col_axis, tpl.shuffle, tpl.col_depth, rng);

    HctTable hct;
    hct.title = tpl.value_name;
    hct.row_format = tpl.row_format;
    hct.integer_mode = rel.integer_mode;
    hct.decimals = rel.decimals;
    hct.agg_fun = tpl.agg_fun;
    hct.agg_name = tpl.agg_name;

    hct.col_axis = build_axis_layout(std::move(col_comps), tpl.agg_col != AggColPos::none,
                                     tpl.agg_col == AggColPos::left, tpl.agg_name, false);
    const bool implicit_rows = tpl.row_format == RowFormat::indent && tpl.agg_row == AggRowPos::top;
    hct.row_axis = build_axis_layout(std::move(row_comps), tpl.agg_row != AggRowPos::none,
                                     tpl.agg_row == AggRowPos::top, tpl.agg_name, implicit_rows);

    // Index T_REL by its nominal tuple.
    std::unordered_map<std::string, double> index;
    index.reserve(rel.row_count());
    for (std::size_t i = 0; i < rel.row_count(); ++i) {
        std::string key;
        for (const auto& v : rel.tuples[i]) {
            key += v;
            key += '\x1f';
        }
        index.emplace(std::move(key), rel.values[i]);
    }
    const auto row_names = hct.row_axis.level_names();
    const auto col_names = hct.col_axis.level_names();
    auto lookup = [&](const LeafInfo& r, const LeafInfo& c) {
        std::unordered_map<std::string, std::string> assign;
        for (std::size_t i = 0; i < row_names.size(); ++i) assign[row_names[i]] = r.path[i];
        for (std::size_t i = 0; i < col_names.size(); ++i) assign[col_names[i]] = c.path[i];
        std::string key;
        for (std::size_t i = 0; i + 1 < rel.column_names.size(); ++i) {
            key += assign.at(rel.column_names[i]);
            key += '\x1f';
        }
        return index.at(key);
    };

    const auto& rls = hct.row_axis.leaves;
    const auto& cls = hct.col_axis.leaves;
    hct.grid.assign(rls.size(), std::vector<double>(cls.size(), 0.0));
    // data cells first, aggregates from them
    for (std::size_t i = 0; i < rls.size(); ++i)
        for (std::size_t j = 0; j < cls.size(); ++j)
            if (!rls[i].is_aggregate && !cls[j].is_aggregate) hct.grid[i][j] = lookup(rls[i], cls[j]);
    auto agg_round = [&](double v) {
        return tpl.agg_fun == AggFun::avg || !rel.integer_mode ? round_to(v, rel.decimals) : v;
    };
    for (std::size_t i = 0; i < rls.size(); ++i)
        for (std::size_t j = 0; j < cls.size(); ++j) {
            if (!rls[i].is_aggregate && !cls[j].is_aggregate) continue;
            std::vector<double> xs;
            const auto rows_cov = rls[i].is_aggregate ? rls[i].covered : std::vector<std::size_t>{i};
            const auto cols_cov = cls[j].is_aggregate ? cls[j].covered : std::vector<std::size_t>{j};
            for (std::size_t r : rows_cov)
                for (std::size_t cc : cols_cov) xs.push_back(hct.grid[r][cc]);
            hct.grid[i][j] = agg_round(detail::apply_agg(tpl.agg_fun, xs));
        }

    hct.borders = rng.coin();
    return hct;
}

// Test oracle for pivot: strips aggregate lines and reconstructs one row per
// (row leaf, column leaf) pair.
inline RelationalTable unpivot(const HctTable& hct) {
    RelationalTable rel;
    auto row_names = hct.row_axis.level_names();
    auto col_names = hct.col_axis.level_names();
    rel.row_levels = row_names.size();
    rel.col_levels = col_names.size();
    rel.column_names = row_names;
    rel.column_names.insert(rel.column_names.end(), col_names.begin(), col_names.end());
    rel.column_names.push_back("Value");
    rel.integer_mode = hct.integer_mode;
    rel.decimals = hct.decimals;
    for (std::size_t i : hct.row_axis.data_leaves())
        for (std::size_t j : hct.col_axis.data_leaves()) {
            std::vector<std::string> t = hct.row_axis.leaves[i].path;
            const auto& cp = hct.col_axis.leaves[j].path;
            t.insert(t.end(), cp.begin(), cp.end());
            rel.tuples.push_back(std::move(t));
            rel.values.push_back(hct.grid[i][j]);
        }
    return rel;
}

}  // namespace hctgen

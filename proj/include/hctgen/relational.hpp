#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "number_format.hpp"
#include "rng.hpp"
#include "table_template.hpp"

namespace hctgen {

// Flat base table: nominal attribute columns plus one unique-valued numeric
// Value column. Rows enumerate the full cross product of the sampled axis
// values, row-axis combinations outer, column-axis combinations inner.
struct RelationalTable {
    std::vector<std::string> column_names;  // row levels, col levels, "Value"
    std::size_t row_levels = 0;
    std::size_t col_levels = 0;
    std::vector<std::vector<std::string>> tuples;  // nominal part per row
    std::vector<double> values;
    bool integer_mode = true;
    int decimals = 2;

    std::size_t row_count() const { return tuples.size(); }

    std::string format_value(double v) const {
        return integer_mode ? format_number(v) : format_fixed(v, decimals);
    }
};

// Picks a run of n consecutive values (no wraparound); [0] keeps everything;
// lists shorter than the drawn n are returned whole.
inline std::vector<std::string> sample_values(const std::vector<std::string>& list,
                                              SampleInterval interval, Rng& rng) {
    if (interval.all) return list;
    std::size_t n = static_cast<std::size_t>(
        rng.uniform(static_cast<std::uint64_t>(interval.lo), static_cast<std::uint64_t>(interval.hi)));
    if (list.size() < n || n == 0) return n == 0 ? std::vector<std::string>{} : list;
    std::size_t start = static_cast<std::size_t>(rng.uniform(0, list.size() - n));
    return std::vector<std::string>(list.begin() + start, list.begin() + start + n);
}

namespace detail {

inline std::vector<ValueNode> sample_tree(const std::vector<ValueNode>& nodes,
                                          SampleInterval interval, Rng& rng) {
    if (interval.all) return nodes;
    std::vector<std::string> labels;
    labels.reserve(nodes.size());
    for (const auto& n : nodes) labels.push_back(n.value);
    std::vector<std::string> chosen = sample_values(labels, interval, rng);
    std::vector<ValueNode> out;
    for (const auto& label : chosen) {
        for (const auto& n : nodes) {
            if (n.value != label) continue;
            ValueNode copy{n.value, {}};
            if (!n.children.empty()) copy.children = sample_tree(n.children, interval, rng);
            out.push_back(std::move(copy));
            break;
        }
    }
    return out;
}

inline void collect_leaf_paths(const std::vector<ValueNode>& nodes, std::vector<std::string>& path,
                               std::vector<std::vector<std::string>>& out) {
    for (const auto& n : nodes) {
        path.push_back(n.value);
        if (n.children.empty())
            out.push_back(path);
        else
            collect_leaf_paths(n.children, path, out);
        path.pop_back();
    }
}

// Truncates a value tree to the requested depth (keeps the top levels).
inline std::vector<ValueNode> truncate_tree(const std::vector<ValueNode>& nodes, int depth) {
    std::vector<ValueNode> out;
    for (const auto& n : nodes) {
        ValueNode copy{n.value, {}};
        if (depth > 1) copy.children = truncate_tree(n.children, depth - 1);
        out.push_back(std::move(copy));
    }
    return out;
}

}  // namespace detail

// Realized values of one axis component for a concrete table instance.
struct SampledComponent {
    std::string code;
    bool hierarchical = false;
    std::vector<std::string> level_names;  // display names
    std::vector<ValueNode> values;         // tree of depth level_names.size()

    std::size_t depth() const { return level_names.size(); }

    std::vector<std::vector<std::string>> leaf_paths() const {
        std::vector<std::vector<std::string>> out;
        std::vector<std::string> path;
        detail::collect_leaf_paths(values, path, out);
        return out;
    }

    // Distinct paths at the given 1-based level, in tree order.
    std::vector<std::vector<std::string>> paths_at_level(std::size_t level) const {
        std::vector<std::vector<std::string>> out;
        std::vector<std::string> path;
        walk(values, level, path, out);
        return out;
    }

private:
    static void walk(const std::vector<ValueNode>& nodes, std::size_t level,
                     std::vector<std::string>& path, std::vector<std::vector<std::string>>& out) {
        for (const auto& n : nodes) {
            path.push_back(n.value);
            if (path.size() == level)
                out.push_back(path);
            else
                walk(n.children, level, path, out);
            path.pop_back();
        }
    }
};

struct SampledAxis {
    std::vector<SampledComponent> components;

    std::vector<std::string> level_names() const {
        std::vector<std::string> out;
        for (const auto& c : components)
            out.insert(out.end(), c.level_names.begin(), c.level_names.end());
        return out;
    }

    std::size_t level_count() const {
        std::size_t n = 0;
        for (const auto& c : components) n += c.depth();
        return n;
    }

    // Full cross product of per-component leaf paths, first component outermost.
    std::vector<std::vector<std::string>> leaf_tuples() const {
        std::vector<std::vector<std::string>> acc{{}};
        for (const auto& c : components) {
            std::vector<std::vector<std::string>> next;
            for (const auto& prefix : acc)
                for (const auto& path : c.leaf_paths()) {
                    std::vector<std::string> t = prefix;
                    t.insert(t.end(), path.begin(), path.end());
                    next.push_back(std::move(t));
                }
            acc = std::move(next);
        }
        return acc;
    }
};

// Draws pairwise-distinct numbers. Integer ranges yield integers; decimal
// ranges yield reals on the 10^-decimals grid. When the grid cannot host
// `count` distinct values, extra values overflow past max one step at a time.
inline std::vector<double> draw_unique_numbers(const NumericRange& range, std::size_t count,
                                               int decimals, Rng& rng) {
    const int d = range.integer_mode ? 0 : decimals;
    const double scale = std::pow(10.0, d);
    const long long lo = llround(range.min * scale);
    const long long hi = llround(range.max * scale);
    const unsigned long long capacity = static_cast<unsigned long long>(hi - lo) + 1;

    std::vector<long long> units;
    units.reserve(count);
    if (count >= capacity) {
        for (long long u = lo; u <= hi; ++u) units.push_back(u);
        for (std::size_t k = 0; k < count - capacity; ++k)
            units.push_back(hi + 1 + static_cast<long long>(k));
        rng.shuffle(units);
    } else if (capacity <= std::max<unsigned long long>(4096, 4 * count)) {
        std::vector<long long> all;
        all.reserve(capacity);
        for (long long u = lo; u <= hi; ++u) all.push_back(u);
        rng.shuffle(all);
        units.assign(all.begin(), all.begin() + static_cast<long long>(count));
    } else {
        std::set<long long> seen;
        while (units.size() < count) {
            long long u = lo + static_cast<long long>(
                                   rng.uniform(0, static_cast<std::uint64_t>(hi - lo)));
            if (seen.insert(u).second) units.push_back(u);
        }
    }

    std::vector<double> out;
    out.reserve(count);
    for (long long u : units) out.push_back(static_cast<double>(u) / scale);
    return out;
}

namespace detail {

inline SampledComponent sample_component(const AxisComponent& comp, const DomainVocabulary& vocab,
                                         Rng& rng) {
    const AttributeSpec& attr = vocab.require(comp.code);
    SampledComponent s;
    s.code = attr.code;
    s.hierarchical = attr.hierarchical;
    s.level_names.assign(attr.names.begin(), attr.names.begin() + comp.level_count);
    std::vector<ValueNode> tree = truncate_tree(attr.values, comp.level_count);
    s.values = sample_tree(tree, comp.sample, rng);
    return s;
}

}  // namespace detail

struct GeneratedTable {
    RelationalTable rel;
    SampledAxis row_axis, col_axis;
    NumericRange value_range;
};

inline GeneratedTable generate_relational(const IndividualTableTemplate& tpl,
                                          const DomainVocabulary& vocab, Rng& rng,
                                          int decimals = 2) {
    GeneratedTable g;
    for (const auto& c : tpl.row_components)
        g.row_axis.components.push_back(detail::sample_component(c, vocab, rng));
    for (const auto& c : tpl.col_components)
        g.col_axis.components.push_back(detail::sample_component(c, vocab, rng));
    for (const auto& axis : {&g.row_axis, &g.col_axis})
        for (const auto& c : axis->components)
            if (c.leaf_paths().empty()) throw ConfigError("empty axis: no values sampled for " + c.code);

    g.value_range = resolve_numeric_spec(vocab, tpl.values_spec);

    RelationalTable& rel = g.rel;
    rel.integer_mode = g.value_range.integer_mode;
    rel.decimals = decimals;
    auto row_names = g.row_axis.level_names();
    auto col_names = g.col_axis.level_names();
    rel.row_levels = row_names.size();
    rel.col_levels = col_names.size();
    rel.column_names = row_names;
    rel.column_names.insert(rel.column_names.end(), col_names.begin(), col_names.end());
    rel.column_names.push_back("Value");

    const auto row_tuples = g.row_axis.leaf_tuples();
    const auto col_tuples = g.col_axis.leaf_tuples();
    for (const auto& r : row_tuples)
        for (const auto& c : col_tuples) {
            std::vector<std::string> t = r;
            t.insert(t.end(), c.begin(), c.end());
            rel.tuples.push_back(std::move(t));
        }
    rel.values = draw_unique_numbers(g.value_range, rel.tuples.size(), decimals, rng);
    return g;
}

// Reconstructs the sampled axis trees from a relational table (rows are the
// full cross product in nested order, so distinct-in-order scans recover the
// trees exactly).
inline SampledAxis derive_axis(const RelationalTable& rel, const IndividualTableTemplate& tpl,
                               const DomainVocabulary& vocab, bool rows) {
    const auto& comps = rows ? tpl.row_components : tpl.col_components;
    std::size_t offset = rows ? 0 : rel.row_levels;
    SampledAxis axis;
    for (const auto& comp : comps) {
        const AttributeSpec& attr = vocab.require(comp.code);
        SampledComponent s;
        s.code = comp.code;
        s.hierarchical = comp.hierarchical;
        s.level_names.assign(attr.names.begin(), attr.names.begin() + comp.level_count);
        for (const auto& tuple : rel.tuples) {
            std::vector<ValueNode>* level = &s.values;
            for (int d = 0; d < comp.level_count; ++d) {
                const std::string& v = tuple[offset + static_cast<std::size_t>(d)];
                ValueNode* found = nullptr;
                for (auto& n : *level)
                    if (n.value == v) {
                        found = &n;
                        break;
                    }
                if (!found) {
                    level->push_back({v, {}});
                    found = &level->back();
                }
                level = &found->children;
            }
        }
        offset += static_cast<std::size_t>(comp.level_count);
        axis.components.push_back(std::move(s));
    }
    return axis;
}

}  // namespace hctgen

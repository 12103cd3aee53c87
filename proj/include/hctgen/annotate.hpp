#pragma once

#include <string>
#include <vector>

#include "query.hpp"

namespace hctgen {

// The 15 structural table properties the generator can produce, plus the
// derived per-axis "present" markers.
struct TableProperties {
    bool col_nesting = false, col_balanced = false, col_symmetric = false, col_asymmetric = false;
    bool row_nesting = false, row_balanced = false, row_symmetric = false, row_asymmetric = false;
    bool col_agg_global = false, col_agg_local = false, col_agg_explicit = false,
         col_agg_implicit = false;
    bool row_agg_global = false, row_agg_local = false, row_agg_explicit = false,
         row_agg_implicit = false;
    bool standard_relational = false;

    json to_json() const {
        json j;
        j["col_nesting"] = col_nesting;
        j["col_nesting_balanced"] = col_balanced;
        j["col_nesting_symmetric"] = col_symmetric;
        j["col_nesting_asymmetric"] = col_asymmetric;
        j["row_nesting"] = row_nesting;
        j["row_nesting_balanced"] = row_balanced;
        j["row_nesting_symmetric"] = row_symmetric;
        j["row_nesting_asymmetric"] = row_asymmetric;
        j["col_agg_global"] = col_agg_global;
        j["col_agg_local"] = col_agg_local;
        j["col_agg_explicit"] = col_agg_explicit;
        j["col_agg_implicit"] = col_agg_implicit;
        j["row_agg_global"] = row_agg_global;
        j["row_agg_local"] = row_agg_local;
        j["row_agg_explicit"] = row_agg_explicit;
        j["row_agg_implicit"] = row_agg_implicit;
        j["standard_relational_table"] = standard_relational;
        return j;
    }
};

namespace detail {

// Symmetric nesting: the (non-aggregate) child label sequence is identical
// for every parent at the same level.
inline bool axis_symmetric(const AxisLayout& axis) {
    for (int level = 0; level + 1 < axis.depth; ++level) {
        std::vector<std::vector<std::string>> families;
        auto walk = [&](auto&& self, const HeaderNode& node) -> void {
            if (node.is_aggregate) return;
            if (node.level == level && !node.children.empty()) {
                std::vector<std::string> labels;
                for (const auto& c : node.children)
                    if (!c.is_aggregate) labels.push_back(c.label);
                families.push_back(std::move(labels));
                return;
            }
            for (const auto& c : node.children) self(self, c);
        };
        for (const auto& root : axis.forest) walk(walk, root);
        for (std::size_t i = 1; i < families.size(); ++i)
            if (families[i] != families[0]) return false;
    }
    return true;
}

struct AggFlags {
    bool global_ = false, local_ = false, explicit_ = false, implicit_ = false;
};

inline AggFlags axis_agg_flags(const AxisLayout& axis) {
    AggFlags f;
    for (const auto& leaf : axis.leaves) {
        if (!leaf.is_aggregate) continue;
        (leaf.scope == AggScope::global ? f.global_ : f.local_) = true;
        (leaf.implicit ? f.implicit_ : f.explicit_) = true;
    }
    return f;
}

}  // namespace detail

inline TableProperties annotate_table(const HctTable& hct, const IndividualTableTemplate& tpl) {
    TableProperties p;
    p.col_nesting = hct.col_axis.depth >= 2;
    p.row_nesting = hct.row_axis.depth >= 2;
    // the generator only emits balanced nesting
    p.col_balanced = p.col_nesting;
    p.row_balanced = p.row_nesting;
    if (p.col_nesting) {
        p.col_symmetric = detail::axis_symmetric(hct.col_axis);
        p.col_asymmetric = !p.col_symmetric;
    }
    if (p.row_nesting) {
        p.row_symmetric = detail::axis_symmetric(hct.row_axis);
        p.row_asymmetric = !p.row_symmetric;
    }
    detail::AggFlags cf = detail::axis_agg_flags(hct.col_axis);
    detail::AggFlags rf = detail::axis_agg_flags(hct.row_axis);
    p.col_agg_global = cf.global_;
    p.col_agg_local = cf.local_;
    p.col_agg_explicit = cf.explicit_;
    p.col_agg_implicit = cf.implicit_;
    p.row_agg_global = rf.global_;
    p.row_agg_local = rf.local_;
    p.row_agg_explicit = rf.explicit_;
    p.row_agg_implicit = rf.implicit_;
    p.standard_relational = !p.col_nesting && !p.row_nesting && !tpl.has_aggregates();
    return p;
}

struct QuestionProperties {
    bool filter_present = false;
    bool filter_lookup = false;      // equality / IN conditions
    bool filter_expression = false;  // Value-vs-threshold condition
    int filter_condition_count = 0;
    int filter_involved_columns = 0;
    bool retained_single = false;
    bool returned_expression = false;  // computed output (aggregates)
    int output_columns = 0;
    bool agg_present = false;
    std::vector<std::string> agg_functions;
    bool agg_grouping_local = false;  // per-group aggregation
    bool agg_in_table = false;        // template 5
    int agg_count = 0;
    bool rank_present = false;
    bool rank_on_plain = false;
    bool yes_no = false;

    json to_json() const {
        json j;
        j["filter_present"] = filter_present;
        j["filter_lookup"] = filter_lookup;
        j["filter_expression"] = filter_expression;
        j["filter_condition_count"] = filter_condition_count;
        j["filter_involved_columns"] = filter_involved_columns;
        j["retained_single"] = retained_single;
        j["returned_expression"] = returned_expression;
        j["output_columns"] = output_columns;
        j["agg_present"] = agg_present;
        j["agg_functions"] = agg_functions;
        j["agg_grouping_local"] = agg_grouping_local;
        j["agg_in_table"] = agg_in_table;
        j["agg_count"] = agg_count;
        j["rank_present"] = rank_present;
        j["rank_on_plain"] = rank_on_plain;
        j["yes_no"] = yes_no;
        return j;
    }

    // the per-template-id invariant signature (cardinalities excluded)
    std::string signature() const {
        std::string s;
        for (bool b : {filter_present, filter_lookup, filter_expression, returned_expression,
                       agg_present, agg_grouping_local, agg_in_table, rank_present, rank_on_plain,
                       yes_no})
            s += b ? '1' : '0';
        return s;
    }
};

inline QuestionProperties annotate_question(const QueryInstance& q, const RelationalTable& rel,
                                            const IndividualTableTemplate& tpl) {
    QuestionProperties p;
    auto count_axis = [](const AxisCondition& a) {
        int n = 0;
        for (const auto& c : a.comps)
            if (c.constrained()) n += static_cast<int>(c.level());
        return n;
    };
    int conds = count_axis(q.rows);
    int col_conds = 0;
    for (const auto& b : q.col_blocks) col_conds = std::max(col_conds, count_axis(b));
    conds += col_conds;
    p.filter_lookup = conds > 0;
    p.filter_expression = q.compare_op != 0;
    p.filter_involved_columns = conds;
    p.filter_condition_count = conds + (q.compare_op ? 1 : 0);
    p.filter_present = p.filter_lookup || p.filter_expression;
    p.retained_single = selected_rows(q, rel, tpl).size() == 1;

    p.agg_present = !q.aggs.empty();
    for (AggFun f : q.aggs) p.agg_functions.push_back(to_string(f));
    p.agg_count = static_cast<int>(q.aggs.size());
    p.agg_grouping_local = !q.group_by.empty();
    p.agg_in_table = q.template_id == 5;
    p.returned_expression = p.agg_present;

    switch (q.template_id) {
        case 1: case 2: case 3: case 6: case 12: case 13: p.output_columns = 1; break;
        case 4: case 7: p.output_columns = 2; break;
        case 5: case 9: p.output_columns = 1; break;
        case 8: p.output_columns = static_cast<int>(q.group_by.size()) + 2; break;
        case 10: case 11: p.output_columns = static_cast<int>(q.group_by.size()) + 1; break;
        case 14: p.output_columns = static_cast<int>(rel.row_levels); break;
        case 15: p.output_columns = static_cast<int>(rel.row_levels) + 1; break;
    }
    p.rank_present = q.template_id == 12 || q.template_id == 13;
    p.rank_on_plain = p.rank_present;
    return p;
}

}  // namespace hctgen

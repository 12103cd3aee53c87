// Shared test fixture: the food import-export table whose 15 worked
// question/answer pairs are pinned as golden strings, with the recorded
// attribute selections for each query template.
#pragma once

#include <string>
#include <vector>

#include "hctgen/nl_template.hpp"
#include "hctgen/pipeline.hpp"

namespace fixtures {

using namespace hctgen;

inline DomainVocabulary food_vocab() {
    json doc = json::parse(R"({
      "data": [
        {"code": "Food", "names": ["Category", "Item"],
         "values": {"Dairy": ["Milk", "Butter", "Cream"],
                    "Beverage": ["Coffee", "Tea"]}},
        {"code": "ImportExport", "names": ["Import-Export"], "values": ["Import", "Export"]},
        {"code": "Years", "names": ["Year"], "values": ["2017", "2018"]},
        {"code": "Quarters", "names": ["Quarter"], "values": ["Q1", "Q2", "Q3", "Q4"]}
      ],
      "values": {"intPos": [10, 999]}
    })");
    return parse_vocabulary(doc);
}

inline IndividualTableTemplate food_template() {
    IndividualTableTemplate t;
    t.name = "food_fixture";
    t.replica = 1;
    t.shuffle = ShuffleMode::none;
    t.row_format = RowFormat::indent;
    t.agg_col = AggColPos::right;
    t.agg_row = AggRowPos::bottom;
    t.agg_fun = AggFun::avg;
    t.agg_name = "Average";
    t.values_spec = json::array({10, 999});
    t.value_name = "Food import-export in tons";
    t.row_components = {{"Food", true, 2, SampleInterval::everything()}};
    t.col_components = {{"ImportExport", false, 1, SampleInterval::everything()},
                        {"Years", false, 1, SampleInterval::everything()}};
    t.col_depth = 2;
    t.row_depth = 2;
    return t;
}

// The reference instance behind the golden strings.
// Rows: items in vocabulary order; columns: (Import-Export, Year) pairs.
inline RelationalTable food_rel() {
    RelationalTable rel;
    rel.column_names = {"Category", "Item", "Import-Export", "Year", "Value"};
    rel.row_levels = 2;
    rel.col_levels = 2;
    rel.integer_mode = true;
    rel.decimals = 2;
    const std::vector<std::pair<std::string, std::string>> items = {
        {"Dairy", "Milk"}, {"Dairy", "Butter"}, {"Dairy", "Cream"},
        {"Beverage", "Coffee"}, {"Beverage", "Tea"}};
    const std::vector<std::pair<std::string, std::string>> cols = {
        {"Import", "2017"}, {"Import", "2018"}, {"Export", "2017"}, {"Export", "2018"}};
    const double values[5][4] = {
        {799, 879, 57, 586},   // Milk
        {444, 179, 146, 443},  // Butter
        {736, 202, 44, 821},   // Cream
        {266, 768, 980, 121},  // Coffee
        {751, 673, 749, 622},  // Tea
    };
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t c = 0; c < cols.size(); ++c) {
            rel.tuples.push_back({items[i].first, items[i].second, cols[c].first, cols[c].second});
            rel.values.push_back(values[i][c]);
        }
    return rel;
}

inline const char* food_nl_json() {
    return R"({
      "tableName": "Food import-export in tons",
      "rowColCodes": ["Food", "ImportExport", "Years", "Quarters"],
      "valueMeaning": "amount of import-export",
      "simplifyNested": [["Category", "Item"]],
      "template_report": "Please, report the corresponding $REPORTATTR .",
      "template_1": ["What is the amount of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_2": ["What is the amount of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_3": ["What is the amount of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_4": ["What is/are_the_$EXPR_amount/amounts of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_5": ["What is/are_the_$EXPR_amount/amounts of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_6": ["What is the amount of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_7": ["What is/are_the_$EXPR_amount/amounts of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_8": ["What is/are_the_$EXPR_amount/amounts $GROUPBY of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_9": ["What is/are_the_$EXPR_amount/amounts $GROUPBY of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_10": ["What is/are_the_$EXPR_amount/amounts $GROUPBY of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_11": ["What is/are_the_$EXPR_amount/amounts $GROUPBY of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_12": ["What is/are_the_top/bottom_$TOPK_amount/amounts of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_13": ["What are the amounts $ORDERBYDESC_decreasing/increasing_values of_ $Import_Export of__ $Item__ $Category in__ $Quarter==of==$Year ?"],
      "template_14": ["What are the_$OPPATTR for_which_the_amount of_ $Import_Export in__ $Quarter==of==$Year is_$OPANDVAL ?"]
    })";
}

inline NlTemplateSet food_nl(const DomainVocabulary& vocab) {
    return parse_nl_template_set(json::parse(food_nl_json()), vocab);
}

// condition helpers -------------------------------------------------------

using Paths = std::vector<std::vector<std::string>>;

inline ComponentCondition cc(Paths p) { return ComponentCondition{std::move(p)}; }

inline AxisCondition rows_cond(Paths food_paths) {
    AxisCondition a;
    a.comps = {cc(std::move(food_paths))};
    return a;
}

inline AxisCondition cols_cond(Paths ie, Paths year) {
    AxisCondition a;
    a.comps = {cc(std::move(ie)), cc(std::move(year))};
    return a;
}

struct GoldenCase {
    int template_id = 0;
    QueryInstance q;
    std::string question;
    std::string answer;
};

inline Paths all_items() {
    return {{"Beverage", "Coffee"}, {"Beverage", "Tea"}, {"Dairy", "Butter"},
            {"Dairy", "Cream"},     {"Dairy", "Milk"}};
}

inline Paths both_categories() { return {{"Beverage"}, {"Dairy"}}; }

inline std::vector<GoldenCase> golden_cases() {
    std::vector<GoldenCase> out;
    auto add = [&](GoldenCase c) { out.push_back(std::move(c)); };

    {
        GoldenCase c;
        c.template_id = 1;
        c.q.template_id = 1;
        c.q.rows = rows_cond({{"Dairy", "Milk"}});
        c.q.col_blocks = {cols_cond({{"Export"}}, {{"2017"}})};
        c.question = "What is the amount of Export of Milk in 2017?";
        c.answer = "57";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 2;
        c.q.template_id = 2;
        c.q.rows = rows_cond({{"Beverage", "Coffee"}, {"Beverage", "Tea"},
                              {"Dairy", "Butter"}, {"Dairy", "Milk"}});
        c.q.col_blocks = {cols_cond({{"Export"}}, {{"2017"}})};
        c.question = "What is the amount of Export of Butter, Coffee, Milk, or Tea in 2017?";
        c.answer = "57; 146; 980; 749";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 3;
        c.q.template_id = 3;
        c.q.rows = rows_cond({{"Beverage", "Tea"}});
        c.q.col_blocks = {cols_cond({{"Export"}}, {{"2017"}, {"2018"}})};
        c.question = "What is the amount of Export of Tea in 2017 or 2018?";
        c.answer = "749; 622";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 4;
        c.q.template_id = 4;
        c.q.rows = rows_cond({{"Dairy", "Milk"}});
        c.q.col_blocks = {cols_cond({{"Export"}, {"Import"}}, {{"2017"}}),
                          cols_cond({{"Export"}}, {{"2018"}})};
        c.q.aggs = {AggFun::sum, AggFun::min};
        c.question = "What are the total and minimum amounts of Export or Import of Milk in 2017 "
                     "or of Export of Milk in 2018?";
        c.answer = "1442,57";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 5;
        c.q.template_id = 5;
        c.q.rows = rows_cond({{"Beverage", "Coffee"}});
        c.q.col_blocks = {cols_cond({{"Export"}, {"Import"}}, {})};
        c.q.aggs = {AggFun::avg};
        c.question = "What is the average amount of Export or Import of Coffee?";
        c.answer = "533.75";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 6;
        c.q.template_id = 6;
        c.q.rows = rows_cond({{"Beverage", "Tea"}, {"Dairy", "Butter"}, {"Dairy", "Cream"}});
        c.q.col_blocks = {cols_cond({{"Export"}, {"Import"}}, {{"2017"}}),
                          cols_cond({{"Export"}}, {{"2018"}})};
        c.question = "What is the amount of Export or Import of Butter, Cream, or Tea in 2017 or "
                     "of Export of Butter, Cream, or Tea in 2018?";
        c.answer = "444; 146; 443; 736; 44; 821; 751; 749; 622";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 7;
        c.q.template_id = 7;
        c.q.rows = rows_cond(all_items());
        c.q.col_blocks = {cols_cond({{"Import"}}, {{"2017"}})};
        c.q.aggs = {AggFun::sum, AggFun::min};
        c.question = "What are the total and minimum amounts of Import of Butter, Coffee, Cream, "
                     "Milk, or Tea in 2017?";
        c.answer = "2996,266";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 8;
        c.q.template_id = 8;
        c.q.rows = rows_cond(all_items());
        c.q.col_blocks = {cols_cond({{"Export"}, {"Import"}}, {{"2017"}, {"2018"}})};
        c.q.aggs = {AggFun::min, AggFun::max};
        c.q.group_by = {2, 3};
        c.q.group_names = {"Import-Export", "Year"};
        c.q.report_names = {"Import-Export", "Year"};
        c.q.report_group_keys = true;
        c.question = "What are the minimum and maximum amounts for each Import-Export and Year, "
                     "of Export or Import of Butter, Coffee, Cream, Milk, or Tea in 2017 or 2018? "
                     "Please, report the corresponding Import-Export and Year.";
        c.answer = "Export,2017,44,980; Export,2018,121,821; Import,2017,266,799; "
                   "Import,2018,179,879";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 9;
        c.q.template_id = 9;
        c.q.rows = rows_cond(both_categories());
        c.q.col_blocks = {cols_cond({{"Import"}}, {{"2018"}})};
        c.q.aggs = {AggFun::min};
        c.q.group_by = {0};
        c.q.group_names = {"Category"};
        c.question = "What is the minimum amount for each Category, of Import of Beverage or "
                     "Dairy in 2018?";
        c.answer = "673;179";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 10;
        c.q.template_id = 10;
        c.q.rows = rows_cond(both_categories());
        c.q.col_blocks = {cols_cond({{"Import"}}, {{"2018"}})};
        c.q.aggs = {AggFun::min};
        c.q.group_by = {0};
        c.q.group_names = {"Category"};
        c.q.report_names = {"Category"};
        c.q.report_group_keys = true;
        c.question = "What is the minimum amount for each Category, of Import of Beverage or "
                     "Dairy in 2018? Please, report the corresponding Category.";
        c.answer = "Beverage,673; Dairy,179";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 11;
        c.q.template_id = 11;
        c.q.rows = rows_cond(both_categories());
        c.q.col_blocks = {cols_cond({{"Import"}}, {{"2017"}}),
                          cols_cond({{"Export"}, {"Import"}}, {{"2018"}})};
        c.q.aggs = {AggFun::min};
        c.q.group_by = {0, 2, 3};
        c.q.group_names = {"Category", "Import-Export", "Year"};
        c.q.report_names = {"Category", "Import-Export", "Year"};
        c.q.report_group_keys = true;
        c.question = "What is the minimum amount for each Category, Import-Export, and Year, of "
                     "Import of Beverage or Dairy in 2017 or of Export or Import of Beverage or "
                     "Dairy in 2018? Please, report the corresponding Category, Import-Export, "
                     "and Year.";
        c.answer = "Beverage,Export,2018,121; Beverage,Import,2017,266; Beverage,Import,2018,673; "
                   "Dairy,Export,2018,443; Dairy,Import,2017,444; Dairy,Import,2018,179";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 12;
        c.q.template_id = 12;
        c.q.rows = rows_cond(both_categories());
        c.q.col_blocks = {cols_cond({{"Export"}}, {{"2018"}})};
        c.q.order = SortDir::asc;
        c.q.limit_k = 5;
        c.question = "What are the bottom 5 amounts of Export of Beverage or Dairy in 2018?";
        c.answer = "121; 443; 586; 622; 821";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 13;
        c.q.template_id = 13;
        c.q.rows = rows_cond(both_categories());
        c.q.col_blocks = {cols_cond({{"Import"}}, {{"2017"}})};
        c.q.order = SortDir::asc;
        c.question = "What are the amounts ordered by increasing values of Import of Beverage or "
                     "Dairy in 2017?";
        c.answer = "266; 444; 736; 751; 799";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 14;
        c.q.template_id = 14;
        c.q.rows.comps.resize(1);
        c.q.col_blocks = {cols_cond({{"Import"}}, {{"2018"}})};
        c.q.compare_op = '>';
        c.q.threshold = 513.3;
        c.q.select_row_attrs = true;
        c.q.report_names = {"Category", "Item"};
        c.question = "What are the Category and Item for which the amount of Import in 2018 is "
                     "greater than 513.3?";
        c.answer = "Dairy,Milk; Beverage,Coffee; Beverage,Tea";
        add(std::move(c));
    }
    {
        GoldenCase c;
        c.template_id = 15;
        c.q.template_id = 15;
        QueryInstance inner;
        inner.template_id = 14;
        inner.rows.comps.resize(1);
        inner.col_blocks = {cols_cond({{"Import"}}, {{"2018"}})};
        inner.compare_op = '>';
        inner.threshold = 513.3;
        inner.select_row_attrs = true;
        inner.report_names = {"Category", "Item"};
        c.q.inner = std::make_shared<QueryInstance>(std::move(inner));
        c.q.rows.comps.resize(1);
        c.q.col_blocks = {cols_cond({{"Export"}}, {{"2018"}})};
        c.q.select_row_attrs = true;
        c.q.select_value_too = true;
        c.q.report_names = {"Category", "Item"};
        c.question = "What is the amount of Export in 2018 of Category and of Item for which the "
                     "amount of Import in 2018 is greater than 513.3? Please, report the "
                     "corresponding Category, Item, and amount of import-export.";
        c.answer = "Dairy,Milk,586; Beverage,Coffee,121; Beverage,Tea,622";
        add(std::move(c));
    }
    return out;
}

// whitespace-insensitive comparison helpers for golden strings ------------

inline std::string squeeze_spaces(const std::string& s) {
    std::string out;
    bool prev_space = false;
    for (char c : s) {
        bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (space && prev_space) continue;
        out += space ? ' ' : c;
        prev_space = space;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    while (!out.empty() && out.front() == ' ') out.erase(out.begin());
    return out;
}

inline std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

}  // namespace fixtures

#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"
#include "hctgen/relational.hpp"

using namespace hctgen;

namespace {

json small_generic(const char* levels, const char* aggs) {
    json g;
    g["replica"] = 1;
    g["shuffle"] = json::array({"none", "rows"});
    g["col_row_levels"] = json::parse(levels);
    g["col_row_agg_pos"] = json::parse(aggs);
    g["row_format"] = json::array({"indent"});
    g["tables"] = json::array({json::parse(R"({
        "valueName": "Food import-export in tons",
        "values": "intPos",
        "rowCodes": ["Food"],
        "rowSamples": [[0]],
        "colCodes": ["ImportExport", "Years"],
        "colSamples": [[0], [0]],
        "agg_name1": "Average",
        "agg_fun1": "avg"
    })")});
    return g;
}

}  // namespace

TEST_CASE("expansion is the cartesian product of the parameter sets") {
    DomainVocabulary v = fixtures::food_vocab();
    // 2 shuffle x 2 levels x 1 agg pos x 1 row format x 1 table = 4
    auto g = parse_generic_template(small_generic(R"(["2_2", "1_2"])", R"(["right_bottom"])"), v);
    auto expanded = expand_generic(g, v);
    CHECK(expanded.size() == 4);
    std::set<std::string> names;
    for (const auto& t : expanded) names.insert(t.name);
    CHECK(names.size() == expanded.size());
}

TEST_CASE("hierarchies are truncated top-down, never split") {
    DomainVocabulary v = fixtures::food_vocab();
    // row depth 1 with the 2-level Food group: Item may not appear without
    // Category, so the axis holds Category only
    json g = small_generic(R"(["2_1"])", R"(["none_none"])");
    auto expanded = expand_generic(parse_generic_template(g, v), v);
    for (const auto& t : expanded) {
        REQUIRE(t.row_components.size() == 1);
        CHECK(t.row_components[0].code == "Food");
        CHECK(t.row_components[0].level_count == 1);
    }
}

TEST_CASE("combinations that cannot fill the axis are filtered, never padded") {
    DomainVocabulary v = fixtures::food_vocab();
    // col depth 3 but only two single-level column codes are listed
    json g = small_generic(R"(["3_2", "2_2"])", R"(["none_none"])");
    auto expanded = expand_generic(parse_generic_template(g, v), v);
    for (const auto& t : expanded) CHECK(t.col_depth == 2);
    CHECK(expanded.size() == 2);  // the 3_2 combinations dropped for both shuffles
}

TEST_CASE("reference family resolves flags onto the individual template") {
    DomainVocabulary v = fixtures::food_vocab();
    json g = small_generic(R"(["2_2"])", R"(["right_bottom"])");
    auto expanded = expand_generic(parse_generic_template(g, v), v);
    REQUIRE_FALSE(expanded.empty());
    const auto& t = expanded.front();
    CHECK(t.agg_col == AggColPos::right);
    CHECK(t.agg_row == AggRowPos::bottom);
    CHECK(t.row_format == RowFormat::indent);
    CHECK(t.agg_fun == AggFun::avg);
    CHECK(t.agg_name == "Average");
    CHECK(t.col_depth == 2);
    CHECK(t.row_depth == 2);
}

TEST_CASE("individual templates round-trip through their JSON form") {
    DomainVocabulary v = fixtures::food_vocab();
    auto g = parse_generic_template(small_generic(R"(["2_2", "1_2"])", R"(["right_bottom"])"), v);
    for (const auto& t : expand_generic(g, v)) {
        IndividualTableTemplate back = individual_from_json(individual_to_json(t), v);
        CHECK(individual_to_json(back) == individual_to_json(t));
    }
}

TEST_CASE("sample_values picks consecutive runs") {
    std::vector<std::string> years = {"2001", "2002", "2003", "2004", "2005", "2006"};
    Rng rng(7);
    SECTION("runs stay contiguous and inside the list") {
        for (int i = 0; i < 200; ++i) {
            auto out = sample_values(years, SampleInterval::range(1, 5), rng);
            REQUIRE_FALSE(out.empty());
            REQUIRE(out.size() <= 5);
            auto it = std::find(years.begin(), years.end(), out.front());
            REQUIRE(it != years.end());
            for (const auto& v : out) {
                REQUIRE(it != years.end());
                CHECK(v == *it);
                ++it;
            }
        }
    }
    SECTION("short lists are returned whole") {
        std::vector<std::string> two = {"a", "b"};
        auto out = sample_values(two, SampleInterval::range(5, 9), rng);
        CHECK(out == two);
    }
    SECTION("[0] keeps everything") {
        std::vector<std::string> one = {"x"};
        CHECK(sample_values(one, SampleInterval::everything(), rng) == one);
        CHECK(sample_values(years, SampleInterval::everything(), rng) == years);
    }
}

TEST_CASE("draw_unique_numbers covers exact-capacity and overflow cases") {
    Rng rng(11);
    SECTION("capacity equals count: a permutation of the range") {
        auto out = draw_unique_numbers(NumericRange{1, 3, true}, 3, 2, rng);
        std::multiset<double> got(out.begin(), out.end());
        CHECK(got == std::multiset<double>{1, 2, 3});
    }
    SECTION("two-decimal range overflowing past max") {
        auto out = draw_unique_numbers(NumericRange{0.0, 0.01, false}, 4, 2, rng);
        std::set<double> distinct(out.begin(), out.end());
        CHECK(distinct.size() == 4);
        int above = 0;
        for (double v : out)
            if (v > 0.01 + 1e-12) ++above;
        CHECK(above == 2);
    }
    SECTION("forced single value") {
        auto out = draw_unique_numbers(NumericRange{5, 5, true}, 1, 2, rng);
        REQUIRE(out.size() == 1);
        CHECK(out[0] == 5);
    }
    SECTION("large ranges stay distinct") {
        auto out = draw_unique_numbers(NumericRange{0, 1000000000, true}, 500, 2, rng);
        std::set<double> distinct(out.begin(), out.end());
        CHECK(distinct.size() == 500);
    }
    SECTION("reals land exactly on the decimal grid") {
        auto out = draw_unique_numbers(NumericRange{0.0, 5.0, false}, 100, 2, rng);
        for (double v : out) {
            double scaled = v * 100.0;
            CHECK(scaled == std::round(scaled));
        }
    }
}

TEST_CASE("generate_relational emits the full cross product with unique values") {
    DomainVocabulary v = fixtures::food_vocab();
    IndividualTableTemplate tpl = fixtures::food_template();
    Rng rng(21);
    GeneratedTable g = generate_relational(tpl, v, rng, 2);
    const RelationalTable& rel = g.rel;
    CHECK(rel.column_names ==
          std::vector<std::string>{"Category", "Item", "Import-Export", "Year", "Value"});
    CHECK(rel.row_count() == 5 * 2 * 2);
    std::set<double> distinct(rel.values.begin(), rel.values.end());
    CHECK(distinct.size() == rel.row_count());
    std::set<std::vector<std::string>> nominal(rel.tuples.begin(), rel.tuples.end());
    CHECK(nominal.size() == rel.row_count());
}

TEST_CASE("row count is the product of sampled per-attribute counts") {
    DomainVocabulary v = fixtures::food_vocab();
    IndividualTableTemplate tpl = fixtures::food_template();
    tpl.row_components[0].sample = SampleInterval::range(1, 2);
    tpl.col_components[1].sample = SampleInterval::range(1, 2);
    for (int seed = 0; seed < 30; ++seed) {
        Rng rng(static_cast<std::uint64_t>(seed));
        GeneratedTable g = generate_relational(tpl, v, rng, 2);
        SampledAxis rows = derive_axis(g.rel, tpl, v, true);
        SampledAxis cols = derive_axis(g.rel, tpl, v, false);
        std::size_t expect = rows.leaf_tuples().size() * cols.leaf_tuples().size();
        CHECK(g.rel.row_count() == expect);
    }
}

TEST_CASE("single attribute with a single value is the smallest table") {
    auto doc = json::parse(R"({"data": [
        {"code": "A", "names": ["A"], "values": ["x"]},
        {"code": "B", "names": ["B"], "values": ["y"]}]})");
    DomainVocabulary v = parse_vocabulary(doc);
    IndividualTableTemplate tpl;
    tpl.name = "tiny";
    tpl.values_spec = json::array({1, 9});
    tpl.value_name = "tiny";
    tpl.row_components = {{"A", false, 1, SampleInterval::everything()}};
    tpl.col_components = {{"B", false, 1, SampleInterval::everything()}};
    Rng rng(3);
    GeneratedTable g = generate_relational(tpl, v, rng, 2);
    CHECK(g.rel.row_count() == 1);
}

TEST_CASE("expansion and sampling are deterministic") {
    DomainVocabulary v = fixtures::food_vocab();
    auto g = parse_generic_template(small_generic(R"(["2_2"])", R"(["right_bottom"])"), v);
    auto a = expand_generic(g, v);
    auto b = expand_generic(g, v);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(individual_to_json(a[i]) == individual_to_json(b[i]));
    IndividualTableTemplate tpl = fixtures::food_template();
    tpl.row_components[0].sample = SampleInterval::range(1, 2);
    Rng r1(5), r2(5);
    auto t1 = generate_relational(tpl, v, r1, 2);
    auto t2 = generate_relational(tpl, v, r2, 2);
    CHECK(t1.rel.tuples == t2.rel.tuples);
    CHECK(t1.rel.values == t2.rel.values);
}

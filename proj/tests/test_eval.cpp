#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "hctgen/eval.hpp"

using namespace hctgen;

TEST_CASE("normalization splits protocol and ground-truth separators") {
    SECTION("prompt-protocol separator") {
        ValueMultiset m = normalize_answer("Apple || 300");
        CHECK(m.size() == 2);
        CHECK(m.counts.count("apple") == 1);
        CHECK(m.counts.count("300") == 1);
    }
    SECTION("ground-truth separators") {
        ValueMultiset m = normalize_answer("Beverage,673; Dairy,179");
        CHECK(m.size() == 4);
        CHECK(m.counts.count("beverage") == 1);
        CHECK(m.counts.count("673") == 1);
        CHECK(m.counts.count("dairy") == 1);
        CHECK(m.counts.count("179") == 1);
    }
    SECTION("empty and refusal inputs") {
        CHECK(normalize_answer("").empty());
        CHECK(normalize_answer("  No Answer  ").empty());
        CHECK(normalize_answer("no answer").empty());
    }
    SECTION("numbers are rounded to the configured decimals") {
        ValueMultiset a = normalize_answer("533.750");
        ValueMultiset b = normalize_answer("533.75");
        CHECK(a.counts == b.counts);
        CHECK(normalize_answer("1 234").counts.count("1234") == 1);
    }
    SECTION("normalization is idempotent") {
        ValueMultiset once = normalize_answer("Apple || 300.004 || apple");
        for (const auto& [k, c] : once.counts) {
            ValueMultiset again = normalize_answer(k);
            REQUIRE(again.counts.size() == 1);
            CHECK(again.counts.begin()->first == k);
        }
    }
}

TEST_CASE("the worked scoring triple reproduces exactly") {
    ValueMultiset truth = normalize_answer("Apple || 300");
    ValueMultiset m1 = normalize_answer("Apple || 300");
    ValueMultiset m2 = normalize_answer("Apple");
    ValueMultiset m3 = normalize_answer("Apple || 300 || Orange || 10");

    Score s1 = score(m1, truth);
    CHECK(f1_display(s1.f1) == "1.00");
    CHECK(s1.cc == 1);
    Score s2 = score(m2, truth);
    CHECK(f1_display(s2.f1) == "0.66");
    CHECK(s2.cc == 0);
    Score s3 = score(m3, truth);
    CHECK(f1_display(s3.f1) == "0.66");
    CHECK(s3.cc == 1);
}

TEST_CASE("score properties") {
    ValueMultiset truth = normalize_answer("a, b, 3");
    SECTION("empty truth is a contract violation") {
        CHECK_THROWS_AS(score(normalize_answer("a"), ValueMultiset{}), std::invalid_argument);
    }
    SECTION("permutation invariance") {
        Score a = score(normalize_answer("3, a, b"), truth);
        CHECK(a.f1 == 1.0);
        CHECK(a.cc == 1);
    }
    SECTION("adding a correct value never lowers recall") {
        Score partial = score(normalize_answer("a"), truth);
        Score more = score(normalize_answer("a, b"), truth);
        CHECK(more.recall >= partial.recall);
    }
    SECTION("adding an incorrect value never raises precision") {
        Score base = score(normalize_answer("a, b"), truth);
        Score noisy = score(normalize_answer("a, b, junk"), truth);
        CHECK(noisy.precision <= base.precision);
    }
    SECTION("swap symmetry: f1 symmetric, cc not") {
        ValueMultiset p = normalize_answer("a");
        Score ab = score(p, truth);
        Score ba = score(truth, p);
        CHECK(ab.f1 == Catch::Approx(ba.f1));
        CHECK(ab.precision == Catch::Approx(ba.recall));
        CHECK(ab.cc == 0);
        CHECK(ba.cc == 1);
    }
    SECTION("duplicates must be matched as a multiset") {
        ValueMultiset t2 = normalize_answer("5; 5");
        Score once = score(normalize_answer("5"), t2);
        CHECK(once.recall == 0.5);
        Score twice = score(normalize_answer("5, 5"), t2);
        CHECK(twice.recall == 1.0);
    }
}

TEST_CASE("report groups by template, domain and property flags") {
    std::vector<ScoredRecord> records;
    ScoredRecord a;
    a.qa_id = "d1/t/q1";
    a.f1 = 1.0;
    a.cc = 1;
    a.template_id = 1;
    a.domain = "d1";
    a.metadata = nlohmann::ordered_json{{"rank_present", false}};
    ScoredRecord b = a;
    b.qa_id = "d1/t/q7";
    b.f1 = 0.5;
    b.cc = 0;
    b.template_id = 7;
    b.metadata = nlohmann::ordered_json{{"rank_present", true}};
    records = {a, b};
    auto rep = report(records);
    CHECK(rep["scored"] == 2);
    CHECK(rep["overall"]["f1"].get<double>() == Catch::Approx(0.75));
    CHECK(rep["by_template"].size() == 2);
    CHECK(rep["by_template"]["7"]["f1"].get<double>() == Catch::Approx(0.5));
    CHECK(rep["by_property"]["rank_present"]["count"] == 1);

    SECTION("all-correct records score 1.0 in every group") {
        std::vector<ScoredRecord> perfect = {a};
        auto r = report(perfect);
        CHECK(r["overall"]["f1"].get<double>() == 1.0);
        CHECK(r["overall"]["cc"].get<double>() == 1.0);
    }
    SECTION("empty record list") {
        auto r = report({});
        CHECK(r["scored"] == 0);
        CHECK(r["by_template"].empty());
    }
}

TEST_CASE("question similarity is mean pairwise word-level Jaccard") {
    CHECK(question_similarity({"same words here", "same words here"}) == 1.0);
    CHECK(question_similarity({"a b", "b c"}) == Catch::Approx(1.0 / 3.0));
    CHECK(question_similarity({"x y", "p q"}) == 0.0);
    CHECK_THROWS_AS(question_similarity({"only one"}), std::invalid_argument);
    // three questions: mean over the three pairs
    double sim = question_similarity({"a b", "b c", "a b"});
    CHECK(sim == Catch::Approx((1.0 / 3 + 1.0 + 1.0 / 3) / 3));
}

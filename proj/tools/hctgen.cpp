// Command-line front end: dataset generation, prediction scoring, and
// dataset statistics.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "hctgen/pipeline.hpp"

namespace {

int run_generate(const hctgen::RunConfig& cfg) {
    hctgen::Manifest manifest = hctgen::generate_dataset(cfg);
    std::printf("%-16s %8s %8s %8s %8s\n", "domain", "tables", "records", "skipped", "aborted");
    for (const auto& d : manifest.domains)
        std::printf("%-16s %8d %8d %8d %8d\n", d.domain.c_str(), d.tables, d.records, d.skipped,
                    d.aborted);
    int tables = 0, records = 0;
    for (const auto& d : manifest.domains) {
        tables += d.tables;
        records += d.records;
    }
    std::printf("%-16s %8d %8d\n", "total", tables, records);
    std::printf("wrote %s/qa_records.jsonl and %s/manifest.json\n", cfg.output_dir.c_str(),
                cfg.output_dir.c_str());
    return manifest.any_aborted() ? 1 : 0;
}

int run_score(const std::string& dataset, const std::string& predictions, const std::string& out,
              int decimals) {
    hctgen::ScoreRunResult res = hctgen::score_run(dataset, predictions, decimals);

    namespace fs = std::filesystem;
    if (!out.empty()) {
        fs::path report_path(out);
        std::ofstream report_file(report_path);
        report_file << res.report_json.dump(2) << "\n";
        fs::path scored_path = report_path.parent_path() / "scored_records.jsonl";
        std::ofstream scored(scored_path);
        for (const auto& r : res.records) {
            nlohmann::ordered_json j;
            j["qa_id"] = r.qa_id;
            j["f1"] = r.f1;
            j["cc"] = r.cc;
            j["prediction"] = r.prediction;
            scored << j.dump() << "\n";
        }
    }

    const auto& overall = res.report_json["overall"];
    std::printf("scored:  %d\n", overall["count"].get<int>());
    std::printf("missing: %zu\n", res.missing_ids.size());
    std::printf("unknown: %zu\n", res.unknown_ids.size());
    if (overall["count"].get<int>() > 0)
        std::printf("mean F1: %.4f   mean CC: %.4f\n", overall["f1"].get<double>(),
                    overall["cc"].get<double>());
    std::printf("%-10s %8s %8s %8s\n", "template", "count", "F1", "CC");
    for (auto it = res.report_json["by_template"].begin(); it != res.report_json["by_template"].end();
         ++it)
        std::printf("%-10s %8d %8.4f %8.4f\n", it.key().c_str(), it.value()["count"].get<int>(),
                    it.value()["f1"].get<double>(), it.value()["cc"].get<double>());
    for (const auto& id : res.unknown_ids) std::cerr << "unknown qa_id: " << id << "\n";
    return 0;
}

int run_stats(const std::string& dataset) {
    std::ifstream in(dataset);
    if (!in) {
        std::cerr << "cannot open " << dataset << "\n";
        return 1;
    }
    std::map<std::string, int> per_domain;
    std::map<int, int> per_template;
    std::map<std::string, std::vector<std::string>> questions_per_table;
    std::map<std::string, int> property_counts;
    int records = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::ordered_json::parse(line);
        ++records;
        ++per_domain[j.value("domain", "?")];
        ++per_template[j.value("template_id", 0)];
        questions_per_table[j.value("domain", "?") + "/" + j.value("table_id", "?")].push_back(
            j.value("question", ""));
        for (const char* key : {"table_properties", "question_properties"})
            if (j.contains(key))
                for (auto it = j[key].begin(); it != j[key].end(); ++it)
                    if (it.value().is_boolean() && it.value().get<bool>()) ++property_counts[it.key()];
    }

    std::printf("records: %d   tables: %zu\n", records, questions_per_table.size());
    std::printf("\nper domain:\n");
    for (const auto& [d, n] : per_domain) std::printf("  %-16s %6d\n", d.c_str(), n);
    std::printf("\nper template:\n");
    for (const auto& [t, n] : per_template) std::printf("  template %-2d %6d\n", t, n);
    std::printf("\nproperty counts:\n");
    for (const auto& [p, n] : property_counts) std::printf("  %-28s %6d\n", p.c_str(), n);

    double sim_total = 0.0;
    int sim_tables = 0;
    double q_total = 0.0;
    for (const auto& [table, qs] : questions_per_table) {
        q_total += static_cast<double>(qs.size());
        if (qs.size() < 2) continue;
        sim_total += hctgen::question_similarity(qs);
        ++sim_tables;
    }
    if (!questions_per_table.empty())
        std::printf("\navg questions per table: %.2f\n",
                    q_total / static_cast<double>(questions_per_table.size()));
    if (sim_tables)
        std::printf("question syntactic similarity: %.4f\n",
                    sim_total / static_cast<double>(sim_tables));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic human-centric table QA generator and scorer"};
    app.require_subcommand(1);

    hctgen::RunConfig cfg;
    std::vector<std::string> format_names = {"html", "csv", "markdown"};
    auto* gen = app.add_subcommand("generate", "generate tables, questions and ground truth");
    gen->add_option("domains", cfg.domain_dirs, "domain config directories")->required();
    gen->add_option("--seed", cfg.seed, "random seed");
    gen->add_option("--out", cfg.output_dir, "output directory");
    gen->add_option("--formats", format_names, "table formats (html, csv, markdown)");
    gen->add_option("--decimals", cfg.decimals, "decimal digits for generated reals");
    gen->add_option("--questions-per-template", cfg.questions_per_template,
                    "instances per query template per table");
    gen->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    gen->add_flag("--emit-sql", cfg.emit_sql, "write the query texts next to each table");

    std::string dataset, predictions, report_out = "report.json";
    int score_decimals = 2;
    auto* sc = app.add_subcommand("score", "score predictions against ground truth");
    sc->add_option("--dataset", dataset, "qa_records.jsonl from generate")->required();
    sc->add_option("--predictions", predictions, "JSONL with qa_id and raw_text")->required();
    sc->add_option("--report", report_out, "report output path");
    sc->add_option("--decimals", score_decimals, "decimal digits for numeric matching");

    std::string stats_dataset;
    auto* st = app.add_subcommand("stats", "dataset statistics");
    st->add_option("--dataset", stats_dataset, "qa_records.jsonl from generate")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            cfg.formats.clear();
            for (const auto& f : format_names) cfg.formats.push_back(hctgen::parse_render_format(f));
            return run_generate(cfg);
        }
        if (sc->parsed()) return run_score(dataset, predictions, report_out, score_decimals);
        if (st->parsed()) return run_stats(stats_dataset);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

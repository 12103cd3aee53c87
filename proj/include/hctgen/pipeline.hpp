#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "annotate.hpp"
#include "eval.hpp"
#include "nl_template.hpp"
#include "render.hpp"

namespace hctgen {

namespace fs = std::filesystem;

struct RunConfig {
    std::uint64_t seed = 42;
    std::vector<std::string> domain_dirs;
    std::string output_dir = "out";
    std::vector<RenderFormat> formats = {RenderFormat::html, RenderFormat::csv,
                                         RenderFormat::markdown};
    int questions_per_template = 1;
    int decimals = 2;
    int workers = 1;
    bool emit_sql = false;  // write a .sql file next to each table instance
};

// Everything needed to generate one domain: vocabulary, expanded individual
// templates, and the NL template set.
struct DomainBundle {
    std::string name;
    DomainVocabulary vocab;
    GenericTableTemplate generic;
    std::vector<IndividualTableTemplate> templates;
    NlTemplateSet nl;
};

inline json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

inline DomainBundle load_domain(const std::string& dir) {
    DomainBundle b;
    fs::path p(dir);
    b.name = p.filename().string();
    if (b.name.empty()) b.name = p.parent_path().filename().string();
    b.vocab = parse_vocabulary(load_json_file(p / "PARAM_semantics.json"));
    b.generic = parse_generic_template(load_json_file(p / "PARAM_tableTemplate.json"), b.vocab);
    b.templates = expand_generic(b.generic, b.vocab);
    b.nl = parse_nl_template_set(load_json_file(p / "PARAM_NLquestionTemplates.json"), b.vocab);
    return b;
}

inline json individual_templates_json(const DomainBundle& b) {
    json arr = json::array();
    for (const auto& t : b.templates) arr.push_back(individual_to_json(t));
    return arr;
}

struct TableInstance {
    std::string domain;
    std::string table_id;
    const IndividualTableTemplate* tpl = nullptr;
    GeneratedTable gen;
    HctTable hct;
};

inline TableInstance build_table_instance(const DomainBundle& bundle,
                                          const IndividualTableTemplate& tpl, std::uint64_t seed,
                                          int replica, int decimals) {
    TableInstance inst;
    inst.domain = bundle.name;
    inst.table_id = tpl.name + "_" + std::to_string(replica);
    inst.tpl = &tpl;
    Rng rng = Rng::derive(seed, {bundle.name, tpl.name, "replica", std::to_string(replica)});
    inst.gen = generate_relational(tpl, bundle.vocab, rng, decimals);
    inst.hct = pivot(inst.gen.rel, tpl, bundle.vocab, rng);
    return inst;
}

struct QaItem {
    std::string qa_id;
    int template_id = 0;
    QueryInstance q;
    std::string question;
    std::string sql;
    std::string answer;
    TableProperties tprops;
    QuestionProperties qprops;
};

// Draws, evaluates and transcribes one question; re-draws a few times when a
// degenerate draw yields an empty answer. nullopt means the template is not
// applicable to this table (template 5 without aggregates, or only empty
// draws).
inline std::optional<QaItem> build_qa(const DomainBundle& bundle, const TableInstance& inst,
                                      int template_id, int variant, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, {bundle.name, inst.table_id, "q", std::to_string(template_id),
                                 std::to_string(variant)});
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto q = instantiate(template_id, inst.gen.rel, *inst.tpl, bundle.vocab, rng, &inst.hct);
        if (!q) return std::nullopt;
        Answer ans = evaluate(*q, inst.gen.rel, *inst.tpl);
        if (ans.rows.empty()) continue;
        QaItem item;
        item.qa_id = inst.domain + "/" + inst.table_id + "/t" + std::to_string(template_id) + "_" +
                     std::to_string(variant);
        item.template_id = template_id;
        item.answer = format_answer(ans);
        item.sql = render_sql(*q, inst.gen.rel, *inst.tpl, bundle.vocab);
        if (template_id == 15) {
            item.question = compose_template15(bundle.nl, *q, *inst.tpl, bundle.vocab);
        } else {
            const auto& variants = bundle.nl.templates.at(template_id);
            const TemplateAst& ast = variants[rng.index(variants.size())];
            item.question = instantiate_nl(ast, *q, bundle.nl, *inst.tpl, bundle.vocab);
        }
        item.tprops = annotate_table(inst.hct, *inst.tpl);
        item.qprops = annotate_question(*q, inst.gen.rel, *inst.tpl);
        item.q = std::move(*q);
        return item;
    }
    return std::nullopt;
}

struct DomainCounts {
    std::string domain;
    int tables = 0;
    int records = 0;
    int skipped = 0;
    int aborted = 0;
    std::map<int, int> per_template;
};

struct Manifest {
    std::uint64_t seed = 0;
    int decimals = 2;
    int questions_per_template = 1;
    std::vector<std::string> formats;
    std::vector<DomainCounts> domains;

    bool any_aborted() const {
        for (const auto& d : domains)
            if (d.aborted) return true;
        return false;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["seed"] = seed;
        j["decimals"] = decimals;
        j["questions_per_template"] = questions_per_template;
        j["formats"] = formats;
        j["domains"] = nlohmann::ordered_json::array();
        int total_tables = 0, total_records = 0;
        for (const auto& d : domains) {
            nlohmann::ordered_json dj;
            dj["domain"] = d.domain;
            dj["tables"] = d.tables;
            dj["records"] = d.records;
            dj["skipped"] = d.skipped;
            dj["aborted"] = d.aborted;
            nlohmann::ordered_json pt = nlohmann::ordered_json::object();
            for (int id = 1; id <= 15; ++id) {
                auto it = d.per_template.find(id);
                pt[std::to_string(id)] = it == d.per_template.end() ? 0 : it->second;
            }
            dj["per_template"] = pt;
            j["domains"].push_back(dj);
            total_tables += d.tables;
            total_records += d.records;
        }
        j["total_tables"] = total_tables;
        j["total_records"] = total_records;
        return j;
    }
};

namespace detail {

inline const char* format_extension(RenderFormat f) {
    switch (f) {
        case RenderFormat::html: return ".html";
        case RenderFormat::csv: return ".csv";
        case RenderFormat::markdown: return ".md";
    }
    return ".txt";
}

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

struct TableJob {
    const DomainBundle* bundle = nullptr;
    const IndividualTableTemplate* tpl = nullptr;
    int replica = 1;
};

struct TableResult {
    bool ok = false;
    std::string error;
    TableInstance inst;
    std::vector<QaItem> items;
    int skipped = 0;
};

inline TableResult run_table_job(const TableJob& job, const RunConfig& cfg) {
    TableResult res;
    try {
        res.inst = build_table_instance(*job.bundle, *job.tpl, cfg.seed, job.replica, cfg.decimals);
        for (int id = 1; id <= 15; ++id)
            for (int v = 0; v < cfg.questions_per_template; ++v) {
                auto item = build_qa(*job.bundle, res.inst, id, v, cfg.seed);
                if (item)
                    res.items.push_back(std::move(*item));
                else
                    ++res.skipped;
            }
        res.ok = true;
    } catch (const std::exception& e) {
        res.ok = false;
        res.error = e.what();
    }
    return res;
}

}  // namespace detail

// Runs the whole pipeline: expand templates, sample tables, pivot, render,
// generate QA records with metadata, write one JSONL plus a manifest.
// Deterministic for a fixed seed regardless of worker count.
inline Manifest generate_dataset(const RunConfig& cfg, std::ostream& log = std::cerr) {
    std::vector<DomainBundle> bundles;
    for (const auto& dir : cfg.domain_dirs) bundles.push_back(load_domain(dir));

    Manifest manifest;
    manifest.seed = cfg.seed;
    manifest.decimals = cfg.decimals;
    manifest.questions_per_template = cfg.questions_per_template;
    for (RenderFormat f : cfg.formats)
        manifest.formats.push_back(f == RenderFormat::html  ? "html"
                                   : f == RenderFormat::csv ? "csv"
                                                            : "markdown");

    fs::create_directories(cfg.output_dir);

    std::vector<detail::TableJob> jobs;
    for (const auto& b : bundles) {
        fs::create_directories(fs::path(cfg.output_dir) / b.name);
        detail::write_file(fs::path(cfg.output_dir) / b.name / "PARAM_tablesToGenerate.json",
                           individual_templates_json(b).dump(2) + "\n");
        for (const auto& t : b.templates)
            for (int r = 1; r <= t.replica; ++r) jobs.push_back({&b, &t, r});
    }

    std::vector<detail::TableResult> results(jobs.size());
    const int workers = std::max(1, cfg.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = detail::run_table_job(jobs[i], cfg);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                results[i] = detail::run_table_job(jobs[i], cfg);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // single collector keeps file contents and manifest ordering stable
    std::ofstream records(fs::path(cfg.output_dir) / "qa_records.jsonl", std::ios::binary);
    std::map<std::string, DomainCounts> counts;
    for (const auto& b : bundles) counts[b.name].domain = b.name;

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& job = jobs[i];
        auto& dc = counts[job.bundle->name];
        auto& res = results[i];
        if (!res.ok) {
            log << "[hctgen] table aborted: " << job.bundle->name << "/" << job.tpl->name << "_"
                << job.replica << ": " << res.error << "\n";
            ++dc.aborted;
            continue;
        }
        ++dc.tables;
        dc.skipped += res.skipped;
        const fs::path domain_dir = fs::path(cfg.output_dir) / job.bundle->name;
        nlohmann::ordered_json files = nlohmann::ordered_json::object();
        for (RenderFormat f : cfg.formats) {
            fs::path p = domain_dir / (res.inst.table_id + "_HCT" + detail::format_extension(f));
            detail::write_file(p, render(res.inst.hct, f));
            files[f == RenderFormat::html  ? "hct_html"
                  : f == RenderFormat::csv ? "hct_csv"
                                           : "hct_md"] =
                (fs::path(job.bundle->name) / p.filename()).generic_string();
        }
        fs::path dbp = domain_dir / (res.inst.table_id + "_DB.html");
        detail::write_file(dbp, render_relational_html(res.inst.gen.rel));
        files["rel_html"] = (fs::path(job.bundle->name) / dbp.filename()).generic_string();
        if (cfg.emit_sql) {
            std::string sqls;
            for (const auto& item : res.items)
                sqls += "-- " + item.qa_id + "\n" + item.sql + "\n";
            detail::write_file(domain_dir / (res.inst.table_id + "_queries.sql"), sqls);
        }

        for (auto& item : res.items) {
            ++dc.records;
            ++dc.per_template[item.template_id];
            nlohmann::ordered_json rec;
            rec["qa_id"] = item.qa_id;
            rec["domain"] = job.bundle->name;
            rec["table_id"] = res.inst.table_id;
            rec["template_id"] = item.template_id;
            rec["question"] = item.question;
            rec["sql"] = item.sql;
            rec["answer"] = item.answer;
            rec["table_properties"] = item.tprops.to_json();
            rec["question_properties"] = item.qprops.to_json();
            rec["files"] = files;
            records << rec.dump() << "\n";
        }
    }
    records.close();

    for (const auto& b : bundles) manifest.domains.push_back(counts[b.name]);
    detail::write_file(fs::path(cfg.output_dir) / "manifest.json",
                       manifest.to_json().dump(2) + "\n");
    return manifest;
}

// --------------------------------------------------------------------------
// Scoring a prediction run against a generated dataset
// --------------------------------------------------------------------------

struct ScoreRunResult {
    std::vector<ScoredRecord> records;
    std::vector<std::string> unknown_ids;
    std::vector<std::string> missing_ids;  // dataset ids with no prediction
    nlohmann::ordered_json report_json;
};

inline ScoreRunResult score_run(const std::string& dataset_jsonl, const std::string& predictions_jsonl,
                                int decimals = 2) {
    struct TruthEntry {
        std::string answer;
        int template_id = 0;
        std::string domain;
        nlohmann::ordered_json metadata;
    };
    std::map<std::string, TruthEntry> truth;
    {
        std::ifstream in(dataset_jsonl);
        if (!in) throw ConfigError("cannot open " + dataset_jsonl);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::ordered_json::parse(line);
            TruthEntry e;
            e.answer = j.at("answer").get<std::string>();
            e.template_id = j.value("template_id", 0);
            e.domain = j.value("domain", "");
            nlohmann::ordered_json meta = nlohmann::ordered_json::object();
            for (const char* key : {"table_properties", "question_properties"})
                if (j.contains(key))
                    for (auto it = j[key].begin(); it != j[key].end(); ++it)
                        meta[it.key()] = it.value();
            e.metadata = meta;
            truth[j.at("qa_id").get<std::string>()] = std::move(e);
        }
    }

    ScoreRunResult out;
    std::set<std::string> predicted;
    {
        std::ifstream in(predictions_jsonl);
        if (!in) throw ConfigError("cannot open " + predictions_jsonl);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::ordered_json::parse(line);
            std::string id = j.at("qa_id").get<std::string>();
            std::string raw = j.contains("raw_text") ? j["raw_text"].get<std::string>()
                                                     : j.value("prediction", "");
            auto it = truth.find(id);
            if (it == truth.end()) {
                out.unknown_ids.push_back(id);
                continue;
            }
            predicted.insert(id);
            Score s = score(normalize_answer(raw, decimals),
                            normalize_answer(it->second.answer, decimals));
            ScoredRecord r;
            r.qa_id = id;
            r.f1 = s.f1;
            r.cc = s.cc;
            r.prediction = raw;
            r.template_id = it->second.template_id;
            r.domain = it->second.domain;
            r.metadata = it->second.metadata;
            out.records.push_back(std::move(r));
        }
    }
    for (const auto& [id, entry] : truth)
        if (!predicted.count(id)) out.missing_ids.push_back(id);

    out.report_json = report(out.records);
    out.report_json["unknown_ids"] = out.unknown_ids;
    out.report_json["missing"] = out.missing_ids.size();
    return out;
}

}  // namespace hctgen

#pragma once

#include <string>
#include <vector>

#include "vocab.hpp"

namespace hctgen {

enum class ShuffleMode { none, rows, cols, rowscols, all };
enum class RowFormat { new_row, indent };
enum class AggFun { sum, avg, min, max, count };
enum class AggColPos { none, left, right };
enum class AggRowPos { none, top, bottom };

inline const char* to_string(ShuffleMode m) {
    switch (m) {
        case ShuffleMode::none: return "none";
        case ShuffleMode::rows: return "rows";
        case ShuffleMode::cols: return "cols";
        case ShuffleMode::rowscols: return "rowscols";
        case ShuffleMode::all: return "all";
    }
    return "none";
}

inline const char* to_string(AggFun f) {
    switch (f) {
        case AggFun::sum: return "sum";
        case AggFun::avg: return "avg";
        case AggFun::min: return "min";
        case AggFun::max: return "max";
        case AggFun::count: return "count";
    }
    return "sum";
}

inline ShuffleMode parse_shuffle(const std::string& s) {
    if (s == "none") return ShuffleMode::none;
    if (s == "rows" || s == "row") return ShuffleMode::rows;
    if (s == "cols" || s == "col") return ShuffleMode::cols;
    if (s == "rowscols") return ShuffleMode::rowscols;
    if (s == "all") return ShuffleMode::all;
    throw ConfigError("unknown shuffle mode: " + s);
}

inline AggFun parse_agg_fun(const std::string& s) {
    if (s == "sum") return AggFun::sum;
    if (s == "avg") return AggFun::avg;
    if (s == "min") return AggFun::min;
    if (s == "max") return AggFun::max;
    if (s == "count") return AggFun::count;
    throw ConfigError("unknown aggregate function: " + s);
}

// Sampling interval for attribute values: [0] selects everything, [m, M]
// selects a run of n values with n drawn uniformly in [m, M].
struct SampleInterval {
    int lo = 0;
    int hi = 0;
    bool all = true;

    static SampleInterval everything() { return SampleInterval{}; }
    static SampleInterval range(int lo, int hi) {
        if (lo < 0 || hi < lo) throw ConfigError("invalid sample interval");
        return SampleInterval{lo, hi, false};
    }

    static SampleInterval parse(const json& j) {
        if (!j.is_array() || j.empty()) throw ConfigError("sample interval must be [0] or [m, M]");
        if (j.size() == 1) {
            if (j[0].get<int>() != 0) throw ConfigError("single-element sample interval must be [0]");
            return everything();
        }
        return range(j[0].get<int>(), j[1].get<int>());
    }

    json to_json() const {
        if (all) return json::array({0});
        return json::array({lo, hi});
    }
};

struct ContentSpec {
    std::string value_name;
    json values_spec;  // shortcut name or [m, M]
    std::vector<std::string> row_codes, col_codes;
    std::vector<SampleInterval> row_samples, col_samples;
    std::string agg_name;
    AggFun agg_fun = AggFun::sum;
};

struct LevelPair {
    int col_depth = 1;
    int row_depth = 1;
};

struct AggPosPair {
    AggColPos col = AggColPos::none;
    AggRowPos row = AggRowPos::none;
};

struct GenericTableTemplate {
    int replica = 1;
    std::vector<ShuffleMode> shuffles;
    std::vector<LevelPair> level_pairs;
    std::vector<AggPosPair> agg_positions;
    std::vector<RowFormat> row_formats;
    std::vector<ContentSpec> tables;
};

// One attribute assigned to an axis, possibly truncated to its first
// `level_count` levels to fit the declared header depth.
struct AxisComponent {
    std::string code;
    bool hierarchical = false;
    int level_count = 1;
    SampleInterval sample;
};

struct IndividualTableTemplate {
    std::string name;
    int replica = 1;
    ShuffleMode shuffle = ShuffleMode::none;
    RowFormat row_format = RowFormat::new_row;
    AggColPos agg_col = AggColPos::none;
    AggRowPos agg_row = AggRowPos::none;
    AggFun agg_fun = AggFun::sum;
    std::string agg_name;
    json values_spec;
    std::string value_name;
    std::vector<AxisComponent> col_components, row_components;
    int col_depth = 1;
    int row_depth = 1;

    bool has_aggregates() const {
        return agg_col != AggColPos::none || agg_row != AggRowPos::none;
    }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline LevelPair parse_level_pair(const std::string& s) {
    auto parts = split(s, '_');
    if (parts.size() != 2) throw ConfigError("col_row_levels entry must look like \"dc_dr\": " + s);
    LevelPair lp{std::stoi(parts[0]), std::stoi(parts[1])};
    if (lp.col_depth < 1 || lp.col_depth > 3 || lp.row_depth < 1 || lp.row_depth > 3)
        throw ConfigError("header depths must be in {1,2,3}: " + s);
    return lp;
}

inline AggPosPair parse_agg_pos(const std::string& s) {
    auto parts = split(s, '_');
    if (parts.size() != 2) throw ConfigError("col_row_agg_pos entry must look like \"C_R\": " + s);
    AggPosPair p;
    if (parts[0] == "none") p.col = AggColPos::none;
    else if (parts[0] == "left") p.col = AggColPos::left;
    else if (parts[0] == "right") p.col = AggColPos::right;
    else throw ConfigError("aggregate column position must be none/left/right: " + s);
    if (parts[1] == "none") p.row = AggRowPos::none;
    else if (parts[1] == "top") p.row = AggRowPos::top;
    else if (parts[1] == "bottom") p.row = AggRowPos::bottom;
    else throw ConfigError("aggregate row position must be none/top/bottom: " + s);
    return p;
}

inline std::string agg_pos_string(const AggPosPair& p) {
    std::string c = p.col == AggColPos::none ? "none" : (p.col == AggColPos::left ? "left" : "right");
    std::string r = p.row == AggRowPos::none ? "none" : (p.row == AggRowPos::top ? "top" : "bottom");
    return c + "_" + r;
}

}  // namespace detail

inline GenericTableTemplate parse_generic_template(const json& doc, const DomainVocabulary& vocab) {
    GenericTableTemplate g;
    g.replica = doc.value("replica", 1);
    if (g.replica < 1) throw ConfigError("replica must be >= 1");
    for (const auto& s : doc.at("shuffle")) g.shuffles.push_back(parse_shuffle(s.get<std::string>()));
    for (const auto& s : doc.at("col_row_levels"))
        g.level_pairs.push_back(detail::parse_level_pair(s.get<std::string>()));
    for (const auto& s : doc.at("col_row_agg_pos"))
        g.agg_positions.push_back(detail::parse_agg_pos(s.get<std::string>()));
    if (doc.contains("row_format")) {
        for (const auto& s : doc["row_format"]) {
            const std::string f = s.get<std::string>();
            if (f == "new") g.row_formats.push_back(RowFormat::new_row);
            else if (f == "indent") g.row_formats.push_back(RowFormat::indent);
            else throw ConfigError("row_format must be new or indent: " + f);
        }
    } else {
        g.row_formats.push_back(RowFormat::new_row);
    }
    // col_row_name_pos is a place-holder key: accepted, ignored.

    for (const auto& t : doc.at("tables")) {
        ContentSpec spec;
        spec.value_name = t.at("valueName").get<std::string>();
        spec.values_spec = t.at("values");
        resolve_numeric_spec(vocab, spec.values_spec);  // validate early
        for (const auto& c : t.at("rowCodes")) spec.row_codes.push_back(c.get<std::string>());
        for (const auto& c : t.at("colCodes")) spec.col_codes.push_back(c.get<std::string>());
        for (const auto& s : t.at("rowSamples")) spec.row_samples.push_back(SampleInterval::parse(s));
        for (const auto& s : t.at("colSamples")) spec.col_samples.push_back(SampleInterval::parse(s));
        if (spec.row_samples.size() != spec.row_codes.size() ||
            spec.col_samples.size() != spec.col_codes.size())
            throw ConfigError("sample lists must align with code lists in '" + spec.value_name + "'");
        for (const auto& c : spec.row_codes) vocab.require(c);
        for (const auto& c : spec.col_codes) vocab.require(c);
        spec.agg_name = t.value("agg_name1", "Total");
        spec.agg_fun = parse_agg_fun(t.value("agg_fun1", "sum"));
        if (spec.agg_fun == AggFun::count)
            throw ConfigError("agg_fun1 must be one of sum/avg/min/max");
        g.tables.push_back(std::move(spec));
    }
    if (g.shuffles.empty() || g.level_pairs.empty() || g.agg_positions.empty() ||
        g.row_formats.empty() || g.tables.empty())
        throw ConfigError("generic template requires non-empty parameter sets");
    return g;
}

namespace detail {

// Assigns codes to an axis of the requested depth. Attributes are taken in
// order; a hierarchical group that would overshoot is truncated to its top
// levels (children are never shown without their parents). Returns false if
// the listed codes cannot fill the axis.
inline bool assign_axis(const std::vector<std::string>& codes,
                        const std::vector<SampleInterval>& samples, int depth,
                        const DomainVocabulary& vocab, std::vector<AxisComponent>& out) {
    if (codes.size() != samples.size())
        throw ConfigError("sample list does not align with code list");
    int remaining = depth;
    for (std::size_t i = 0; i < codes.size() && remaining > 0; ++i) {
        const AttributeSpec& attr = vocab.require(codes[i]);
        AxisComponent comp;
        comp.code = attr.code;
        comp.hierarchical = attr.hierarchical;
        comp.level_count = std::min<int>(static_cast<int>(attr.depth()), remaining);
        comp.sample = samples[i];
        remaining -= comp.level_count;
        out.push_back(std::move(comp));
    }
    return remaining == 0;
}

}  // namespace detail

// Expands a generic template into the cartesian product of its parameter
// sets, filtering combinations whose axes cannot be filled to the declared
// depths. Names follow the sequential set<N> convention.
inline std::vector<IndividualTableTemplate> expand_generic(const GenericTableTemplate& g,
                                                           const DomainVocabulary& vocab) {
    std::vector<IndividualTableTemplate> out;
    int counter = 0;
    for (ShuffleMode shuffle : g.shuffles)
        for (const LevelPair& lp : g.level_pairs)
            for (const AggPosPair& ap : g.agg_positions)
                for (RowFormat fmt : g.row_formats)
                    for (const ContentSpec& spec : g.tables) {
                        IndividualTableTemplate t;
                        if (!detail::assign_axis(spec.col_codes, spec.col_samples, lp.col_depth,
                                                 vocab, t.col_components) ||
                            !detail::assign_axis(spec.row_codes, spec.row_samples, lp.row_depth,
                                                 vocab, t.row_components))
                            continue;
                        t.name = "set" + std::to_string(++counter);
                        t.replica = g.replica;
                        t.shuffle = shuffle;
                        t.row_format = fmt;
                        t.agg_col = ap.col;
                        t.agg_row = ap.row;
                        t.agg_fun = spec.agg_fun;
                        t.agg_name = spec.agg_name;
                        t.values_spec = spec.values_spec;
                        t.value_name = spec.value_name;
                        t.col_depth = lp.col_depth;
                        t.row_depth = lp.row_depth;
                        out.push_back(std::move(t));
                    }
    if (out.empty()) throw ConfigError("template expansion produced no individual templates");
    return out;
}

inline json individual_to_json(const IndividualTableTemplate& t) {
    json j;
    j["name"] = t.name;
    j["replica"] = t.replica;
    j["shuffle"] = to_string(t.shuffle);
    j["row_format"] = t.row_format == RowFormat::indent ? "indent" : "new";
    j["col_row_levels"] = std::to_string(t.col_depth) + "_" + std::to_string(t.row_depth);
    j["agg_pos1"] = detail::agg_pos_string({t.agg_col, t.agg_row});
    j["agg_fun1"] = to_string(t.agg_fun);
    j["agg_name1"] = t.agg_name;
    j["values"] = t.values_spec;
    j["valueName"] = t.value_name;
    auto axis = [](const std::vector<AxisComponent>& comps) {
        json codes = json::array();
        json samples = json::array();
        for (const auto& c : comps) {
            codes.push_back(c.code);
            samples.push_back(c.sample.to_json());
        }
        return std::make_pair(codes, samples);
    };
    auto [cc, cs] = axis(t.col_components);
    j["columns"] = cc;
    j["colSamples"] = cs;
    auto [rc, rs] = axis(t.row_components);
    j["rows"] = rc;
    j["rowSamples"] = rs;
    return j;
}

inline IndividualTableTemplate individual_from_json(const json& j, const DomainVocabulary& vocab) {
    IndividualTableTemplate t;
    t.name = j.at("name").get<std::string>();
    t.replica = j.value("replica", 1);
    t.shuffle = parse_shuffle(j.at("shuffle").get<std::string>());
    t.row_format = j.at("row_format").get<std::string>() == "indent" ? RowFormat::indent
                                                                     : RowFormat::new_row;
    LevelPair lp = detail::parse_level_pair(j.at("col_row_levels").get<std::string>());
    t.col_depth = lp.col_depth;
    t.row_depth = lp.row_depth;
    AggPosPair ap = detail::parse_agg_pos(j.at("agg_pos1").get<std::string>());
    t.agg_col = ap.col;
    t.agg_row = ap.row;
    t.agg_fun = parse_agg_fun(j.at("agg_fun1").get<std::string>());
    t.agg_name = j.at("agg_name1").get<std::string>();
    t.values_spec = j.at("values");
    t.value_name = j.at("valueName").get<std::string>();
    auto read_axis = [&](const char* codes_key, const char* samples_key, int depth,
                         std::vector<AxisComponent>& out) {
        std::vector<std::string> codes;
        std::vector<SampleInterval> samples;
        for (const auto& c : j.at(codes_key)) codes.push_back(c.get<std::string>());
        for (const auto& s : j.at(samples_key)) samples.push_back(SampleInterval::parse(s));
        if (!detail::assign_axis(codes, samples, depth, vocab, out))
            throw ConfigError("axis codes cannot fill declared depth in '" + t.name + "'");
    };
    read_axis("columns", "colSamples", t.col_depth, t.col_components);
    read_axis("rows", "rowSamples", t.row_depth, t.row_components);
    return t;
}

}  // namespace hctgen

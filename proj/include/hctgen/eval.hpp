#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "number_format.hpp"

namespace hctgen {

// Multiset of normalized atomic values. Numbers are keyed by their canonical
// rounded form so "533.750" and "533.75" compare equal.
struct ValueMultiset {
    std::map<std::string, int> counts;

    int size() const {
        int n = 0;
        for (const auto& [k, c] : counts) n += c;
        return n;
    }
    bool empty() const { return counts.empty(); }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

inline bool parse_full_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size();
}

// canonical atom: numbers rounded to the configured decimals, text folded
inline std::string canonical_atom(const std::string& raw, int decimals) {
    std::string t = trim(raw);
    double v = 0;
    if (parse_full_number(t, v)) return format_number(round_to(v, decimals));
    // retry with thousands separators stripped ("1,234" arrives pre-split,
    // but "1 234" style still shows up)
    std::string packed;
    for (char c : t)
        if (c != ' ' && c != ',') packed += c;
    if (!packed.empty() && packed != t && parse_full_number(packed, v))
        return format_number(round_to(v, decimals));
    return lower(t);
}

inline void split_append(const std::string& text, const std::string& sep,
                         std::vector<std::string>& out) {
    std::size_t pos = 0;
    while (true) {
        std::size_t hit = text.find(sep, pos);
        if (hit == std::string::npos) {
            out.push_back(text.substr(pos));
            return;
        }
        out.push_back(text.substr(pos, hit - pos));
        pos = hit + sep.size();
    }
}

}  // namespace detail

// Splits a raw model output (or a ground-truth string) into its value
// multiset: " || " first (the prompt protocol), then "," and ";".
inline ValueMultiset normalize_answer(const std::string& text, int decimals = 2) {
    ValueMultiset out;
    std::string t = detail::trim(text);
    if (t.empty() || detail::lower(t) == "no answer") return out;
    std::vector<std::string> parts;
    detail::split_append(t, " || ", parts);
    std::vector<std::string> atoms;
    for (const auto& p : parts) {
        std::vector<std::string> by_semicolon;
        detail::split_append(p, ";", by_semicolon);
        for (const auto& s : by_semicolon) detail::split_append(s, ",", atoms);
    }
    for (const auto& a : atoms) {
        std::string atom = detail::canonical_atom(a, decimals);
        if (!atom.empty()) ++out.counts[atom];
    }
    return out;
}

struct Score {
    double f1 = 0.0;
    int cc = 0;
    double precision = 0.0;
    double recall = 0.0;
};

inline Score score(const ValueMultiset& pred, const ValueMultiset& truth) {
    if (truth.empty()) throw std::invalid_argument("ground truth must be non-empty");
    int inter = 0;
    for (const auto& [k, c] : pred.counts) {
        auto it = truth.counts.find(k);
        if (it != truth.counts.end()) inter += std::min(c, it->second);
    }
    Score s;
    s.precision = pred.size() ? static_cast<double>(inter) / pred.size() : 0.0;
    s.recall = static_cast<double>(inter) / truth.size();
    s.f1 = (s.precision + s.recall) > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall)
                                        : 0.0;
    s.cc = s.recall == 1.0 ? 1 : 0;
    return s;
}

// F1 = 2/3 is displayed as 0.66: two-decimal truncation, not rounding.
inline std::string f1_display(double f1) {
    double t = std::floor(f1 * 100.0 + 1e-9) / 100.0;
    return format_fixed(t, 2);
}

struct ScoredRecord {
    std::string qa_id;
    double f1 = 0.0;
    int cc = 0;
    std::string prediction;
    int template_id = 0;
    std::string domain;
    nlohmann::ordered_json metadata;  // flat property map
};

struct GroupStats {
    double f1_sum = 0.0;
    double cc_sum = 0.0;
    int n = 0;

    void add(const ScoredRecord& r) {
        f1_sum += r.f1;
        cc_sum += r.cc;
        ++n;
    }
    double mean_f1() const { return n ? f1_sum / n : 0.0; }
    double mean_cc() const { return n ? cc_sum / n : 0.0; }
};

// Mean F1/CC overall and sliced by template id, domain, and every boolean
// property flag in the metadata.
inline nlohmann::ordered_json report(const std::vector<ScoredRecord>& records) {
    using ojson = nlohmann::ordered_json;
    GroupStats overall;
    std::map<int, GroupStats> by_template;
    std::map<std::string, GroupStats> by_domain;
    std::map<std::string, GroupStats> by_property;
    for (const auto& r : records) {
        overall.add(r);
        by_template[r.template_id].add(r);
        if (!r.domain.empty()) by_domain[r.domain].add(r);
        for (auto it = r.metadata.begin(); it != r.metadata.end(); ++it)
            if (it.value().is_boolean() && it.value().get<bool>()) by_property[it.key()].add(r);
    }
    auto stats_json = [](const GroupStats& g) {
        ojson j;
        j["count"] = g.n;
        j["f1"] = g.mean_f1();
        j["cc"] = g.mean_cc();
        return j;
    };
    ojson out;
    out["scored"] = overall.n;
    out["overall"] = stats_json(overall);
    ojson t = ojson::object();
    for (const auto& [id, g] : by_template) t[std::to_string(id)] = stats_json(g);
    out["by_template"] = t;
    ojson d = ojson::object();
    for (const auto& [name, g] : by_domain) d[name] = stats_json(g);
    out["by_domain"] = d;
    ojson p = ojson::object();
    for (const auto& [name, g] : by_property) p[name] = stats_json(g);
    out["by_property"] = p;
    return out;
}

// Mean pairwise word-level Jaccard similarity over all unordered pairs.
inline double question_similarity(const std::vector<std::string>& questions) {
    if (questions.size() < 2)
        throw std::invalid_argument("question similarity needs at least two questions");
    std::vector<std::set<std::string>> word_sets;
    for (const auto& q : questions) {
        std::set<std::string> words;
        std::string cur;
        for (char c : q + " ") {
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!cur.empty()) words.insert(detail::lower(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        word_sets.push_back(std::move(words));
    }
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < word_sets.size(); ++i)
        for (std::size_t j = i + 1; j < word_sets.size(); ++j) {
            std::size_t inter = 0;
            for (const auto& w : word_sets[i]) inter += word_sets[j].count(w);
            std::size_t uni = word_sets[i].size() + word_sets[j].size() - inter;
            total += uni ? static_cast<double>(inter) / static_cast<double>(uni) : 1.0;
            ++pairs;
        }
    return total / static_cast<double>(pairs);
}

}  // namespace hctgen

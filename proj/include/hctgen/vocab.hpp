#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace hctgen {

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericRange {
    double min = 0.0;
    double max = 0.0;
    bool integer_mode = false;
};

// One node of a hierarchical value tree. Independent attributes use a flat
// list of childless nodes.
struct ValueNode {
    std::string value;
    std::vector<ValueNode> children;
};

// Placeholder form of an attribute name: "Import-Export" -> "Import_Export".
inline std::string placeholder_key(std::string name) {
    for (char& c : name)
        if (c == '-' || c == ' ') c = '_';
    return name;
}

struct AttributeSpec {
    std::string code;
    bool hierarchical = false;
    std::vector<std::string> names;  // level display names, outer to inner
    std::vector<ValueNode> values;   // tree of depth names.size()

    std::size_t depth() const { return names.size(); }

    std::vector<std::vector<std::string>> leaf_paths() const {
        std::vector<std::vector<std::string>> out;
        std::vector<std::string> path;
        collect_paths(values, path, out);
        return out;
    }

private:
    static void collect_paths(const std::vector<ValueNode>& nodes, std::vector<std::string>& path,
                              std::vector<std::vector<std::string>>& out) {
        for (const auto& n : nodes) {
            path.push_back(n.value);
            if (n.children.empty())
                out.push_back(path);
            else
                collect_paths(n.children, path, out);
            path.pop_back();
        }
    }
};

struct DomainVocabulary {
    std::vector<AttributeSpec> attributes;
    std::vector<std::pair<std::string, NumericRange>> numeric_shortcuts;  // document order

    const AttributeSpec* find(const std::string& code) const {
        for (const auto& a : attributes)
            if (a.code == code) return &a;
        return nullptr;
    }

    const AttributeSpec& require(const std::string& code) const {
        const AttributeSpec* a = find(code);
        if (!a) throw ConfigError("unknown attribute code: " + code);
        return *a;
    }

    const NumericRange* find_shortcut(const std::string& name) const {
        for (const auto& [k, v] : numeric_shortcuts)
            if (k == name) return &v;
        return nullptr;
    }

    // Resolves a placeholder key ($Name with '-' already folded to '_') to
    // the attribute and level index it names.
    std::optional<std::pair<const AttributeSpec*, std::size_t>> find_level(
        const std::string& key) const {
        for (const auto& a : attributes)
            for (std::size_t i = 0; i < a.names.size(); ++i)
                if (placeholder_key(a.names[i]) == key) return std::make_pair(&a, i);
        return std::nullopt;
    }
};

namespace detail {

inline void parse_value_tree(const json& j, std::size_t level, std::size_t depth,
                             std::vector<ValueNode>& out, const std::string& code) {
    if (level + 1 == depth) {
        if (!j.is_array())
            throw ConfigError("ragged hierarchy in '" + code + "': expected a value list at depth " +
                              std::to_string(depth));
        for (const auto& v : j) {
            if (!v.is_string() && !v.is_number())
                throw ConfigError("invalid leaf value in '" + code + "'");
            out.push_back({v.is_string() ? v.get<std::string>() : v.dump(), {}});
        }
    } else {
        if (!j.is_object())
            throw ConfigError("ragged hierarchy in '" + code + "': expected nested values at level " +
                              std::to_string(level + 1));
        for (auto it = j.begin(); it != j.end(); ++it) {
            ValueNode node{it.key(), {}};
            parse_value_tree(it.value(), level + 1, depth, node.children, code);
            out.push_back(std::move(node));
        }
    }
    // children unique among siblings
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t k = i + 1; k < out.size(); ++k)
            if (out[i].value == out[k].value)
                throw ConfigError("duplicate sibling value '" + out[i].value + "' in '" + code + "'");
    if (out.empty()) throw ConfigError("empty value list in '" + code + "'");
}

inline NumericRange parse_range(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("malformed interval for " + what + ": expected [min, max]");
    NumericRange r;
    r.min = j[0].get<double>();
    r.max = j[1].get<double>();
    r.integer_mode = j[0].is_number_integer() && j[1].is_number_integer();
    if (r.min > r.max) throw ConfigError("min > max in interval for " + what);
    return r;
}

}  // namespace detail

inline std::size_t entry_depth(const json& values) {
    if (values.is_array()) return 1;
    if (values.is_object() && !values.empty()) return 1 + entry_depth(values.begin().value());
    return 1;
}

inline DomainVocabulary parse_vocabulary(const json& doc) {
    if (!doc.is_object()) throw ConfigError("vocabulary document must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "data" && it.key() != "values")
            throw ConfigError("unknown top-level key '" + it.key() + "' in vocabulary");
    if (!doc.contains("data") || !doc["data"].is_array())
        throw ConfigError("vocabulary requires a 'data' attribute list");

    DomainVocabulary vocab;
    for (const auto& entry : doc["data"]) {
        AttributeSpec attr;
        if (!entry.contains("code") || !entry.contains("names") || !entry.contains("values"))
            throw ConfigError("attribute entry requires 'code', 'names' and 'values'");
        attr.code = entry["code"].get<std::string>();
        if (vocab.find(attr.code)) throw ConfigError("duplicate attribute code: " + attr.code);
        for (const auto& n : entry["names"]) attr.names.push_back(n.get<std::string>());
        if (attr.names.empty()) throw ConfigError("attribute '" + attr.code + "' has no names");
        attr.hierarchical = attr.names.size() > 1 || entry["values"].is_object();
        if (attr.hierarchical && attr.names.size() < entry_depth(entry["values"]))
            throw ConfigError("ragged hierarchy in '" + attr.code + "': value tree deeper than names");
        if (!attr.hierarchical && !entry["values"].is_array())
            throw ConfigError("independent attribute '" + attr.code + "' requires a flat value list");
        detail::parse_value_tree(entry["values"], 0, attr.names.size(), attr.values, attr.code);
        vocab.attributes.push_back(std::move(attr));
    }

    if (doc.contains("values")) {
        if (!doc["values"].is_object()) throw ConfigError("'values' must map shortcut names to intervals");
        for (auto it = doc["values"].begin(); it != doc["values"].end(); ++it)
            vocab.numeric_shortcuts.emplace_back(it.key(), detail::parse_range(it.value(), it.key()));
    }

    // Level names become $placeholders and SQL identifiers; they must be
    // unique across the whole vocabulary.
    std::vector<std::string> keys;
    for (const auto& a : vocab.attributes)
        for (const auto& n : a.names) {
            std::string k = placeholder_key(n);
            for (const auto& seen : keys)
                if (seen == k) throw ConfigError("duplicate attribute level name: " + n);
            keys.push_back(std::move(k));
        }
    return vocab;
}

// spec is either a shortcut name or an [m, M] pair.
inline NumericRange resolve_numeric_spec(const DomainVocabulary& vocab, const json& spec) {
    if (spec.is_string()) {
        const NumericRange* r = vocab.find_shortcut(spec.get<std::string>());
        if (!r) throw ConfigError("unknown numeric shortcut: " + spec.get<std::string>());
        return *r;
    }
    return detail::parse_range(spec, "numeric spec");
}

namespace detail {

inline json value_tree_to_json(const std::vector<ValueNode>& nodes) {
    if (nodes.empty() || nodes.front().children.empty()) {
        json arr = json::array();
        for (const auto& n : nodes) arr.push_back(n.value);
        return arr;
    }
    json obj = json::object();
    for (const auto& n : nodes) obj[n.value] = value_tree_to_json(n.children);
    return obj;
}

}  // namespace detail

inline json serialize_vocabulary(const DomainVocabulary& vocab) {
    json doc;
    doc["data"] = json::array();
    for (const auto& a : vocab.attributes) {
        json entry;
        entry["code"] = a.code;
        entry["names"] = a.names;
        entry["values"] = detail::value_tree_to_json(a.values);
        doc["data"].push_back(entry);
    }
    json shortcuts = json::object();
    for (const auto& [k, r] : vocab.numeric_shortcuts) {
        if (r.integer_mode)
            shortcuts[k] = {static_cast<long long>(r.min), static_cast<long long>(r.max)};
        else
            shortcuts[k] = {r.min, r.max};
    }
    doc["values"] = shortcuts;
    return doc;
}

}  // namespace hctgen

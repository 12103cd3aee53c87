#pragma once

#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "query.hpp"

namespace hctgen {

// --------------------------------------------------------------------------
// Template mini-language
//
//   of_ $Import_Export        word linked to an attribute
//   of__ $Item__ $Category    word linked to a chain of attributes
//   in__ $Quarter==of==$Year  separator word needs both neighbours present
//   ((students))              word emitted once unless present elsewhere
//   is/are amount/amounts     singular/plural (or direction) alternatives
//   $EXPR $GROUPBY $TOPK $ORDERBYDESC $OPPATTR $OPANDVAL $REPORTATTR
// --------------------------------------------------------------------------

struct NlPiece {
    enum class Kind { word, attr, reserved, cond_sep, guard };
    Kind kind = Kind::word;
    std::string text;  // word text / placeholder key / reserved name / guard word
    std::string alt;   // second alternative of a word ("are" in "is/are")
};

struct NlToken {
    std::vector<NlPiece> pieces;
    bool links_forward = false;  // token ended with '_' or '__'
};

struct TemplateAst {
    std::string source;
    std::vector<NlToken> tokens;
};

inline const std::array<std::string, 7>& reserved_names() {
    static const std::array<std::string, 7> names = {
        "ORDERBYDESC", "REPORTATTR", "OPANDVAL", "GROUPBY", "OPPATTR", "TOPK", "EXPR"};
    return names;
}

class NlParseError : public std::runtime_error {
public:
    explicit NlParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Word characters: anything except separators and template markup.
inline bool word_char(char c) {
    return c != '_' && c != '$' && c != '=' && c != '(' && c != '/' &&
           !std::isspace(static_cast<unsigned char>(c));
}

inline NlToken parse_token(std::string raw, const std::string& tmpl) {
    NlToken token;
    while (!raw.empty() && raw.back() == '_') {
        raw.pop_back();
        token.links_forward = true;
    }
    std::size_t i = 0;
    auto err = [&](const std::string& msg) { throw NlParseError(msg + " in template: " + tmpl); };
    while (i < raw.size()) {
        if (raw[i] == '_') {  // separator between linked pieces
            ++i;
            continue;
        }
        if (raw[i] == '$') {
            ++i;
            NlPiece piece;
            bool matched = false;
            for (const auto& r : reserved_names()) {
                if (raw.compare(i, r.size(), r) == 0 &&
                    (i + r.size() == raw.size() || !name_char(raw[i + r.size()]))) {
                    piece.kind = NlPiece::Kind::reserved;
                    piece.text = r;
                    i += r.size();
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                // attribute key: alnum segments joined by single underscores
                std::size_t start = i;
                while (i < raw.size() && name_char(raw[i])) ++i;
                while (i + 1 < raw.size() && raw[i] == '_' && name_char(raw[i + 1])) {
                    ++i;
                    while (i < raw.size() && name_char(raw[i])) ++i;
                }
                if (i == start) err("stray '$'");
                piece.kind = NlPiece::Kind::attr;
                piece.text = raw.substr(start, i - start);
                bool all_caps = true;
                for (char c : piece.text)
                    if (!std::isupper(static_cast<unsigned char>(c))) all_caps = false;
                if (all_caps) err("unknown reserved variable $" + piece.text);
            }
            token.pieces.push_back(std::move(piece));
            continue;
        }
        if (raw.compare(i, 2, "((") == 0) {
            std::size_t end = raw.find("))", i + 2);
            if (end == std::string::npos) err("unbalanced '((' guard");
            token.pieces.push_back({NlPiece::Kind::guard, raw.substr(i + 2, end - i - 2), ""});
            i = end + 2;
            continue;
        }
        if (raw.compare(i, 2, "==") == 0) {
            std::size_t end = raw.find("==", i + 2);
            if (end == std::string::npos) err("unterminated '==' separator");
            token.pieces.push_back({NlPiece::Kind::cond_sep, raw.substr(i + 2, end - i - 2), ""});
            i = end + 2;
            continue;
        }
        // plain word, possibly with a '/' alternative
        std::size_t start = i;
        while (i < raw.size() && word_char(raw[i])) ++i;
        if (i == start) err("unexpected character '" + std::string(1, raw[start]) + "'");
        NlPiece piece{NlPiece::Kind::word, raw.substr(start, i - start), ""};
        if (i < raw.size() && raw[i] == '/') {
            ++i;
            std::size_t alt_start = i;
            while (i < raw.size() && word_char(raw[i])) ++i;
            piece.alt = raw.substr(alt_start, i - alt_start);
        }
        token.pieces.push_back(std::move(piece));
    }
    return token;
}

}  // namespace detail

inline TemplateAst parse_nl_template(const std::string& text, bool question = true) {
    TemplateAst ast;
    ast.source = text;
    std::vector<std::string> raws;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) raws.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) raws.push_back(cur);
    if (raws.empty()) throw NlParseError("empty template");
    if (raws.front()[0] == '$') throw NlParseError("template must not start with '$': " + text);
    if (question && raws.back() != "?")
        throw NlParseError("a space-separated '?' must terminate the template: " + text);
    for (const auto& r : raws) ast.tokens.push_back(detail::parse_token(r, text));
    return ast;
}

// --------------------------------------------------------------------------
// Template set (one per domain)
// --------------------------------------------------------------------------

struct NlTemplateSet {
    std::string table_name;
    std::vector<std::string> row_col_codes;
    std::string value_meaning;
    std::vector<std::vector<std::string>> simplify_nested;
    TemplateAst report;
    std::map<int, std::vector<TemplateAst>> templates;  // ids 1..14
};

inline NlTemplateSet parse_nl_template_set(const json& doc, const DomainVocabulary& vocab) {
    NlTemplateSet set;
    set.table_name = doc.at("tableName").get<std::string>();
    for (const auto& c : doc.at("rowColCodes")) set.row_col_codes.push_back(c.get<std::string>());
    set.value_meaning = doc.at("valueMeaning").get<std::string>();
    if (doc.contains("simplifyNested"))
        for (const auto& group : doc["simplifyNested"]) {
            std::vector<std::string> names;
            for (const auto& n : group) names.push_back(n.get<std::string>());
            set.simplify_nested.push_back(std::move(names));
        }
    set.report = parse_nl_template(doc.at("template_report").get<std::string>(), false);
    for (int id = 1; id <= 14; ++id) {
        std::string key = "template_" + std::to_string(id);
        if (!doc.contains(key)) throw ConfigError("missing " + key + " in NL template set");
        for (const auto& t : doc[key])
            set.templates[id].push_back(parse_nl_template(t.get<std::string>()));
    }
    // every attribute placeholder must name a vocabulary level
    for (const auto& [id, asts] : set.templates)
        for (const auto& ast : asts)
            for (const auto& tok : ast.tokens)
                for (const auto& p : tok.pieces)
                    if (p.kind == NlPiece::Kind::attr && !vocab.find_level(p.text))
                        throw ConfigError("placeholder $" + p.text +
                                          " does not name a vocabulary attribute level");
    return set;
}

// --------------------------------------------------------------------------
// Instantiation
// --------------------------------------------------------------------------

namespace detail {

inline std::string join_list(const std::vector<std::string>& xs, const std::string& conj) {
    if (xs.empty()) return "";
    if (xs.size() == 1) return xs[0];
    if (xs.size() == 2) return xs[0] + " " + conj + " " + xs[1];
    std::string out;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) out += xs[i] + ", ";
    out += conj + " " + xs.back();
    return out;
}

inline std::string agg_nl_name(AggFun f) {
    switch (f) {
        case AggFun::sum: return "total";
        case AggFun::avg: return "average";
        case AggFun::min: return "minimum";
        case AggFun::max: return "maximum";
        case AggFun::count: return "count";
    }
    return "total";
}

struct AttrBinding {
    bool on_rows = false;
    std::size_t comp = 0;
    std::size_t level = 0;  // 0-based within the component
};

// placeholder key -> component/level of the template's axes
inline std::map<std::string, AttrBinding> bind_placeholders(const IndividualTableTemplate& tpl,
                                                            const DomainVocabulary& vocab) {
    std::map<std::string, AttrBinding> out;
    auto bind_axis = [&](const std::vector<AxisComponent>& comps, bool on_rows) {
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
            const AttributeSpec& attr = vocab.require(comps[ci].code);
            for (int li = 0; li < comps[ci].level_count; ++li)
                out[placeholder_key(attr.names[static_cast<std::size_t>(li)])] =
                    AttrBinding{on_rows, ci, static_cast<std::size_t>(li)};
        }
    };
    bind_axis(tpl.row_components, true);
    bind_axis(tpl.col_components, false);
    return out;
}

struct NlContext {
    const QueryInstance* q = nullptr;
    const std::map<std::string, AttrBinding>* bindings = nullptr;
    bool plural = false;
    bool descending = false;
    std::vector<std::string> expr_names;
    std::vector<std::string> group_names;
    std::vector<std::string> report_names;
};

// Values an attribute placeholder displays under one column block; nullopt
// when the attribute is absent from the question.
inline std::optional<std::string> expand_attr(const NlContext& ctx, const std::string& key,
                                              const AxisCondition& block) {
    auto it = ctx.bindings->find(key);
    if (it == ctx.bindings->end()) return std::nullopt;
    const AttrBinding& b = it->second;
    const ComponentCondition& cond =
        b.on_rows ? ctx.q->rows.comps[b.comp] : block.comps[b.comp];
    if (!cond.constrained() || cond.level() != b.level + 1) return std::nullopt;
    std::vector<std::string> values;
    for (const auto& path : cond.paths) values.push_back(path.back());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return join_list(values, "or");
}

inline std::string expand_reserved(const NlContext& ctx, const std::string& name) {
    if (name == "EXPR") return join_list(ctx.expr_names, "and");
    if (name == "GROUPBY") return "for each " + join_list(ctx.group_names, "and") + ",";
    if (name == "TOPK") return std::to_string(ctx.q->limit_k.value_or(0));
    if (name == "ORDERBYDESC") return "ordered by";
    if (name == "OPPATTR") return join_list(ctx.report_names, "and");
    if (name == "OPANDVAL")
        return (ctx.q->compare_op == '>' ? "greater than " : "lower than ") +
               format_number(ctx.q->threshold);
    if (name == "REPORTATTR") return join_list(ctx.report_names, "and");
    throw NlParseError("unknown reserved variable $" + name);
}

struct Segment {
    std::vector<std::string> words;
    std::string guard;  // non-empty: emit only if guard word absent elsewhere
};

// A group is a run of tokens glued by trailing '_'/'__' links. Its words are
// emitted only if at least one of its attribute placeholders produced text.
inline std::optional<Segment> emit_group(const std::vector<const NlToken*>& group,
                                         const NlContext& ctx, const AxisCondition& block) {
    std::vector<NlPiece> pieces;
    for (const NlToken* t : group)
        pieces.insert(pieces.end(), t->pieces.begin(), t->pieces.end());

    std::vector<std::optional<std::string>> attr_out(pieces.size());
    bool has_attr = false, any_emitted = false;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].kind != NlPiece::Kind::attr) continue;
        has_attr = true;
        attr_out[i] = expand_attr(ctx, pieces[i].text, block);
        if (attr_out[i]) any_emitted = true;
    }
    if (has_attr && !any_emitted) return std::nullopt;

    Segment seg;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const NlPiece& p = pieces[i];
        switch (p.kind) {
            case NlPiece::Kind::word: {
                std::string w = p.text;
                if (!p.alt.empty()) {
                    bool direction_form =
                        (i + 1 < pieces.size() && pieces[i + 1].kind == NlPiece::Kind::reserved &&
                         pieces[i + 1].text == "TOPK") ||
                        (i > 0 && pieces[i - 1].kind == NlPiece::Kind::reserved &&
                         pieces[i - 1].text == "ORDERBYDESC");
                    bool second = direction_form ? !ctx.descending : ctx.plural;
                    w = second ? p.alt : p.text;
                }
                seg.words.push_back(w);
                break;
            }
            case NlPiece::Kind::attr:
                if (attr_out[i]) seg.words.push_back(*attr_out[i]);
                break;
            case NlPiece::Kind::reserved:
                seg.words.push_back(expand_reserved(ctx, p.text));
                break;
            case NlPiece::Kind::cond_sep: {
                auto prev = [&]() -> const std::optional<std::string>* {
                    for (std::size_t k = i; k-- > 0;)
                        if (pieces[k].kind == NlPiece::Kind::attr) return &attr_out[k];
                    return nullptr;
                }();
                auto next = [&]() -> const std::optional<std::string>* {
                    for (std::size_t k = i + 1; k < pieces.size(); ++k)
                        if (pieces[k].kind == NlPiece::Kind::attr) return &attr_out[k];
                    return nullptr;
                }();
                if (prev && *prev && next && *next) seg.words.push_back(p.text);
                break;
            }
            case NlPiece::Kind::guard: seg.guard = p.text; break;
        }
    }
    return seg;
}

inline std::vector<std::vector<const NlToken*>> group_tokens(const TemplateAst& ast) {
    std::vector<std::vector<const NlToken*>> groups;
    std::vector<const NlToken*> cur;
    for (const auto& t : ast.tokens) {
        cur.push_back(&t);
        if (!t.links_forward) {
            groups.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) groups.push_back(cur);
    return groups;
}

inline bool group_has_attr(const std::vector<const NlToken*>& group) {
    for (const NlToken* t : group)
        for (const auto& p : t->pieces)
            if (p.kind == NlPiece::Kind::attr) return true;
    return false;
}

inline std::string assemble(const std::vector<Segment>& segments) {
    // resolve guards: a guarded segment is dropped when its word already
    // appears anywhere else in the sentence
    std::vector<std::string> words;
    std::vector<std::string> unguarded;
    for (const auto& s : segments)
        if (s.guard.empty())
            for (const auto& w : s.words) unguarded.push_back(w);
    auto contains_word = [](const std::vector<std::string>& ws, const std::string& w) {
        for (const auto& x : ws)
            if (x == w) return true;
        return false;
    };
    std::vector<std::string> emitted_guards;
    for (const auto& s : segments) {
        if (!s.guard.empty() &&
            (contains_word(unguarded, s.guard) || contains_word(emitted_guards, s.guard)))
            continue;
        for (const auto& w : s.words) words.push_back(w);
        if (!s.guard.empty()) {
            words.push_back(s.guard);
            emitted_guards.push_back(s.guard);
        }
    }

    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    // punctuation attaches to the preceding word
    for (const char* p : {" ?", " .", " ,", " ;"}) {
        std::string from = p;
        std::string to = from.substr(1);
        std::size_t pos;
        while ((pos = out.find(from)) != std::string::npos) out.replace(pos, from.size(), to);
    }
    while ((out.find("  ")) != std::string::npos) out.replace(out.find("  "), 2, " ");
    return out;
}

inline NlContext make_context(const QueryInstance& q,
                              const std::map<std::string, AttrBinding>& bindings) {
    NlContext ctx;
    ctx.q = &q;
    ctx.bindings = &bindings;
    for (AggFun f : q.aggs) ctx.expr_names.push_back(agg_nl_name(f));
    ctx.group_names = q.group_names;
    ctx.report_names = q.report_names;
    ctx.descending = q.order == SortDir::desc;
    if (!q.aggs.empty())
        ctx.plural = q.aggs.size() > 1;
    else if (q.template_id == 12)
        ctx.plural = q.limit_k.value_or(0) >= 2;
    else if (q.template_id == 13)
        ctx.plural = true;
    return ctx;
}

// Instantiates groups [first, last); the condition region is repeated once
// per column block, joined with "or".
inline std::vector<Segment> instantiate_groups(const TemplateAst& ast, const NlContext& ctx,
                                               std::size_t first_group) {
    auto groups = group_tokens(ast);
    std::size_t region_begin = groups.size(), region_end = first_group;
    for (std::size_t g = first_group; g < groups.size(); ++g)
        if (group_has_attr(groups[g])) {
            region_begin = std::min(region_begin, g);
            region_end = g + 1;
        }

    std::vector<Segment> segments;
    auto emit_range = [&](std::size_t from, std::size_t to, const AxisCondition& block) {
        for (std::size_t g = from; g < to; ++g)
            if (auto seg = emit_group(groups[g], ctx, block)) segments.push_back(std::move(*seg));
    };

    const auto& blocks = ctx.q->col_blocks;
    if (region_begin >= region_end || blocks.size() <= 1) {
        emit_range(first_group, groups.size(), blocks.empty() ? AxisCondition{} : blocks[0]);
        return segments;
    }
    emit_range(first_group, region_begin, blocks[0]);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b) segments.push_back(Segment{{"or"}, ""});
        emit_range(region_begin, region_end, blocks[b]);
    }
    emit_range(region_end, groups.size(), blocks[0]);
    return segments;
}

}  // namespace detail

// Instantiates one NL template against a query instance. Reporting templates
// (8, 10, 11) get the report sentence appended.
inline std::string instantiate_nl(const TemplateAst& ast, const QueryInstance& q,
                                  const NlTemplateSet& set, const IndividualTableTemplate& tpl,
                                  const DomainVocabulary& vocab) {
    auto bindings = detail::bind_placeholders(tpl, vocab);
    detail::NlContext ctx = detail::make_context(q, bindings);
    std::string question = detail::assemble(detail::instantiate_groups(ast, ctx, 0));
    if (q.report_group_keys && !q.report_names.empty()) {
        std::string report = detail::assemble(detail::instantiate_groups(set.report, ctx, 0));
        question += " " + report;
    }
    return question;
}

// Q15 is composed rather than authored: template-1 phrasing carries the
// outer column selection, template 14 supplies the "for which ..." clause,
// and the report sentence lists the row attributes plus the value meaning.
inline std::string compose_template15(const NlTemplateSet& set, const QueryInstance& q15,
                                      const IndividualTableTemplate& tpl,
                                      const DomainVocabulary& vocab) {
    if (!q15.inner) throw ConfigError("template-15 instance lacks its inner query");
    auto bindings = detail::bind_placeholders(tpl, vocab);

    // outer stub: template 1 with rows silent and the outer column tuple
    QueryInstance outer;
    outer.template_id = 1;
    outer.rows.comps.resize(tpl.row_components.size());
    outer.col_blocks = q15.col_blocks;
    detail::NlContext outer_ctx = detail::make_context(outer, bindings);
    std::string stub =
        detail::assemble(detail::instantiate_groups(set.templates.at(1).front(), outer_ctx, 0));
    while (!stub.empty() && (stub.back() == '?' || stub.back() == ' ')) stub.pop_back();

    std::string attr_phrase;
    for (std::size_t i = 0; i < q15.report_names.size(); ++i) {
        if (i) attr_phrase += " and ";
        attr_phrase += "of " + q15.report_names[i];
    }

    // template 14 after its $OPPATTR group carries the inner condition
    const TemplateAst& t14 = set.templates.at(14).front();
    auto groups = detail::group_tokens(t14);
    std::size_t start = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        bool has_oppattr = false;
        for (const NlToken* t : groups[g])
            for (const auto& p : t->pieces)
                if (p.kind == NlPiece::Kind::reserved && p.text == "OPPATTR") has_oppattr = true;
        if (has_oppattr) {
            start = g + 1;
            break;
        }
    }
    detail::NlContext inner_ctx = detail::make_context(*q15.inner, bindings);
    std::string tail = detail::assemble(detail::instantiate_groups(t14, inner_ctx, start));

    std::string question = stub + " " + attr_phrase + " " + tail;

    detail::NlContext report_ctx = detail::make_context(q15, bindings);
    report_ctx.report_names.push_back(set.value_meaning);
    std::string report = detail::assemble(detail::instantiate_groups(set.report, report_ctx, 0));
    return question + " " + report;
}

}  // namespace hctgen

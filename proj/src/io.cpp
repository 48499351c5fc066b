#include "groupoidal/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace groupoidal {

namespace {

const std::set<std::string> known_kinds{"groupoid", "state", "free-product-spec", "event", "family"};

const ordered_json& require(const ordered_json& object, const char* key, const std::string& ctx) {
    const auto it = object.find(key);
    if (it == object.end()) throw IoError(ctx + ": missing field '" + key + "'");
    return *it;
}

int require_int(const ordered_json& value, const std::string& ctx) {
    if (!value.is_number_integer()) throw IoError(ctx + ": expected an integer");
    return value.get<int>();
}

double require_number(const ordered_json& value, const std::string& ctx) {
    if (!value.is_number()) throw IoError(ctx + ": expected a number");
    return value.get<double>();
}

std::string require_string(const ordered_json& value, const std::string& ctx) {
    if (!value.is_string()) throw IoError(ctx + ": expected a string");
    return value.get<std::string>();
}

const ordered_json& require_array(const ordered_json& value, const std::string& ctx) {
    if (!value.is_array()) throw IoError(ctx + ": expected an array");
    return value;
}

// An id-or-label reference into a declared id set.
int resolve_ref(const ordered_json& value, const std::unordered_map<std::string, int>& by_label,
                const std::set<int>& declared, const std::string& ctx) {
    if (value.is_number_integer()) {
        const int id = value.get<int>();
        if (!declared.count(id)) throw IoError(ctx + ": undeclared id " + std::to_string(id));
        return id;
    }
    if (value.is_string()) {
        const std::string label = value.get<std::string>();
        const auto it = by_label.find(label);
        if (it == by_label.end()) throw IoError(ctx + ": undeclared label '" + label + "'");
        return it->second;
    }
    throw IoError(ctx + ": expected an id or a label");
}

ordered_json complex_to_json(cplx value) { return ordered_json{{"re", value.real()}, {"im", value.imag()}}; }

}  // namespace

Document parse_document(const std::string& text, const std::string& origin) {
    ordered_json body;
    try {
        body = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(origin + ": " + e.what());
    }
    if (!body.is_object()) throw IoError(origin + ": document must be a JSON object");
    const int schema = require_int(require(body, "schema", origin), origin + ": schema");
    if (schema != 1) throw IoError(origin + ": unsupported schema version " + std::to_string(schema));
    const std::string kind = require_string(require(body, "kind", origin), origin + ": kind");
    if (!known_kinds.count(kind)) throw IoError(origin + ": unknown kind '" + kind + "'");
    return Document{kind, std::move(body)};
}

Document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str(), path);
}

std::string document_text(const Document& doc) { return doc.body.dump(2) + "\n"; }

void save_document(const Document& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << document_text(doc);
}

ordered_json groupoid_to_json(const Groupoid& g) {
    ordered_json body;
    body["schema"] = 1;
    body["kind"] = "groupoid";
    body["name"] = g.name();
    ordered_json outcomes = ordered_json::array();
    for (const Outcome& o : g.outcomes()) outcomes.push_back({{"id", o.id}, {"label", o.label}});
    body["outcomes"] = std::move(outcomes);
    ordered_json transitions = ordered_json::array();
    for (const Transition& t : g.transitions()) {
        ordered_json entry{{"id", t.id}, {"label", t.label}, {"source", t.source}, {"target", t.target}};
        if (const std::optional<int> inv = g.inverse(t.id)) entry["inverse"] = *inv;
        transitions.push_back(std::move(entry));
    }
    body["transitions"] = std::move(transitions);
    std::vector<std::pair<std::pair<int, int>, int>> entries;
    for (const auto& [key, c] : g.compose_table()) {
        const int a = static_cast<int>(static_cast<std::uint32_t>(key >> 32));
        const int b = static_cast<int>(static_cast<std::uint32_t>(key & 0xffffffffu));
        entries.push_back({{a, b}, c});
    }
    std::sort(entries.begin(), entries.end());
    ordered_json compose = ordered_json::array();
    for (const auto& [pair, c] : entries) compose.push_back({pair.first, pair.second, c});
    body["compose"] = std::move(compose);
    return body;
}

Groupoid groupoid_from_json(const ordered_json& body) {
    const std::string name = body.value("name", "");
    const std::string ctx = "groupoid '" + name + "'";
    if (body.contains("pairs_of")) {
        const int n = require_int(body["pairs_of"], ctx + ": pairs_of");
        const Groupoid pairs = pair_groupoid(n);
        return name.empty() ? pairs : relabel(pairs, {}, {}, name);
    }

    std::vector<Outcome> outcomes;
    std::unordered_map<std::string, int> outcome_by_label;
    std::set<int> outcome_ids;
    for (const ordered_json& entry : require_array(require(body, "outcomes", ctx), ctx + ": outcomes")) {
        const int id = require_int(require(entry, "id", ctx + ": outcome"), ctx + ": outcome id");
        const std::string label =
            require_string(require(entry, "label", ctx + ": outcome"), ctx + ": outcome label");
        outcomes.push_back({id, label});
        outcome_by_label[label] = id;
        outcome_ids.insert(id);
    }

    std::vector<Transition> transitions;
    std::unordered_map<std::string, int> transition_by_label;
    std::set<int> transition_ids;
    std::vector<std::pair<int, ordered_json>> inverse_refs;
    for (const ordered_json& entry :
         require_array(require(body, "transitions", ctx), ctx + ": transitions")) {
        const int id = require_int(require(entry, "id", ctx + ": transition"), ctx + ": transition id");
        const std::string label =
            require_string(require(entry, "label", ctx + ": transition"), ctx + ": transition label");
        const std::string tctx = ctx + ": transition '" + label + "'";
        const int source = resolve_ref(require(entry, "source", tctx), outcome_by_label, outcome_ids,
                                       tctx + ": source");
        const int target = resolve_ref(require(entry, "target", tctx), outcome_by_label, outcome_ids,
                                       tctx + ": target");
        transitions.push_back({id, label, source, target});
        transition_by_label[label] = id;
        transition_ids.insert(id);
        if (entry.contains("inverse")) inverse_refs.push_back({id, entry["inverse"]});
    }

    std::unordered_map<int, int> inverse_of;
    for (const auto& [id, ref] : inverse_refs)
        inverse_of[id] = resolve_ref(ref, transition_by_label, transition_ids,
                                     ctx + ": inverse of transition " + std::to_string(id));

    std::unordered_map<std::uint64_t, int> compose;
    if (body.contains("compose")) {
        for (const ordered_json& triple : require_array(body["compose"], ctx + ": compose")) {
            if (!triple.is_array() || triple.size() != 3)
                throw IoError(ctx + ": compose entries must be [left, right, result] triples");
            int ids[3];
            for (int k = 0; k < 3; ++k)
                ids[k] = resolve_ref(triple[static_cast<std::size_t>(k)], transition_by_label,
                                     transition_ids, ctx + ": compose entry");
            compose[Groupoid::compose_key(ids[0], ids[1])] = ids[2];
        }
    }

    // Units are the idempotent loops of the compose table.
    std::unordered_map<int, int> unit_of;
    for (const Transition& t : transitions) {
        if (t.source != t.target || unit_of.count(t.source)) continue;
        const auto it = compose.find(Groupoid::compose_key(t.id, t.id));
        if (it != compose.end() && it->second == t.id) unit_of[t.source] = t.id;
    }

    try {
        return Groupoid::from_parts(name, std::move(outcomes), std::move(transitions), std::move(unit_of),
                                    std::move(inverse_of), std::move(compose));
    } catch (const std::invalid_argument& e) {
        throw IoError(ctx + ": " + e.what());
    }
}

ordered_json state_to_json(const State& rho) {
    ordered_json body;
    body["schema"] = 1;
    body["kind"] = "state";
    body["groupoid"] = rho.parent().name();
    ordered_json phi = ordered_json::array();
    for (int tid : rho.support()) {
        const cplx value = rho.value(tid);
        phi.push_back({{"transition", tid}, {"re", value.real()}, {"im", value.imag()}});
    }
    body["phi"] = std::move(phi);
    return body;
}

namespace {

void check_groupoid_reference(const ordered_json& body, const Groupoid& parent, const std::string& ctx) {
    const std::string referenced = require_string(require(body, "groupoid", ctx), ctx + ": groupoid");
    if (referenced != parent.name())
        throw IoError(ctx + ": references groupoid '" + referenced + "' but '" + parent.name() +
                      "' was provided");
}

std::unordered_map<std::string, int> transition_labels_of(const Groupoid& g) {
    std::unordered_map<std::string, int> by_label;
    for (const Transition& t : g.transitions()) by_label[t.label] = t.id;
    return by_label;
}

std::set<int> transition_ids_of(const Groupoid& g) {
    std::set<int> ids;
    for (const Transition& t : g.transitions()) ids.insert(t.id);
    return ids;
}

}  // namespace

State state_from_json(const ordered_json& body, const Groupoid& parent) {
    const std::string ctx = "state";
    check_groupoid_reference(body, parent, ctx);
    const std::unordered_map<std::string, int> by_label = transition_labels_of(parent);
    const std::set<int> ids = transition_ids_of(parent);
    std::unordered_map<int, cplx> values;
    for (const ordered_json& entry : require_array(require(body, "phi", ctx), ctx + ": phi")) {
        const int tid =
            resolve_ref(require(entry, "transition", ctx + ": phi entry"), by_label, ids, ctx + ": phi entry");
        if (values.count(tid))
            throw IoError(ctx + ": duplicate amplitude for transition " + std::to_string(tid));
        const double re = require_number(require(entry, "re", ctx + ": phi entry"), ctx + ": re");
        const double im = require_number(require(entry, "im", ctx + ": phi entry"), ctx + ": im");
        values[tid] = cplx(re, im);
    }
    return State::from_values(parent, std::move(values));
}

ordered_json event_to_json(const Event& event) {
    ordered_json body;
    body["schema"] = 1;
    body["kind"] = "event";
    body["groupoid"] = event.parent->name();
    ordered_json transitions = ordered_json::array();
    for (int tid : event.transitions) transitions.push_back(event.parent->transition(tid).label);
    body["transitions"] = std::move(transitions);
    return body;
}

Event event_from_json(const ordered_json& body, const Groupoid& parent) {
    const std::string ctx = "event";
    check_groupoid_reference(body, parent, ctx);
    const std::unordered_map<std::string, int> by_label = transition_labels_of(parent);
    const std::set<int> ids = transition_ids_of(parent);
    std::vector<int> picked;
    for (const ordered_json& entry : require_array(require(body, "transitions", ctx), ctx + ": transitions"))
        picked.push_back(resolve_ref(entry, by_label, ids, ctx + ": transition"));
    return make_event(parent, picked);
}

ordered_json spec_to_json(const FreeProductSpec& spec) {
    ordered_json body;
    body["schema"] = 1;
    body["kind"] = "free-product-spec";
    body["name"] = spec.name;
    ordered_json outcomes = ordered_json::array();
    for (const Outcome& o : spec.outcomes) outcomes.push_back({{"id", o.id}, {"label", o.label}});
    body["outcomes"] = std::move(outcomes);
    ordered_json factors = ordered_json::array();
    for (const Groupoid& factor : spec.factors) factors.push_back(groupoid_to_json(factor));
    body["factors"] = std::move(factors);
    ordered_json maps = ordered_json::array();
    for (const auto& outcome_map : spec.outcome_maps) {
        std::vector<std::pair<int, int>> entries(outcome_map.begin(), outcome_map.end());
        std::sort(entries.begin(), entries.end());
        ordered_json one = ordered_json::array();
        for (const auto& [factor_outcome, ambient] : entries)
            one.push_back({{"factor", factor_outcome}, {"ambient", ambient}});
        maps.push_back(std::move(one));
    }
    body["outcome_maps"] = std::move(maps);
    return body;
}

FreeProductSpec spec_from_json(const ordered_json& body) {
    const std::string name = body.value("name", "");
    const std::string ctx = "free-product-spec '" + name + "'";
    std::vector<Outcome> outcomes;
    std::unordered_map<std::string, int> ambient_by_label;
    std::set<int> ambient_ids;
    for (const ordered_json& entry : require_array(require(body, "outcomes", ctx), ctx + ": outcomes")) {
        const int id = require_int(require(entry, "id", ctx + ": outcome"), ctx + ": outcome id");
        const std::string label =
            require_string(require(entry, "label", ctx + ": outcome"), ctx + ": outcome label");
        outcomes.push_back({id, label});
        ambient_by_label[label] = id;
        ambient_ids.insert(id);
    }
    std::vector<Groupoid> factors;
    for (const ordered_json& factor : require_array(require(body, "factors", ctx), ctx + ": factors"))
        factors.push_back(groupoid_from_json(factor));
    std::vector<std::unordered_map<int, int>> outcome_maps;
    const ordered_json& maps = require_array(require(body, "outcome_maps", ctx), ctx + ": outcome_maps");
    if (maps.size() != factors.size())
        throw IoError(ctx + ": outcome_maps must have one entry per factor");
    for (std::size_t f = 0; f < factors.size(); ++f) {
        std::unordered_map<std::string, int> factor_by_label;
        std::set<int> factor_ids;
        for (const Outcome& o : factors[f].outcomes()) {
            factor_by_label[o.label] = o.id;
            factor_ids.insert(o.id);
        }
        std::unordered_map<int, int> one;
        const std::string mctx = ctx + ": outcome map " + std::to_string(f);
        for (const ordered_json& entry : require_array(maps[f], mctx)) {
            const int factor_outcome =
                resolve_ref(require(entry, "factor", mctx), factor_by_label, factor_ids, mctx + ": factor");
            const int ambient =
                resolve_ref(require(entry, "ambient", mctx), ambient_by_label, ambient_ids, mctx + ": ambient");
            one[factor_outcome] = ambient;
        }
        outcome_maps.push_back(std::move(one));
    }
    try {
        return make_free_product_spec(name, std::move(outcomes), std::move(factors), std::move(outcome_maps));
    } catch (const std::invalid_argument& e) {
        throw IoError(ctx + ": " + e.what());
    }
}

ordered_json family_to_json(const FamilySpec& family) {
    ordered_json body;
    body["schema"] = 1;
    body["kind"] = "family";
    body["name"] = family.name;
    body["groupoid"] = family.groupoid_name;
    ordered_json members = ordered_json::array();
    for (const FamilySpec::MemberSpec& member : family.members) {
        ordered_json labels = ordered_json::array();
        for (const std::string& label : member.transition_labels) labels.push_back(label);
        members.push_back({{"name", member.name}, {"transitions", std::move(labels)}});
    }
    body["members"] = std::move(members);
    return body;
}

FamilySpec family_from_json(const ordered_json& body) {
    const std::string ctx = "family";
    FamilySpec family;
    family.name = body.value("name", "");
    family.groupoid_name = require_string(require(body, "groupoid", ctx), ctx + ": groupoid");
    for (const ordered_json& entry : require_array(require(body, "members", ctx), ctx + ": members")) {
        FamilySpec::MemberSpec member;
        member.name = require_string(require(entry, "name", ctx + ": member"), ctx + ": member name");
        for (const ordered_json& label :
             require_array(require(entry, "transitions", ctx + ": member"), ctx + ": member transitions"))
            member.transition_labels.push_back(require_string(label, ctx + ": member transition"));
        family.members.push_back(std::move(member));
    }
    return family;
}

std::vector<Member> family_members(const FamilySpec& family, const Groupoid& parent) {
    if (!family.groupoid_name.empty() && family.groupoid_name != parent.name())
        throw IoError("family: references groupoid '" + family.groupoid_name + "' but '" + parent.name() +
                      "' was provided");
    std::vector<Member> members;
    for (const FamilySpec::MemberSpec& spec : family.members) {
        std::vector<int> ids;
        for (const std::string& label : spec.transition_labels) {
            const std::optional<int> tid = parent.transition_id_of_label(label);
            if (!tid)
                throw IoError("family: member '" + spec.name + "': undeclared label '" + label + "'");
            ids.push_back(*tid);
        }
        try {
            const Groupoid sub = transition_subgroupoid(parent, ids, spec.name);
            members.push_back(member_from_subgroupoid(parent, sub, spec.name));
        } catch (const std::invalid_argument& e) {
            throw IoError("family: member '" + spec.name + "': " + e.what());
        }
    }
    return members;
}

ordered_json report_to_json(const ExampleReport& report) {
    ordered_json body;
    body["schema"] = 1;
    body["kind"] = "example-report";
    body["title"] = report.title;
    body["all_pass"] = report.all_pass;
    ordered_json rows = ordered_json::array();
    for (const ReportRow& row : report.rows)
        rows.push_back({{"name", row.name},
                        {"computed", row.computed},
                        {"reference", row.reference},
                        {"tolerance", row.tolerance},
                        {"pass", row.pass}});
    body["rows"] = std::move(rows);
    return body;
}

ordered_json independence_report_to_json(const IndependenceReport& report, const Groupoid& parent,
                                         const std::vector<Member>& members) {
    ordered_json body;
    body["schema"] = 1;
    body["kind"] = "independence-report";
    switch (report.kind) {
        case IndependenceKind::usual: body["notion"] = "usual"; break;
        case IndependenceKind::generalized: body["notion"] = "generalized"; break;
        case IndependenceKind::free_product: body["notion"] = "free"; break;
    }
    body["holds"] = report.holds;
    body["max_violation"] = report.max_violation;
    body["trials_run"] = report.trials_run;
    if (report.witness) {
        const Witness& witness = *report.witness;
        ordered_json w;
        ordered_json names = ordered_json::array();
        for (std::size_t index : witness.members) names.push_back(members.at(index).name);
        w["members"] = std::move(names);
        ordered_json elements = ordered_json::array();
        for (const AlgebraElement& element : witness.elements) {
            ordered_json terms = ordered_json::array();
            for (int tid : element.support()) {
                const cplx coefficient = element.coefficient(tid);
                terms.push_back({{"transition", parent.transition(tid).label},
                                 {"re", coefficient.real()},
                                 {"im", coefficient.imag()}});
            }
            elements.push_back(std::move(terms));
        }
        w["elements"] = std::move(elements);
        w["direct"] = complex_to_json(witness.direct);
        w["expected"] = complex_to_json(witness.expected);
        w["violation"] = witness.violation;
        body["witness"] = std::move(w);
    } else {
        body["witness"] = nullptr;
    }
    return body;
}

}  // namespace groupoidal

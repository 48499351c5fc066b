#include "groupoidal/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace groupoidal {

namespace {

std::string describe(const Groupoid& g, int tid) {
    if (!g.has_transition(tid)) return "#" + std::to_string(tid);
    const Transition& t = g.transition(tid);
    return t.label.empty() ? "#" + std::to_string(tid) : t.label;
}

}  // namespace

Groupoid Groupoid::from_parts(std::string name,
                              std::vector<Outcome> outcomes,
                              std::vector<Transition> transitions,
                              std::unordered_map<int, int> unit_of,
                              std::unordered_map<int, int> inverse_of,
                              std::unordered_map<std::uint64_t, int> compose) {
    Groupoid g;
    g.name_ = std::move(name);
    g.outcomes_ = std::move(outcomes);
    g.transitions_ = std::move(transitions);
    g.unit_of_ = std::move(unit_of);
    g.inverse_of_ = std::move(inverse_of);
    g.compose_ = std::move(compose);

    for (std::size_t i = 0; i < g.outcomes_.size(); ++i) {
        if (g.outcomes_[i].id < 0)
            throw std::invalid_argument("outcome ids must be non-negative");
        if (!g.outcome_index_.emplace(g.outcomes_[i].id, i).second)
            throw std::invalid_argument("duplicate outcome id " + std::to_string(g.outcomes_[i].id));
    }
    for (std::size_t i = 0; i < g.transitions_.size(); ++i) {
        const Transition& t = g.transitions_[i];
        if (t.id < 0) throw std::invalid_argument("transition ids must be non-negative");
        if (!g.transition_index_.emplace(t.id, i).second)
            throw std::invalid_argument("duplicate transition id " + std::to_string(t.id));
        if (!g.outcome_index_.count(t.source))
            throw std::invalid_argument("transition " + std::to_string(t.id) + " has undeclared source " +
                                        std::to_string(t.source));
        if (!g.outcome_index_.count(t.target))
            throw std::invalid_argument("transition " + std::to_string(t.id) + " has undeclared target " +
                                        std::to_string(t.target));
    }
    for (const auto& [x, u] : g.unit_of_) {
        if (!g.outcome_index_.count(x) || !g.transition_index_.count(u))
            throw std::invalid_argument("unit table references undeclared id");
    }
    for (const auto& [t, inv] : g.inverse_of_) {
        if (!g.transition_index_.count(t) || !g.transition_index_.count(inv))
            throw std::invalid_argument("inverse table references undeclared id");
    }
    for (const auto& [key, c] : g.compose_) {
        const int a = static_cast<int>(static_cast<std::uint32_t>(key >> 32));
        const int b = static_cast<int>(static_cast<std::uint32_t>(key & 0xffffffffu));
        if (!g.transition_index_.count(a) || !g.transition_index_.count(b) || !g.transition_index_.count(c))
            throw std::invalid_argument("compose table references undeclared id");
    }
    return g;
}

const Outcome& Groupoid::outcome(int id) const {
    auto it = outcome_index_.find(id);
    if (it == outcome_index_.end()) throw std::out_of_range("no outcome with id " + std::to_string(id));
    return outcomes_[it->second];
}

const Transition& Groupoid::transition(int id) const {
    auto it = transition_index_.find(id);
    if (it == transition_index_.end()) throw std::out_of_range("no transition with id " + std::to_string(id));
    return transitions_[it->second];
}

std::optional<int> Groupoid::unit_at(int outcome_id) const {
    auto it = unit_of_.find(outcome_id);
    if (it == unit_of_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Groupoid::inverse(int transition_id) const {
    auto it = inverse_of_.find(transition_id);
    if (it == inverse_of_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Groupoid::compose(int a, int b) const {
    auto it = compose_.find(compose_key(a, b));
    if (it == compose_.end()) return std::nullopt;
    return it->second;
}

bool Groupoid::composable(int a, int b) const { return source(a) == target(b); }

std::optional<int> Groupoid::outcome_id_of_label(const std::string& label) const {
    for (const Outcome& o : outcomes_)
        if (o.label == label) return o.id;
    return std::nullopt;
}

std::optional<int> Groupoid::transition_id_of_label(const std::string& label) const {
    for (const Transition& t : transitions_)
        if (t.label == label) return t.id;
    return std::nullopt;
}

bool Groupoid::operator==(const Groupoid& other) const {
    return outcomes_ == other.outcomes_ && transitions_ == other.transitions_ && unit_of_ == other.unit_of_ &&
           inverse_of_ == other.inverse_of_ && compose_ == other.compose_;
}

std::vector<Violation> validate(const Groupoid& g) {
    std::vector<Violation> out;
    auto report = [&](const std::string& axiom, const std::string& details) {
        out.push_back({axiom, details});
    };

    for (const Outcome& x : g.outcomes()) {
        auto u = g.unit_at(x.id);
        if (!u) {
            report("unit-totality", "outcome " + x.label + " has no unit");
            continue;
        }
        const Transition& ut = g.transition(*u);
        if (ut.source != x.id || ut.target != x.id)
            report("unit-shape", "unit at " + x.label + " is not a loop there");
    }

    for (const Transition& t : g.transitions()) {
        auto inv = g.inverse(t.id);
        if (!inv) {
            report("inverse-totality", describe(g, t.id) + " has no inverse");
            continue;
        }
        const Transition& it = g.transition(*inv);
        if (it.source != t.target || it.target != t.source)
            report("inverse-shape", describe(g, t.id) + " has an inverse with wrong endpoints");
        auto invinv = g.inverse(*inv);
        if (!invinv || *invinv != t.id)
            report("inverse-involution", describe(g, t.id) + " is not the inverse of its inverse");
    }

    for (const Transition& a : g.transitions()) {
        for (const Transition& b : g.transitions()) {
            auto c = g.compose(a.id, b.id);
            if (a.source == b.target) {
                if (!c) {
                    report("composition-totality",
                           describe(g, a.id) + " ∘ " + describe(g, b.id) + " is missing");
                    continue;
                }
                const Transition& ct = g.transition(*c);
                if (ct.source != b.source || ct.target != a.target)
                    report("composition-endpoints",
                           describe(g, a.id) + " ∘ " + describe(g, b.id) + " has wrong endpoints");
            } else if (c) {
                report("composition-domain",
                       describe(g, a.id) + " ∘ " + describe(g, b.id) + " is defined but endpoints mismatch");
            }
        }
    }

    for (const Transition& t : g.transitions()) {
        auto us = g.unit_at(t.source);
        auto ut = g.unit_at(t.target);
        if (us) {
            auto c = g.compose(t.id, *us);
            if (!c || *c != t.id) report("unit-law", describe(g, t.id) + " ∘ 1_source != itself");
        }
        if (ut) {
            auto c = g.compose(*ut, t.id);
            if (!c || *c != t.id) report("unit-law", "1_target ∘ " + describe(g, t.id) + " != itself");
        }
        auto inv = g.inverse(t.id);
        if (inv) {
            auto lc = g.compose(*inv, t.id);
            auto us2 = g.unit_at(t.source);
            if (!lc || !us2 || *lc != *us2)
                report("inverse-law", describe(g, t.id) + "⁻¹ ∘ " + describe(g, t.id) + " != 1_source");
            auto rc = g.compose(t.id, *inv);
            auto ut2 = g.unit_at(t.target);
            if (!rc || !ut2 || *rc != *ut2)
                report("inverse-law", describe(g, t.id) + " ∘ " + describe(g, t.id) + "⁻¹ != 1_target");
        }
    }

    for (const Transition& a : g.transitions()) {
        for (const Transition& b : g.transitions()) {
            if (a.source != b.target) continue;
            auto ab = g.compose(a.id, b.id);
            if (!ab) continue;
            for (const Transition& c : g.transitions()) {
                if (b.source != c.target) continue;
                auto bc = g.compose(b.id, c.id);
                auto ab_c = g.compose(*ab, c.id);
                auto a_bc = bc ? g.compose(a.id, *bc) : std::nullopt;
                // Missing entries are already covered by composition-totality;
                // only an actual disagreement is reported here.
                if (bc && ab_c && a_bc && *ab_c != *a_bc) {
                    report("associativity", "(" + describe(g, a.id) + " ∘ " + describe(g, b.id) + ") ∘ " +
                                                describe(g, c.id) + " breaks associativity");
                }
            }
        }
    }

    return out;
}

Groupoid pair_groupoid(int n) {
    if (n < 1) throw std::invalid_argument("pair_groupoid requires n >= 1");
    std::vector<Outcome> outcomes;
    std::vector<Transition> transitions;
    std::unordered_map<int, int> unit_of;
    std::unordered_map<int, int> inverse_of;
    std::unordered_map<std::uint64_t, int> compose;

    for (int i = 0; i < n; ++i) outcomes.push_back({i, std::to_string(i)});
    auto tid = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            transitions.push_back({tid(i, j), "(" + std::to_string(i) + "," + std::to_string(j) + ")", j, i});
        }
    }
    for (int i = 0; i < n; ++i) unit_of[i] = tid(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inverse_of[tid(i, j)] = tid(j, i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                compose[Groupoid::compose_key(tid(i, j), tid(j, k))] = tid(i, k);

    return Groupoid::from_parts("pair_" + std::to_string(n), std::move(outcomes), std::move(transitions),
                                std::move(unit_of), std::move(inverse_of), std::move(compose));
}

Groupoid relabel(const Groupoid& g,
                 const std::unordered_map<int, std::string>& outcome_labels,
                 const std::unordered_map<int, std::string>& transition_labels,
                 const std::string& name) {
    std::vector<Outcome> outcomes = g.outcomes();
    std::vector<Transition> transitions = g.transitions();
    for (Outcome& o : outcomes) {
        auto it = outcome_labels.find(o.id);
        if (it != outcome_labels.end()) o.label = it->second;
    }
    for (Transition& t : transitions) {
        auto it = transition_labels.find(t.id);
        if (it != transition_labels.end()) t.label = it->second;
    }
    return Groupoid::from_parts(name.empty() ? g.name() : name, std::move(outcomes), std::move(transitions),
                                g.unit_table(), g.inverse_table(), g.compose_table());
}

Groupoid two_level_groupoid(const std::string& suffix) {
    Groupoid base = pair_groupoid(2);
    auto s = [&suffix](const std::string& l) { return suffix.empty() ? l : l + "_" + suffix; };
    // Outcome 0 plays "+", outcome 1 plays "-"; (1,0) is the decay +, -> -.
    return relabel(base, {{0, s("+")}, {1, s("-")}},
                   {{0, "1_" + s("+")}, {3, "1_" + s("-")}, {2, s("alpha")}, {1, s("alpha") + "^-1"}},
                   suffix.empty() ? "a2" : "a2_" + suffix);
}

Groupoid cyclic_two_group(const std::string& suffix) {
    auto s = [&suffix](const std::string& l) { return suffix.empty() ? l : l + "_" + suffix; };
    std::vector<Outcome> outcomes{{0, s("*")}};
    std::vector<Transition> transitions{{0, "1_" + s("*"), 0, 0}, {1, s("flip"), 0, 0}};
    std::unordered_map<int, int> unit_of{{0, 0}};
    std::unordered_map<int, int> inverse_of{{0, 0}, {1, 1}};
    std::unordered_map<std::uint64_t, int> compose;
    compose[Groupoid::compose_key(0, 0)] = 0;
    compose[Groupoid::compose_key(0, 1)] = 1;
    compose[Groupoid::compose_key(1, 0)] = 1;
    compose[Groupoid::compose_key(1, 1)] = 0;
    return Groupoid::from_parts(suffix.empty() ? "z2" : "z2_" + suffix, std::move(outcomes),
                                std::move(transitions), std::move(unit_of), std::move(inverse_of),
                                std::move(compose));
}

Groupoid restriction(const Groupoid& g, const std::vector<int>& outcome_ids, const std::string& name) {
    std::set<int> keep(outcome_ids.begin(), outcome_ids.end());
    for (int x : keep)
        if (!g.has_outcome(x)) throw std::invalid_argument("restriction to undeclared outcome " + std::to_string(x));

    std::vector<Outcome> outcomes;
    for (const Outcome& o : g.outcomes())
        if (keep.count(o.id)) outcomes.push_back(o);

    std::vector<Transition> transitions;
    std::set<int> kept_tids;
    for (const Transition& t : g.transitions()) {
        if (keep.count(t.source) && keep.count(t.target)) {
            transitions.push_back(t);
            kept_tids.insert(t.id);
        }
    }

    std::unordered_map<int, int> unit_of;
    for (const auto& [x, u] : g.unit_table())
        if (keep.count(x) && kept_tids.count(u)) unit_of[x] = u;
    std::unordered_map<int, int> inverse_of;
    for (const auto& [t, inv] : g.inverse_table())
        if (kept_tids.count(t) && kept_tids.count(inv)) inverse_of[t] = inv;
    std::unordered_map<std::uint64_t, int> compose;
    for (const auto& [key, c] : g.compose_table()) {
        const int a = static_cast<int>(static_cast<std::uint32_t>(key >> 32));
        const int b = static_cast<int>(static_cast<std::uint32_t>(key & 0xffffffffu));
        if (kept_tids.count(a) && kept_tids.count(b) && kept_tids.count(c)) compose[key] = c;
    }

    return Groupoid::from_parts(name.empty() ? g.name() + "_restricted" : name, std::move(outcomes),
                                std::move(transitions), std::move(unit_of), std::move(inverse_of),
                                std::move(compose));
}

Groupoid transition_subgroupoid(const Groupoid& g, const std::vector<int>& transition_ids,
                                const std::string& name) {
    std::set<int> kept(transition_ids.begin(), transition_ids.end());
    std::set<int> outcome_ids;
    for (int t : kept) {
        if (!g.has_transition(t))
            throw std::invalid_argument("transition_subgroupoid: undeclared transition " + std::to_string(t));
        outcome_ids.insert(g.source(t));
        outcome_ids.insert(g.target(t));
    }

    std::vector<Outcome> outcomes;
    for (const Outcome& o : g.outcomes())
        if (outcome_ids.count(o.id)) outcomes.push_back(o);
    std::vector<Transition> transitions;
    for (const Transition& t : g.transitions())
        if (kept.count(t.id)) transitions.push_back(t);

    std::unordered_map<int, int> unit_of;
    for (int x : outcome_ids) {
        const std::optional<int> u = g.unit_at(x);
        if (!u || !kept.count(*u))
            throw std::invalid_argument("transition_subgroupoid: subset misses the unit at outcome " +
                                        std::to_string(x));
        unit_of[x] = *u;
    }
    std::unordered_map<int, int> inverse_of;
    for (int t : kept) {
        const std::optional<int> inv = g.inverse(t);
        if (!inv || !kept.count(*inv))
            throw std::invalid_argument("transition_subgroupoid: subset misses the inverse of transition " +
                                        std::to_string(t));
        inverse_of[t] = *inv;
    }
    std::unordered_map<std::uint64_t, int> compose;
    for (int a : kept)
        for (int b : kept) {
            if (!g.composable(a, b)) continue;
            const std::optional<int> c = g.compose(a, b);
            if (!c || !kept.count(*c))
                throw std::invalid_argument("transition_subgroupoid: subset not closed under composing " +
                                            std::to_string(a) + " with " + std::to_string(b));
            compose[Groupoid::compose_key(a, b)] = *c;
        }

    return Groupoid::from_parts(name.empty() ? g.name() + "_sub" : name, std::move(outcomes),
                                std::move(transitions), std::move(unit_of), std::move(inverse_of),
                                std::move(compose));
}

Groupoid isotropy_group(const Groupoid& g, int outcome_id) {
    return restriction(g, {outcome_id}, g.name() + "_iso_" + std::to_string(outcome_id));
}

Groupoid fundamental_subgroupoid(const Groupoid& g) {
    std::set<int> kept_tids;
    for (const Transition& t : g.transitions())
        if (t.source != t.target) kept_tids.insert(t.id);
    for (const auto& [x, u] : g.unit_table()) kept_tids.insert(u);

    std::vector<Transition> transitions;
    for (const Transition& t : g.transitions())
        if (kept_tids.count(t.id)) transitions.push_back(t);

    std::unordered_map<int, int> inverse_of;
    for (const auto& [t, inv] : g.inverse_table())
        if (kept_tids.count(t) && kept_tids.count(inv)) inverse_of[t] = inv;
    std::unordered_map<std::uint64_t, int> compose;
    for (const auto& [key, c] : g.compose_table()) {
        const int a = static_cast<int>(static_cast<std::uint32_t>(key >> 32));
        const int b = static_cast<int>(static_cast<std::uint32_t>(key & 0xffffffffu));
        if (kept_tids.count(a) && kept_tids.count(b) && kept_tids.count(c)) compose[key] = c;
    }

    return Groupoid::from_parts(g.name() + "_fundamental", g.outcomes(), std::move(transitions), g.unit_table(),
                                std::move(inverse_of), std::move(compose));
}

Groupoid unit_subgroupoid(const Groupoid& g) {
    std::set<int> kept_tids;
    for (const auto& [x, u] : g.unit_table()) kept_tids.insert(u);

    std::vector<Transition> transitions;
    for (const Transition& t : g.transitions())
        if (kept_tids.count(t.id)) transitions.push_back(t);

    std::unordered_map<int, int> inverse_of;
    std::unordered_map<std::uint64_t, int> compose;
    for (int u : kept_tids) {
        inverse_of[u] = u;
        compose[Groupoid::compose_key(u, u)] = u;
    }

    return Groupoid::from_parts(g.name() + "_units", g.outcomes(), std::move(transitions), g.unit_table(),
                                std::move(inverse_of), std::move(compose));
}

std::unordered_map<int, int> identity_embedding(const Groupoid& h) {
    std::unordered_map<int, int> m;
    for (const Transition& t : h.transitions()) m[t.id] = t.id;
    return m;
}

namespace {

/// Derives the outcome map induced by a transition map, failing when the
/// endpoints of mapped transitions are incoherent.
bool induced_outcome_map(const Groupoid& h, const Groupoid& g, const std::unordered_map<int, int>& map,
                         std::unordered_map<int, int>& outcome_map, std::string* why) {
    for (const Transition& t : h.transitions()) {
        auto it = map.find(t.id);
        if (it == map.end()) {
            if (why) *why = "map is not defined on " + describe(h, t.id);
            return false;
        }
        if (!g.has_transition(it->second)) {
            if (why) *why = "map sends " + describe(h, t.id) + " outside the codomain";
            return false;
        }
        const Transition& img = g.transition(it->second);
        for (auto [from, to] : {std::pair<int, int>{t.source, img.source}, {t.target, img.target}}) {
            auto [pos, inserted] = outcome_map.emplace(from, to);
            if (!inserted && pos->second != to) {
                if (why) *why = "endpoints of " + describe(h, t.id) + " map incoherently";
                return false;
            }
        }
    }
    return true;
}

bool check_units_inverses_compositions(const Groupoid& h, const Groupoid& g,
                                       const std::unordered_map<int, int>& map,
                                       const std::unordered_map<int, int>& outcome_map, std::string* why) {
    for (const auto& [x, u] : h.unit_table()) {
        auto gx = outcome_map.find(x);
        if (gx == outcome_map.end()) continue;
        auto gu = g.unit_at(gx->second);
        auto mu = map.find(u);
        if (!gu || mu == map.end() || mu->second != *gu) {
            if (why) *why = "unit at " + h.outcome(x).label + " does not map to a unit";
            return false;
        }
    }
    for (const auto& [t, inv] : h.inverse_table()) {
        auto mt = map.find(t);
        auto minv = map.find(inv);
        if (mt == map.end() || minv == map.end()) continue;
        auto ginv = g.inverse(mt->second);
        if (!ginv || *ginv != minv->second) {
            if (why) *why = "inverse of " + describe(h, t) + " is not preserved";
            return false;
        }
    }
    for (const Transition& a : h.transitions()) {
        for (const Transition& b : h.transitions()) {
            if (a.source != b.target) continue;
            auto c = h.compose(a.id, b.id);
            if (!c) continue;
            const int ga = map.at(a.id);
            const int gb = map.at(b.id);
            if (!g.composable(ga, gb)) {
                if (why)
                    *why = describe(h, a.id) + " ∘ " + describe(h, b.id) +
                           " is composable but its image is not";
                return false;
            }
            auto gc = g.compose(ga, gb);
            auto mc = map.find(*c);
            if (!gc || mc == map.end() || mc->second != *gc) {
                if (why) *why = "composite of " + describe(h, a.id) + " ∘ " + describe(h, b.id) + " not preserved";
                return false;
            }
        }
    }
    return true;
}

}  // namespace

bool is_subgroupoid(const Groupoid& h, const Groupoid& g, const std::unordered_map<int, int>& embedding,
                    std::string* why) {
    std::set<int> image;
    for (const Transition& t : h.transitions()) {
        auto it = embedding.find(t.id);
        if (it == embedding.end()) {
            if (why) *why = "embedding is not defined on " + describe(h, t.id);
            return false;
        }
        if (!image.insert(it->second).second) {
            if (why) *why = "embedding is not injective";
            return false;
        }
    }

    std::unordered_map<int, int> outcome_map;
    if (!induced_outcome_map(h, g, embedding, outcome_map, why)) return false;

    std::set<int> outcome_image;
    for (const auto& [x, y] : outcome_map) {
        if (!outcome_image.insert(y).second) {
            if (why) *why = "induced outcome map is not injective";
            return false;
        }
    }

    return check_units_inverses_compositions(h, g, embedding, outcome_map, why);
}

bool is_morphism(const Groupoid& h, const Groupoid& g, const std::unordered_map<int, int>& map,
                 std::string* why) {
    std::unordered_map<int, int> outcome_map;
    if (!induced_outcome_map(h, g, map, outcome_map, why)) return false;
    return check_units_inverses_compositions(h, g, map, outcome_map, why);
}

std::vector<std::vector<int>> connected_components(const Groupoid& g) {
    std::unordered_map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Outcome& o : g.outcomes()) parent[o.id] = o.id;
    for (const Transition& t : g.transitions()) {
        int a = find(t.source), b = find(t.target);
        if (a != b) parent[a] = b;
    }

    std::vector<std::vector<int>> components;
    std::unordered_map<int, std::size_t> root_slot;
    for (const Outcome& o : g.outcomes()) {
        int r = find(o.id);
        auto it = root_slot.find(r);
        if (it == root_slot.end()) {
            root_slot[r] = components.size();
            components.push_back({o.id});
        } else {
            components[it->second].push_back(o.id);
        }
    }
    return components;
}

namespace {

/// Completes an outcome bijection to a transition bijection when possible;
/// handles parallel transitions by backtracking over matchings.
bool match_transitions(const Groupoid& g, const Groupoid& h, const std::unordered_map<int, int>& outcome_map,
                       std::unordered_map<int, int>& tmap) {
    std::vector<int> order;
    for (const Transition& t : g.transitions()) order.push_back(t.id);

    std::set<int> used;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == order.size()) {
            for (const Transition& a : g.transitions()) {
                for (const Transition& b : g.transitions()) {
                    if (a.source != b.target) continue;
                    auto c = g.compose(a.id, b.id);
                    auto hc = h.compose(tmap.at(a.id), tmap.at(b.id));
                    if (!c != !hc) return false;
                    if (c && tmap.at(*c) != *hc) return false;
                }
            }
            for (const auto& [t, inv] : g.inverse_table()) {
                auto hinv = h.inverse(tmap.at(t));
                if (!hinv || *hinv != tmap.at(inv)) return false;
            }
            for (const auto& [x, u] : g.unit_table()) {
                auto hu = h.unit_at(outcome_map.at(x));
                if (!hu || *hu != tmap.at(u)) return false;
            }
            return true;
        }
        const Transition& t = g.transition(order[i]);
        for (const Transition& s : h.transitions()) {
            if (used.count(s.id)) continue;
            if (s.source != outcome_map.at(t.source) || s.target != outcome_map.at(t.target)) continue;
            tmap[t.id] = s.id;
            used.insert(s.id);
            if (rec(i + 1)) return true;
            used.erase(s.id);
            tmap.erase(t.id);
        }
        return false;
    };
    return rec(0);
}

}  // namespace

std::optional<std::unordered_map<int, int>> find_isomorphism(const Groupoid& g, const Groupoid& h) {
    if (g.outcome_count() != h.outcome_count() || g.size() != h.size()) return std::nullopt;

    std::vector<int> h_outcomes;
    for (const Outcome& o : h.outcomes()) h_outcomes.push_back(o.id);
    std::sort(h_outcomes.begin(), h_outcomes.end());

    // Backtrack over outcome bijections, then complete to transitions.
    std::vector<int> g_outcomes;
    for (const Outcome& o : g.outcomes()) g_outcomes.push_back(o.id);

    std::vector<int> perm(h_outcomes);
    std::sort(perm.begin(), perm.end());
    do {
        std::unordered_map<int, int> outcome_map;
        for (std::size_t i = 0; i < g_outcomes.size(); ++i) outcome_map[g_outcomes[i]] = perm[i];
        std::unordered_map<int, int> tmap;
        if (match_transitions(g, h, outcome_map, tmap)) return tmap;
    } while (std::next_permutation(perm.begin(), perm.end()));

    return std::nullopt;
}

}  // namespace groupoidal

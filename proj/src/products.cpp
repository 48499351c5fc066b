#include "groupoidal/products.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace groupoidal {

namespace {

int position_of_outcome(const Groupoid& g, int id) {
    const auto& v = g.outcomes();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].id == id) return static_cast<int>(i);
    throw std::invalid_argument("undeclared outcome id " + std::to_string(id));
}

int position_of_transition(const Groupoid& g, int id) {
    const auto& v = g.transitions();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].id == id) return static_cast<int>(i);
    throw std::invalid_argument("undeclared transition id " + std::to_string(id));
}

/// Mixed-radix code of positions, first factor most significant.
int encode(const std::vector<int>& positions, const std::vector<int>& radix) {
    int code = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) code = code * radix[k] + positions[k];
    return code;
}

std::vector<int> decode(int code, const std::vector<int>& radix) {
    std::vector<int> positions(radix.size());
    for (std::size_t k = radix.size(); k-- > 0;) {
        positions[k] = code % radix[k];
        code /= radix[k];
    }
    return positions;
}

std::vector<int> outcome_radix(const std::vector<Groupoid>& factors) {
    std::vector<int> r;
    for (const Groupoid& f : factors) r.push_back(static_cast<int>(f.outcome_count()));
    return r;
}

std::vector<int> transition_radix(const std::vector<Groupoid>& factors) {
    std::vector<int> r;
    for (const Groupoid& f : factors) r.push_back(static_cast<int>(f.size()));
    return r;
}

std::string tuple_label(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i];
    }
    return s + ")";
}

/// Sub-groupoid of g on a transition subset, keeping ids; the subset must be
/// closed under units, inverses, and composition.
Groupoid sub_by_transitions(const Groupoid& g, const std::set<int>& keep, const std::string& name) {
    std::vector<Transition> transitions;
    for (const Transition& t : g.transitions())
        if (keep.count(t.id)) transitions.push_back(t);
    std::unordered_map<int, int> unit_of;
    for (const auto& [x, u] : g.unit_table())
        if (keep.count(u)) unit_of[x] = u;
    std::unordered_map<int, int> inverse_of;
    for (const auto& [t, inv] : g.inverse_table())
        if (keep.count(t) && keep.count(inv)) inverse_of[t] = inv;
    std::unordered_map<std::uint64_t, int> compose;
    for (const auto& [key, c] : g.compose_table()) {
        const int a = static_cast<int>(static_cast<std::uint32_t>(key >> 32));
        const int b = static_cast<int>(static_cast<std::uint32_t>(key & 0xffffffffu));
        if (keep.count(a) && keep.count(b) && keep.count(c)) compose[key] = c;
    }
    return Groupoid::from_parts(name, g.outcomes(), std::move(transitions), std::move(unit_of),
                                std::move(inverse_of), std::move(compose));
}

}  // namespace

std::vector<int> DirectProduct::transition_tuple(int product_transition_id) const {
    if (!product.has_transition(product_transition_id))
        throw std::invalid_argument("undeclared product transition " + std::to_string(product_transition_id));
    std::vector<int> positions = decode(product_transition_id, transition_radix(factors));
    std::vector<int> ids(positions.size());
    for (std::size_t k = 0; k < positions.size(); ++k) ids[k] = factors[k].transitions()[positions[k]].id;
    return ids;
}

std::vector<int> DirectProduct::outcome_tuple(int product_outcome_id) const {
    if (!product.has_outcome(product_outcome_id))
        throw std::invalid_argument("undeclared product outcome " + std::to_string(product_outcome_id));
    std::vector<int> positions = decode(product_outcome_id, outcome_radix(factors));
    std::vector<int> ids(positions.size());
    for (std::size_t k = 0; k < positions.size(); ++k) ids[k] = factors[k].outcomes()[positions[k]].id;
    return ids;
}

int DirectProduct::tuple_to_transition(const std::vector<int>& component_ids) const {
    if (component_ids.size() != factors.size())
        throw std::invalid_argument("component tuple has wrong arity");
    std::vector<int> positions(component_ids.size());
    for (std::size_t k = 0; k < component_ids.size(); ++k)
        positions[k] = position_of_transition(factors[k], component_ids[k]);
    return encode(positions, transition_radix(factors));
}

int DirectProduct::tuple_to_outcome(const std::vector<int>& component_ids) const {
    if (component_ids.size() != factors.size())
        throw std::invalid_argument("component tuple has wrong arity");
    std::vector<int> positions(component_ids.size());
    for (std::size_t k = 0; k < component_ids.size(); ++k)
        positions[k] = position_of_outcome(factors[k], component_ids[k]);
    return encode(positions, outcome_radix(factors));
}

DirectProduct direct_product(std::vector<Groupoid> factors, const std::string& name) {
    if (factors.empty()) throw std::invalid_argument("direct product needs at least one factor");

    const std::vector<int> orad = outcome_radix(factors);
    const std::vector<int> trad = transition_radix(factors);
    const std::size_t m = factors.size();

    int outcome_total = 1, transition_total = 1;
    for (int r : orad) outcome_total *= r;
    for (int r : trad) transition_total *= r;

    std::vector<Outcome> outcomes;
    for (int code = 0; code < outcome_total; ++code) {
        std::vector<int> pos = decode(code, orad);
        std::vector<std::string> parts;
        for (std::size_t k = 0; k < m; ++k) parts.push_back(factors[k].outcomes()[pos[k]].label);
        outcomes.push_back({code, tuple_label(parts)});
    }

    auto outcome_code = [&](const std::vector<int>& outcome_ids) {
        std::vector<int> pos(m);
        for (std::size_t k = 0; k < m; ++k) pos[k] = position_of_outcome(factors[k], outcome_ids[k]);
        return encode(pos, orad);
    };

    std::vector<Transition> transitions;
    for (int code = 0; code < transition_total; ++code) {
        std::vector<int> pos = decode(code, trad);
        std::vector<std::string> parts;
        std::vector<int> src(m), tgt(m);
        for (std::size_t k = 0; k < m; ++k) {
            const Transition& t = factors[k].transitions()[pos[k]];
            parts.push_back(t.label);
            src[k] = t.source;
            tgt[k] = t.target;
        }
        transitions.push_back({code, tuple_label(parts), outcome_code(src), outcome_code(tgt)});
    }

    std::unordered_map<int, int> unit_of;
    for (int code = 0; code < outcome_total; ++code) {
        std::vector<int> pos = decode(code, orad);
        std::vector<int> upos(m);
        for (std::size_t k = 0; k < m; ++k) {
            int u = factors[k].unit_at(factors[k].outcomes()[pos[k]].id).value();
            upos[k] = position_of_transition(factors[k], u);
        }
        unit_of[code] = encode(upos, trad);
    }

    std::unordered_map<int, int> inverse_of;
    for (int code = 0; code < transition_total; ++code) {
        std::vector<int> pos = decode(code, trad);
        std::vector<int> ipos(m);
        for (std::size_t k = 0; k < m; ++k) {
            int inv = factors[k].inverse(factors[k].transitions()[pos[k]].id).value();
            ipos[k] = position_of_transition(factors[k], inv);
        }
        inverse_of[code] = encode(ipos, trad);
    }

    std::unordered_map<std::uint64_t, int> compose;
    for (int a = 0; a < transition_total; ++a) {
        for (int b = 0; b < transition_total; ++b) {
            if (transitions[a].source != transitions[b].target) continue;
            std::vector<int> apos = decode(a, trad), bpos = decode(b, trad), cpos(m);
            for (std::size_t k = 0; k < m; ++k) {
                auto c = factors[k].compose(factors[k].transitions()[apos[k]].id,
                                            factors[k].transitions()[bpos[k]].id);
                cpos[k] = position_of_transition(factors[k], c.value());
            }
            compose[Groupoid::compose_key(a, b)] = encode(cpos, trad);
        }
    }

    std::string product_name = name;
    if (product_name.empty()) {
        for (std::size_t k = 0; k < m; ++k) {
            if (k) product_name += "x";
            product_name += factors[k].name();
        }
    }

    DirectProduct dp;
    dp.factors = std::move(factors);
    dp.product = Groupoid::from_parts(product_name, std::move(outcomes), std::move(transitions),
                                      std::move(unit_of), std::move(inverse_of), std::move(compose));
    return dp;
}

std::unordered_map<int, int> projection_map(const DirectProduct& dp, std::size_t factor) {
    if (factor >= dp.factors.size()) throw std::invalid_argument("factor index out of range");
    std::unordered_map<int, int> map;
    for (const Transition& t : dp.product.transitions()) map[t.id] = dp.transition_tuple(t.id)[factor];
    return map;
}

Groupoid padded_factor(const DirectProduct& dp, std::size_t factor) {
    if (factor >= dp.factors.size()) throw std::invalid_argument("factor index out of range");
    std::set<int> keep;
    for (const Transition& t : dp.product.transitions()) {
        std::vector<int> parts = dp.transition_tuple(t.id);
        bool ok = true;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            if (k == factor) continue;
            const Groupoid& f = dp.factors[k];
            if (f.unit_at(f.source(parts[k])) != parts[k]) {
                ok = false;
                break;
            }
        }
        if (ok) keep.insert(t.id);
    }
    return sub_by_transitions(dp.product, keep, dp.factors[factor].name() + "_padded");
}

AlgebraElement tensor_factor_element(const DirectProduct& dp, std::size_t factor, int factor_transition_id) {
    if (factor >= dp.factors.size()) throw std::invalid_argument("factor index out of range");
    if (!dp.factors[factor].has_transition(factor_transition_id))
        throw std::invalid_argument("undeclared factor transition " + std::to_string(factor_transition_id));

    AlgebraElement out(dp.product);
    std::vector<int> parts(dp.factors.size());
    std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k == dp.factors.size()) {
            out.set_coefficient(dp.tuple_to_transition(parts), out.coefficient(dp.tuple_to_transition(parts)) + 1.0);
            return;
        }
        if (k == factor) {
            parts[k] = factor_transition_id;
            fill(k + 1);
            return;
        }
        for (const Outcome& o : dp.factors[k].outcomes()) {
            parts[k] = dp.factors[k].unit_at(o.id).value();
            fill(k + 1);
        }
    };
    fill(0);
    return out;
}

std::optional<std::unordered_map<int, int>> mediate_into_product(
    const DirectProduct& dp, const Groupoid& h, const std::vector<std::unordered_map<int, int>>& legs) {
    if (legs.size() != dp.factors.size()) throw std::invalid_argument("one leg per factor required");
    std::unordered_map<int, int> map;
    for (const Transition& t : h.transitions()) {
        std::vector<int> parts(legs.size());
        for (std::size_t k = 0; k < legs.size(); ++k) {
            auto it = legs[k].find(t.id);
            if (it == legs[k].end()) return std::nullopt;
            parts[k] = it->second;
        }
        map[t.id] = dp.tuple_to_transition(parts);
    }
    if (!is_morphism(h, dp.product, map)) return std::nullopt;
    return map;
}

namespace {

void check_letter(const FreeProductSpec& spec, const Letter& l) {
    if (l.factor < 0 || l.factor >= static_cast<int>(spec.factors.size()))
        throw std::invalid_argument("letter references undeclared factor " + std::to_string(l.factor));
    if (!spec.factors[l.factor].has_transition(l.transition))
        throw std::invalid_argument("letter references undeclared transition " + std::to_string(l.transition));
}

int letter_ambient_source(const FreeProductSpec& spec, const Letter& l) {
    return spec.outcome_maps[l.factor].at(spec.factors[l.factor].source(l.transition));
}

int letter_ambient_target(const FreeProductSpec& spec, const Letter& l) {
    return spec.outcome_maps[l.factor].at(spec.factors[l.factor].target(l.transition));
}

bool is_unit_letter(const FreeProductSpec& spec, const Letter& l) {
    const Groupoid& f = spec.factors[l.factor];
    return f.unit_at(f.source(l.transition)) == l.transition;
}

const Outcome& ambient_outcome(const FreeProductSpec& spec, int id) {
    for (const Outcome& o : spec.outcomes)
        if (o.id == id) return o;
    throw std::invalid_argument("undeclared ambient outcome " + std::to_string(id));
}

void check_word(const FreeProductSpec& spec, const Word& w) {
    if (w.letters.empty()) {
        ambient_outcome(spec, w.anchor);
        return;
    }
    for (const Letter& l : w.letters) check_letter(spec, l);
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
        if (letter_ambient_source(spec, w.letters[i]) != letter_ambient_target(spec, w.letters[i + 1]))
            throw std::invalid_argument("word has mismatched endpoints at position " + std::to_string(i));
    }
}

}  // namespace

FreeProductSpec make_free_product_spec(std::string name, std::vector<Outcome> outcomes,
                                       std::vector<Groupoid> factors,
                                       std::vector<std::unordered_map<int, int>> outcome_maps) {
    if (factors.size() != outcome_maps.size())
        throw std::invalid_argument("one outcome map per factor required");
    std::set<int> ambient_ids;
    for (const Outcome& o : outcomes)
        if (!ambient_ids.insert(o.id).second)
            throw std::invalid_argument("duplicate ambient outcome id " + std::to_string(o.id));
    for (std::size_t k = 0; k < factors.size(); ++k) {
        std::set<int> image;
        for (const Outcome& o : factors[k].outcomes()) {
            auto it = outcome_maps[k].find(o.id);
            if (it == outcome_maps[k].end())
                throw std::invalid_argument("outcome map " + std::to_string(k) + " misses outcome " + o.label);
            if (!ambient_ids.count(it->second))
                throw std::invalid_argument("outcome map " + std::to_string(k) + " leaves the ambient set");
            if (!image.insert(it->second).second)
                throw std::invalid_argument("outcome map " + std::to_string(k) + " is not injective");
        }
    }
    FreeProductSpec spec;
    spec.name = std::move(name);
    spec.outcomes = std::move(outcomes);
    spec.factors = std::move(factors);
    spec.outcome_maps = std::move(outcome_maps);
    return spec;
}

int ambient_source(const FreeProductSpec& spec, const Word& word) {
    if (word.letters.empty()) return ambient_outcome(spec, word.anchor).id;
    return letter_ambient_source(spec, word.letters.back());
}

int ambient_target(const FreeProductSpec& spec, const Word& word) {
    if (word.letters.empty()) return ambient_outcome(spec, word.anchor).id;
    return letter_ambient_target(spec, word.letters.front());
}

std::string word_label(const FreeProductSpec& spec, const Word& word) {
    if (word.letters.empty()) return "1_" + ambient_outcome(spec, word.anchor).label;
    std::string s;
    for (std::size_t i = 0; i < word.letters.size(); ++i) {
        if (i) s += "*";
        const Letter& l = word.letters[i];
        s += spec.factors[l.factor].transition(l.transition).label;
    }
    return s;
}

Word reduce(const FreeProductSpec& spec, Word word) {
    check_word(spec, word);
    if (word.letters.empty()) return word;
    word.anchor = -1;

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < word.letters.size(); ++i) {
            if (i + 1 < word.letters.size() && word.letters[i].factor == word.letters[i + 1].factor) {
                const Groupoid& f = spec.factors[word.letters[i].factor];
                auto c = f.compose(word.letters[i].transition, word.letters[i + 1].transition);
                if (!c) throw std::runtime_error("factor composition unexpectedly missing");
                word.letters[i].transition = *c;
                word.letters.erase(word.letters.begin() + i + 1);
                changed = true;
                break;
            }
            if (is_unit_letter(spec, word.letters[i]) && word.letters.size() >= 2) {
                word.letters.erase(word.letters.begin() + i);
                changed = true;
                break;
            }
        }
    }

    if (word.letters.size() == 1 && is_unit_letter(spec, word.letters[0])) {
        word.anchor = letter_ambient_source(spec, word.letters[0]);
        word.letters.clear();
    }
    return word;
}

Word compose_words(const FreeProductSpec& spec, const Word& lhs, const Word& rhs) {
    check_word(spec, lhs);
    check_word(spec, rhs);
    if (ambient_source(spec, lhs) != ambient_target(spec, rhs))
        throw std::invalid_argument("words are not composable");
    Word out;
    out.letters = lhs.letters;
    out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
    out.anchor = out.letters.empty() ? rhs.anchor : -1;
    return reduce(spec, out);
}

Word inverse_word(const FreeProductSpec& spec, const Word& word) {
    check_word(spec, word);
    if (word.letters.empty()) return word;
    Word out;
    for (std::size_t i = word.letters.size(); i-- > 0;) {
        const Letter& l = word.letters[i];
        out.letters.push_back({l.factor, spec.factors[l.factor].inverse(l.transition).value()});
    }
    return out;
}

std::vector<Word> enumerate_words(const FreeProductSpec& spec, int max_length) {
    std::vector<Word> all;
    for (const Outcome& o : spec.outcomes) all.push_back(Word{{}, o.id});
    if (max_length < 1) return all;

    std::vector<Word> frontier;
    for (std::size_t k = 0; k < spec.factors.size(); ++k) {
        for (const Transition& t : spec.factors[k].transitions()) {
            Letter l{static_cast<int>(k), t.id};
            if (is_unit_letter(spec, l)) continue;
            frontier.push_back(Word{{l}, -1});
        }
    }
    all.insert(all.end(), frontier.begin(), frontier.end());

    for (int len = 2; len <= max_length && !frontier.empty(); ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            const int head_factor = w.letters.front().factor;
            const int tgt = ambient_target(spec, w);
            for (std::size_t k = 0; k < spec.factors.size(); ++k) {
                if (static_cast<int>(k) == head_factor) continue;
                for (const Transition& t : spec.factors[k].transitions()) {
                    Letter l{static_cast<int>(k), t.id};
                    if (is_unit_letter(spec, l)) continue;
                    if (letter_ambient_source(spec, l) != tgt) continue;
                    Word nw;
                    nw.letters.reserve(w.letters.size() + 1);
                    nw.letters.push_back(l);
                    nw.letters.insert(nw.letters.end(), w.letters.begin(), w.letters.end());
                    next.push_back(std::move(nw));
                }
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return all;
}

namespace {

std::string word_key(const Word& w) {
    if (w.letters.empty()) return "@" + std::to_string(w.anchor);
    std::string s;
    for (const Letter& l : w.letters) {
        s += std::to_string(l.factor);
        s += ":";
        s += std::to_string(l.transition);
        s += "|";
    }
    return s;
}

}  // namespace

int BoundedFreeProduct::word_id(const Word& reduced_word) const {
    auto it = index_.find(word_key(reduced_word));
    return it == index_.end() ? -1 : it->second;
}

const Word& BoundedFreeProduct::word_of(int transition_id) const {
    if (transition_id < 0 || transition_id >= static_cast<int>(words.size()))
        throw std::invalid_argument("undeclared word id " + std::to_string(transition_id));
    return words[transition_id];
}

BoundedFreeProduct fp_groupoid(const FreeProductSpec& spec, int max_length) {
    if (max_length < 0) throw std::invalid_argument("word-length bound must be non-negative");

    BoundedFreeProduct fp;
    fp.spec = spec;
    fp.bound = max_length;
    fp.words = enumerate_words(spec, max_length);
    for (std::size_t i = 0; i < fp.words.size(); ++i) fp.index_[word_key(fp.words[i])] = static_cast<int>(i);

    std::vector<Transition> transitions;
    for (std::size_t i = 0; i < fp.words.size(); ++i) {
        transitions.push_back({static_cast<int>(i), word_label(spec, fp.words[i]),
                               ambient_source(spec, fp.words[i]), ambient_target(spec, fp.words[i])});
    }

    std::unordered_map<int, int> unit_of;
    for (const Outcome& o : spec.outcomes) unit_of[o.id] = fp.word_id(Word{{}, o.id});

    std::unordered_map<int, int> inverse_of;
    for (std::size_t i = 0; i < fp.words.size(); ++i)
        inverse_of[static_cast<int>(i)] = fp.word_id(inverse_word(spec, fp.words[i]));

    fp.saturated = true;
    std::unordered_map<std::uint64_t, int> compose;
    for (std::size_t i = 0; i < fp.words.size(); ++i) {
        for (std::size_t j = 0; j < fp.words.size(); ++j) {
            if (ambient_source(spec, fp.words[i]) != ambient_target(spec, fp.words[j])) continue;
            Word prod = compose_words(spec, fp.words[i], fp.words[j]);
            int id = fp.word_id(prod);
            if (id < 0) {
                fp.saturated = false;
            } else {
                compose[Groupoid::compose_key(static_cast<int>(i), static_cast<int>(j))] = id;
            }
        }
    }

    fp.groupoid = Groupoid::from_parts(spec.name + "_L" + std::to_string(max_length), spec.outcomes,
                                       std::move(transitions), std::move(unit_of), std::move(inverse_of),
                                       std::move(compose));
    return fp;
}

std::unordered_map<int, int> canonical_embedding(const BoundedFreeProduct& fp, std::size_t factor) {
    if (factor >= fp.spec.factors.size()) throw std::invalid_argument("factor index out of range");
    std::unordered_map<int, int> map;
    for (const Transition& t : fp.spec.factors[factor].transitions()) {
        Letter l{static_cast<int>(factor), t.id};
        Word w = reduce(fp.spec, Word{{l}, -1});
        map[t.id] = fp.word_id(w);
    }
    return map;
}

std::optional<std::unordered_map<int, int>> mediate_from_free_product(
    const BoundedFreeProduct& fp, const Groupoid& target,
    const std::vector<std::unordered_map<int, int>>& legs) {
    const FreeProductSpec& spec = fp.spec;
    if (legs.size() != spec.factors.size()) throw std::invalid_argument("one leg per factor required");

    // Image of each ambient outcome's unit, which every covering factor must
    // agree on.
    std::unordered_map<int, int> unit_image;
    for (std::size_t k = 0; k < spec.factors.size(); ++k) {
        for (const Outcome& o : spec.factors[k].outcomes()) {
            auto it = legs[k].find(spec.factors[k].unit_at(o.id).value());
            if (it == legs[k].end()) return std::nullopt;
            int ambient = spec.outcome_maps[k].at(o.id);
            auto [pos, inserted] = unit_image.emplace(ambient, it->second);
            if (!inserted && pos->second != it->second) return std::nullopt;
        }
    }

    std::unordered_map<int, int> map;
    for (std::size_t i = 0; i < fp.words.size(); ++i) {
        const Word& w = fp.words[i];
        if (w.letters.empty()) {
            auto it = unit_image.find(w.anchor);
            if (it == unit_image.end()) return std::nullopt;
            map[static_cast<int>(i)] = it->second;
            continue;
        }
        auto image_of = [&](const Letter& l) -> std::optional<int> {
            auto it = legs[l.factor].find(l.transition);
            if (it == legs[l.factor].end()) return std::nullopt;
            return it->second;
        };
        auto acc = image_of(w.letters.back());
        if (!acc) return std::nullopt;
        for (std::size_t p = w.letters.size() - 1; p-- > 0;) {
            auto img = image_of(w.letters[p]);
            if (!img) return std::nullopt;
            auto comp = target.compose(*img, *acc);
            if (!comp) return std::nullopt;
            acc = comp;
        }
        map[static_cast<int>(i)] = *acc;
    }

    if (!is_morphism(fp.groupoid, target, map)) return std::nullopt;
    return map;
}

}  // namespace groupoidal

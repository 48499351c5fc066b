#include "groupoidal/independence.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <random>
#include <stdexcept>
#include <utility>

#include "groupoidal/rng.hpp"
#include "groupoidal/tolerances.hpp"

namespace groupoidal {

namespace {

void require_member_parent(const State& rho, const Member& member) {
    for (const auto& element : member.basis) {
        if (!(&element.parent() == &rho.parent() || element.parent() == rho.parent()))
            throw std::invalid_argument("member '" + member.name + "' does not act on the state's groupoid");
    }
}

AlgebraElement random_member_element(const Member& member, std::mt19937_64& rng) {
    AlgebraElement element(member.basis.front().parent());
    for (const auto& basis_element : member.basis) {
        const cplx coefficient(2.0 * uniform_unit(rng) - 1.0, 2.0 * uniform_unit(rng) - 1.0);
        element += coefficient * basis_element;
    }
    return element;
}

struct TrialOutcome {
    Witness witness;
    int trial = 0;
};

}  // namespace

Member member_from_subgroupoid(const Groupoid& parent, const Groupoid& sub, std::string name) {
    Member member{std::move(name), {}, AlgebraElement(parent)};
    for (const auto& transition : sub.transitions()) {
        if (!parent.has_transition(transition.id))
            throw std::invalid_argument("subgroupoid transition id " + std::to_string(transition.id) +
                                        " is not a parent transition");
        member.basis.push_back(AlgebraElement::delta(parent, transition.id));
    }
    for (const auto& outcome : sub.outcomes()) {
        const auto unit = sub.unit_at(outcome.id);
        if (!unit) throw std::invalid_argument("subgroupoid is missing a unit");
        member.unit += AlgebraElement::delta(parent, *unit);
    }
    return member;
}

Member member_from_embedding(const Groupoid& parent, const Groupoid& factor,
                             const std::unordered_map<int, int>& embedding, std::string name) {
    Member member{std::move(name), {}, AlgebraElement(parent)};
    for (const auto& transition : factor.transitions()) {
        const auto image = embedding.find(transition.id);
        if (image == embedding.end())
            throw std::invalid_argument("embedding misses factor transition id " + std::to_string(transition.id));
        if (!parent.has_transition(image->second))
            throw std::invalid_argument("embedding image " + std::to_string(image->second) +
                                        " is not a parent transition");
        member.basis.push_back(AlgebraElement::delta(parent, image->second));
    }
    for (const auto& outcome : factor.outcomes()) {
        const auto unit = factor.unit_at(outcome.id);
        if (!unit) throw std::invalid_argument("factor is missing a unit");
        member.unit += AlgebraElement::delta(parent, embedding.at(*unit));
    }
    return member;
}

Member member_from_tensor_factor(const DirectProduct& dp, std::size_t factor, std::string name) {
    if (factor >= dp.factors.size()) throw std::invalid_argument("tensor factor index out of range");
    Member member{std::move(name), {}, algebra_unit(dp.product)};
    for (const auto& transition : dp.factors[factor].transitions())
        member.basis.push_back(tensor_factor_element(dp, factor, transition.id));
    return member;
}

Witness evaluate_word(IndependenceKind kind, const State& rho, const std::vector<Member>& members,
                      const std::vector<std::size_t>& sequence, const std::vector<AlgebraElement>& elements) {
    if (sequence.empty() || sequence.size() != elements.size())
        throw std::invalid_argument("word needs matching member and element sequences");
    for (const std::size_t index : sequence)
        if (index >= members.size()) throw std::invalid_argument("member index out of range");

    Witness witness;
    witness.members = sequence;
    witness.elements = elements;

    if (kind == IndependenceKind::free_product) {
        const AlgebraElement one = algebra_unit(rho.parent());
        const cplx mass = expectation(rho, one);
        if (std::abs(mass) <= tol::restrict_mass)
            throw std::invalid_argument("cannot centre elements against a massless state");
        std::vector<AlgebraElement> centred;
        centred.reserve(elements.size());
        for (const auto& element : elements)
            centred.push_back(element - (expectation(rho, element) / mass) * one);
        AlgebraElement product = centred.front();
        for (std::size_t k = 1; k < centred.size(); ++k) product = product * centred[k];
        witness.direct = expectation(rho, product);
        witness.expected = cplx(0.0, 0.0);
    } else {
        AlgebraElement product = elements.front();
        cplx factorized = expectation(rho, elements.front());
        for (std::size_t k = 1; k < elements.size(); ++k) {
            product = product * elements[k];
            factorized *= expectation(rho, elements[k]);
        }
        witness.direct = expectation(rho, product);
        witness.expected = factorized;
    }
    witness.violation = std::abs(witness.direct - witness.expected);
    return witness;
}

IndependenceReport check_independence(IndependenceKind kind, const State& rho,
                                      const std::vector<Member>& members, const IndependenceParams& params) {
    if (members.size() < 2) throw std::invalid_argument("independence needs at least two members");
    for (const auto& member : members) {
        if (member.basis.empty()) throw std::invalid_argument("member '" + member.name + "' has an empty basis");
        require_member_parent(rho, member);
    }
    if (params.max_word_length < 2) throw std::invalid_argument("words shorter than two factors constrain nothing");

    const int member_count = static_cast<int>(members.size());
    const auto run_trial = [&](int trial) {
        std::mt19937_64 rng(mix_seed(params.seed, static_cast<std::uint64_t>(trial)));
        std::vector<std::size_t> sequence;
        if (kind == IndependenceKind::usual) {
            // one element from each of a random set of distinct members, in random order
            const int size = 2 + uniform_index(rng, member_count - 1);
            std::vector<std::size_t> pool(members.size());
            for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
            for (int i = 0; i < size; ++i) {
                const int j = i + uniform_index(rng, member_count - i);
                std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            }
            sequence.assign(pool.begin(), pool.begin() + size);
        } else {
            // repetitions allowed, adjacent factors from different members
            const std::size_t length = static_cast<std::size_t>(2 + uniform_index(rng, params.max_word_length - 1));
            sequence.reserve(length);
            sequence.push_back(static_cast<std::size_t>(uniform_index(rng, member_count)));
            while (sequence.size() < length) {
                auto next = static_cast<std::size_t>(uniform_index(rng, member_count - 1));
                if (next >= sequence.back()) ++next;
                sequence.push_back(next);
            }
        }
        std::vector<AlgebraElement> elements;
        elements.reserve(sequence.size());
        for (const std::size_t index : sequence) elements.push_back(random_member_element(members[index], rng));
        return TrialOutcome{evaluate_word(kind, rho, members, sequence, elements), trial};
    };

    std::vector<TrialOutcome> best_per_chunk;
    const int jobs = std::max(1, std::min(params.jobs, params.trials));
    if (jobs <= 1) {
        for (int trial = 0; trial < params.trials; ++trial) {
            TrialOutcome outcome = run_trial(trial);
            if (best_per_chunk.empty() || outcome.witness.violation > best_per_chunk.front().witness.violation)
                best_per_chunk.assign(1, std::move(outcome));
        }
    } else {
        const int chunk = (params.trials + jobs - 1) / jobs;
        std::vector<std::future<std::vector<TrialOutcome>>> futures;
        for (int begin = 0; begin < params.trials; begin += chunk) {
            const int end = std::min(params.trials, begin + chunk);
            futures.push_back(std::async(std::launch::async, [&, begin, end] {
                std::vector<TrialOutcome> local;
                for (int trial = begin; trial < end; ++trial) {
                    TrialOutcome outcome = run_trial(trial);
                    if (local.empty() || outcome.witness.violation > local.front().witness.violation)
                        local.assign(1, std::move(outcome));
                }
                return local;
            }));
        }
        for (auto& future : futures) {
            for (auto& outcome : future.get()) {
                if (best_per_chunk.empty() || outcome.witness.violation > best_per_chunk.front().witness.violation ||
                    (outcome.witness.violation == best_per_chunk.front().witness.violation &&
                     outcome.trial < best_per_chunk.front().trial))
                    best_per_chunk.assign(1, std::move(outcome));
            }
        }
    }

    IndependenceReport report;
    report.kind = kind;
    report.trials_run = params.trials;
    if (!best_per_chunk.empty()) {
        report.max_violation = best_per_chunk.front().witness.violation;
        report.witness = std::move(best_per_chunk.front().witness);
    }
    report.holds = report.max_violation <= params.tolerance;
    return report;
}

IndependenceReport check_usual_independence(const State& rho, const std::vector<Member>& members,
                                            const IndependenceParams& params) {
    return check_independence(IndependenceKind::usual, rho, members, params);
}

IndependenceReport check_generalized_independence(const State& rho, const std::vector<Member>& members,
                                                  const IndependenceParams& params) {
    return check_independence(IndependenceKind::generalized, rho, members, params);
}

IndependenceReport check_free_independence(const State& rho, const std::vector<Member>& members,
                                           const IndependenceParams& params) {
    return check_independence(IndependenceKind::free_product, rho, members, params);
}

namespace {

cplx free_moment(const cplx mass, const std::vector<std::function<cplx(const AlgebraElement&)>>& marginals,
                 const std::vector<MomentFactor>& word) {
    // merge adjacent factors of the same member inside that member's algebra
    std::vector<MomentFactor> merged;
    for (const auto& factor : word) {
        if (factor.member >= marginals.size()) throw std::invalid_argument("moment factor member out of range");
        if (!merged.empty() && merged.back().member == factor.member)
            merged.back().element = merged.back().element * factor.element;
        else
            merged.push_back(factor);
    }
    if (merged.empty()) return mass;
    if (merged.size() == 1) return marginals[merged.front().member](merged.front().element);
    const std::size_t length = merged.size();
    if (length > 16) throw std::invalid_argument("moment word too long to reconstruct");

    std::vector<cplx> centre(length);
    for (std::size_t k = 0; k < length; ++k) centre[k] = marginals[merged[k].member](merged[k].element) / mass;

    // the centred word vanishes; expand it and solve for the full-word term
    cplx lower_terms(0.0, 0.0);
    const std::uint32_t full = (1u << length) - 1u;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        cplx coefficient(1.0, 0.0);
        std::vector<MomentFactor> subword;
        for (std::size_t k = 0; k < length; ++k) {
            if (mask & (1u << k))
                subword.push_back(merged[k]);
            else
                coefficient *= centre[k];
        }
        const bool negate = ((length - static_cast<std::size_t>(std::popcount(mask))) % 2) != 0;
        const cplx term = coefficient * free_moment(mass, marginals, subword);
        lower_terms += negate ? -term : term;
    }
    return -lower_terms;
}

}  // namespace

cplx reconstruct_moment(cplx unit_mass,
                        const std::vector<std::function<cplx(const AlgebraElement&)>>& marginals,
                        const std::vector<MomentFactor>& word) {
    if (std::abs(unit_mass) <= tol::restrict_mass)
        throw std::invalid_argument("cannot reconstruct moments of a massless state");
    return free_moment(unit_mass, marginals, word);
}

}  // namespace groupoidal

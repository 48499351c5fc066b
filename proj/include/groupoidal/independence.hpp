#ifndef GROUPOIDAL_INDEPENDENCE_HPP
#define GROUPOIDAL_INDEPENDENCE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "groupoidal/algebra.hpp"
#include "groupoidal/products.hpp"
#include "groupoidal/states.hpp"

namespace groupoidal {

/// A finitely generated *-subalgebra of a groupoid algebra, described by a
/// spanning set and the subalgebra's own unit (which need not be the parent
/// unit for corner subalgebras).
struct Member {
    std::string name;
    std::vector<AlgebraElement> basis;
    AlgebraElement unit;
};

/// Member spanned by the transitions of a subgroupoid sharing the parent's
/// ids (restriction or padded-factor style).
Member member_from_subgroupoid(const Groupoid& parent, const Groupoid& sub, std::string name);

/// Member spanned by the images of a factor under an embedding map (factor
/// transition id to parent transition id).
Member member_from_embedding(const Groupoid& parent, const Groupoid& factor,
                             const std::unordered_map<int, int>& embedding, std::string name);

/// Member spanned by one tensor leg of a direct product; its unit is the
/// full product unit.
Member member_from_tensor_factor(const DirectProduct& dp, std::size_t factor, std::string name);

enum class IndependenceKind {
    usual,        // distinct members, expectations multiply
    generalized,  // alternating repetitions allowed, expectations multiply
    free_product  // alternating centred products vanish
};

struct IndependenceParams {
    int trials = 200;
    int max_word_length = 6;
    double tolerance = 1e-8;
    std::uint64_t seed = 1;
    int jobs = 1;
};

/// A concrete word certifying a violation (or, when none was found, the
/// worst case examined).
struct Witness {
    std::vector<std::size_t> members;
    std::vector<AlgebraElement> elements;
    cplx direct;
    cplx expected;
    double violation = 0.0;
};

struct IndependenceReport {
    IndependenceKind kind = IndependenceKind::usual;
    bool holds = false;
    double max_violation = 0.0;
    int trials_run = 0;
    std::optional<Witness> witness;  // the most violating word examined
};

/// Evaluates one word: the direct expectation of the (in-order) product, the
/// value independence predicts, and their distance.  For the free notion the
/// elements are centred first and the prediction is zero.
Witness evaluate_word(IndependenceKind kind, const State& rho, const std::vector<Member>& members,
                      const std::vector<std::size_t>& sequence, const std::vector<AlgebraElement>& elements);

/// Randomised falsification search: samples words of the shape the notion
/// constrains and keeps the worst violation.  Deterministic for a fixed
/// seed, independent of the job count.
IndependenceReport check_independence(IndependenceKind kind, const State& rho,
                                      const std::vector<Member>& members, const IndependenceParams& params);

IndependenceReport check_usual_independence(const State& rho, const std::vector<Member>& members,
                                            const IndependenceParams& params);
IndependenceReport check_generalized_independence(const State& rho, const std::vector<Member>& members,
                                                  const IndependenceParams& params);
IndependenceReport check_free_independence(const State& rho, const std::vector<Member>& members,
                                           const IndependenceParams& params);

/// One factor of a mixed moment: an element tagged with the member it
/// belongs to.
struct MomentFactor {
    std::size_t member;
    AlgebraElement element;
};

/// Reconstructs a mixed moment from the member marginals alone, assuming
/// free independence: expands the vanishing centred product, solves for the
/// full-word term, and recurses on the proper subwords after merging
/// adjacent factors of the same member.  `unit_mass` is the state's value on
/// the parent unit; marginals[k] must evaluate the state on products formed
/// within member k.
cplx reconstruct_moment(cplx unit_mass,
                        const std::vector<std::function<cplx(const AlgebraElement&)>>& marginals,
                        const std::vector<MomentFactor>& word);

}  // namespace groupoidal

#endif

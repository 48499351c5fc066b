#ifndef GROUPOIDAL_STATES_HPP
#define GROUPOIDAL_STATES_HPP

#include <unordered_map>
#include <utility>
#include <vector>

#include "groupoidal/algebra.hpp"
#include "groupoidal/groupoid.hpp"
#include "groupoidal/products.hpp"

namespace groupoidal {

/// A state: a complex function on transitions, extended by linearity to the
/// convolution algebra.  Construction is permissive — nothing forces
/// positivity, hermiticity, or normalisation — so defective inputs can be
/// represented and then diagnosed with check_state.  Stores a pointer to its
/// parent groupoid, which must outlive the state.
class State {
public:
    explicit State(const Groupoid& parent);
    static State from_values(const Groupoid& parent, std::unordered_map<int, cplx> values);

    const Groupoid& parent() const { return *parent_; }

    /// Amplitude at a transition (zero when unsupported).
    cplx value(int transition_id) const;

    State& set_value(int transition_id, cplx value);

    /// Supported transition ids, ascending.
    std::vector<int> support() const;

private:
    const Groupoid* parent_;
    std::unordered_map<int, cplx> values_;
};

/// Linear extension: the sum of coefficient times amplitude over the support.
cplx expectation(const State& rho, const AlgebraElement& element);

/// Diagnostics for a candidate state.  The Gram matrix pairs transitions with
/// a common target; positivity asks it to be Hermitian and positive
/// semidefinite within tolerance.
struct StateReport {
    double hermiticity_defect = 0.0;  // max |amplitude(inverse) - conj(amplitude)|
    bool hermitian = false;
    double min_gram_eigenvalue = 0.0;
    bool positive = false;
    cplx unit_mass;  // expectation of the algebra unit
    bool normalized = false;
    double unitarity_defect = 0.0;  // max |amplitude(inverse)*amplitude - 1| over the support
    bool unitary = false;
    double factorization_defect = 0.0;  // max |amplitude(a∘b) - amplitude(a)*amplitude(b)|
    bool factorizable = false;
};

StateReport check_state(const State& rho);

/// Conditioning on a subobject: divides amplitudes by the mass the state
/// gives the subgroupoid's units.  `sub` must share its parent's ids (as the
/// restriction and padded-factor constructions do).  Throws when the mass is
/// negligible.
State restrict_state(const State& rho, const Groupoid& sub);

/// Classical uniform state: equal weight on every unit, zero elsewhere.
State uniform_unit_state(const Groupoid& g);

/// The unnormalised state with amplitude one everywhere.
State all_ones_state(const Groupoid& g);

/// Vector state: amplitude conj(v[target]) * v[source], with v indexed by
/// outcome declaration order.
State pure_state_from_vector(const Groupoid& g, const std::vector<cplx>& v);

/// Convex (or affine) combination of states over one groupoid.
State mix(const std::vector<std::pair<double, State>>& ensemble);

/// Product state on a direct product: the amplitude of a tuple is the
/// product of the factor amplitudes.
State separable_state(const DirectProduct& dp, const std::vector<State>& factor_states);

}  // namespace groupoidal

#endif

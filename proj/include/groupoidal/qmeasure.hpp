#ifndef GROUPOIDAL_QMEASURE_HPP
#define GROUPOIDAL_QMEASURE_HPP

#include <set>
#include <vector>

#include "groupoidal/algebra.hpp"
#include "groupoidal/states.hpp"

namespace groupoidal {

/// A finite set of transitions of one groupoid, viewed as an event in the
/// history space.  Stores a pointer to its parent groupoid, which must
/// outlive the event.
struct Event {
    const Groupoid* parent = nullptr;
    std::set<int> transitions;
};

/// Validates ids and builds the event.
Event make_event(const Groupoid& g, const std::vector<int>& transition_ids);

/// All transitions arriving at an outcome — its unit included.
Event arrival_event(const Groupoid& g, int outcome_id);

bool disjoint(const Event& a, const Event& b);
Event event_union(const Event& a, const Event& b);

/// Sum of basis elements over the event.
AlgebraElement indicator(const Event& event);

/// Decoherence pairing: the sum of amplitude(σ⁻¹ ∘ σ′) over pairs from the
/// two events whose inverses compose (equivalently, pairs sharing a target).
cplx decoherence(const State& rho, const Event& a, const Event& b);

/// Diagonal of the pairing.  Real for hermitian states; the real part is
/// returned.
double quantum_measure(const State& rho, const Event& a);

/// Same quantity through the algebra: the expectation of indicator* ⋆
/// indicator.  Kept as an independent code path for cross-checking.
double quantum_measure_dual(const State& rho, const Event& a);

/// Additivity defect μ(a ⊔ b) − μ(a) − μ(b) of two disjoint events; throws
/// std::invalid_argument when they overlap.
double interference(const State& rho, const Event& a, const Event& b);

}  // namespace groupoidal

#endif

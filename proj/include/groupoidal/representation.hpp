#ifndef GROUPOIDAL_REPRESENTATION_HPP
#define GROUPOIDAL_REPRESENTATION_HPP

#include <Eigen/Dense>
#include <unordered_map>

#include "groupoidal/algebra.hpp"
#include "groupoidal/states.hpp"

namespace groupoidal {

/// A finite-dimensional *-representation: one matrix per transition,
/// extended linearly to algebra elements by act().
struct MatrixRepresentation {
    const Groupoid* parent = nullptr;
    int dimension = 0;
    std::unordered_map<int, Eigen::MatrixXcd> matrices;

    const Eigen::MatrixXcd& matrix(int transition_id) const;

    /// Image of an algebra element: coefficient-weighted sum of matrices.
    Eigen::MatrixXcd act(const AlgebraElement& element) const;
};

/// Largest violation of the representation laws: products follow the
/// composition table (non-composable pairs multiply to zero), inverses map
/// to adjoints, and the units sum to the identity.
double representation_defect(const MatrixRepresentation& rep);

/// Outcome-space representation: dimension |outcomes|, each transition acts
/// as the matrix unit from its source position to its target position.
MatrixRepresentation fundamental_representation(const Groupoid& g);

/// Convolution action on the algebra itself: dimension |transitions|.
MatrixRepresentation left_regular_representation(const Groupoid& g);

/// Representation induced by a state on the quotient of the algebra by the
/// null space of the state's Gram matrix, together with the class of the
/// algebra unit as cyclic vector.  The defining property
/// amplitude(σ) = ⟨cyclic, π(σ) cyclic⟩ holds by construction.
struct GnsResult {
    MatrixRepresentation representation;
    Eigen::VectorXcd cyclic_vector;
    int rank = 0;
};

/// Throws std::invalid_argument when the state is not positive
/// semidefinite within tolerance.
GnsResult gns_representation(const State& rho);

}  // namespace groupoidal

#endif

#ifndef GROUPOIDAL_ALGEBRA_HPP
#define GROUPOIDAL_ALGEBRA_HPP

#include <complex>
#include <unordered_map>
#include <vector>

#include "groupoidal/groupoid.hpp"

namespace groupoidal {

using cplx = std::complex<double>;

/// Element of the convolution *-algebra of a groupoid: a finitely supported
/// complex function on transitions.  Stores a pointer to its parent groupoid,
/// which must outlive the element.  Coefficients below the pruning threshold
/// are dropped after every operation, so support() stays meaningful.
class AlgebraElement {
public:
    /// The zero element.
    explicit AlgebraElement(const Groupoid& parent);

    /// The basis element supported on a single transition.
    static AlgebraElement delta(const Groupoid& parent, int transition_id);

    const Groupoid& parent() const { return *parent_; }

    /// Coefficient at a transition (zero when unsupported).
    cplx coefficient(int transition_id) const;

    /// Sets one coefficient, pruning it if negligible.
    AlgebraElement& set_coefficient(int transition_id, cplx value);

    /// Supported transition ids, ascending.
    std::vector<int> support() const;

    std::size_t term_count() const { return coeffs_.size(); }
    bool is_zero() const { return coeffs_.empty(); }

    AlgebraElement& operator+=(const AlgebraElement& other);
    AlgebraElement& operator-=(const AlgebraElement& other);
    AlgebraElement& operator*=(cplx scalar);

    /// Conjugate-linear involution: coefficient at σ becomes the conjugate of
    /// the coefficient at σ⁻¹.
    AlgebraElement adjoint() const;

    /// ℓ² norm of the coefficient vector.
    double norm() const;

private:
    const Groupoid* parent_;
    std::unordered_map<int, cplx> coeffs_;

    void add_(int transition_id, cplx value);
    friend AlgebraElement convolve(const AlgebraElement&, const AlgebraElement&);
};

AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs);
AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs);
AlgebraElement operator*(cplx scalar, AlgebraElement elem);
AlgebraElement operator*(AlgebraElement elem, cplx scalar);

/// Convolution product: (f ⋆ g)(γ) sums f(α)g(β) over factorisations γ = α∘β.
AlgebraElement convolve(const AlgebraElement& lhs, const AlgebraElement& rhs);

/// operator* is convolution.
AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs);

/// Multiplicative unit: the sum of all unit transitions.
AlgebraElement algebra_unit(const Groupoid& g);

/// Coefficientwise comparison within tolerance.
bool approx_equal(const AlgebraElement& lhs, const AlgebraElement& rhs, double tolerance = 1e-9);

}  // namespace groupoidal

#endif

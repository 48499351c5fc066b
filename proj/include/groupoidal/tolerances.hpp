#ifndef GROUPOIDAL_TOLERANCES_HPP
#define GROUPOIDAL_TOLERANCES_HPP

namespace groupoidal::tol {

/// Coefficients at or below this magnitude are dropped after arithmetic.
inline constexpr double prune = 1e-14;

/// Default tolerance for approximate comparisons of scalars and elements.
inline constexpr double compare = 1e-9;

/// A Gram matrix counts as positive when its least eigenvalue exceeds -psd.
inline constexpr double psd = 1e-9;

/// Gram eigenvalues at or below this are treated as null directions.
inline constexpr double null_space = 1e-10;

/// Restricting a state requires at least this much mass on the subobject.
inline constexpr double restrict_mass = 1e-12;

}  // namespace groupoidal::tol

#endif

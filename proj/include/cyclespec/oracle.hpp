#pragma once

// Brute-force reference for the spectrum. It works on the explicit matrix
// entries only (no Chebyshev forms, no eta or phi) so it can referee the
// specialized solvers.

#include <vector>

#include "cyclespec/model.hpp"

namespace cyclespec {

struct InertiaResult {
  /// Shift actually used (after any collision nudges).
  Real shift;
  /// Number of eigenvalues below `shift`.
  long negatives = 0;
  /// Diagonal of D in L(Re alpha) - shift I = L D L^T.
  std::vector<Real> pivots;

  explicit InertiaResult(long bits) : shift(bits) {}
};

/// det(lambda I - L) by the leading-principal-minor recurrence of the
/// periodic tridiagonal matrix, in complex arithmetic with the full alpha.
Real det_recurrence(const SpectralProblem& problem, const Real& lambda, const PrecisionContext& ctx);

/// Sylvester inertia of L(Re alpha) - shift I by bordered symmetric
/// elimination in O(n). A zero pivot nudges the shift by 4 eps (up to 3
/// times) before raising SingularShift.
InertiaResult count_below(const SpectralProblem& problem, const Real& shift, const PrecisionContext& ctx);

/// All n eigenvalues, ascending. Inertia bisection on [Omega - 1, 5]
/// isolates each eigenvalue, a bracketed Newton iteration on the
/// determinant recurrence refines it; multiple eigenvalues are bisected by
/// inertia to width 2^(-bits/2). Requires n <= 256.
std::vector<Real> oracle_spectrum(const SpectralProblem& problem, const PrecisionContext& ctx);

inline constexpr long kOracleMaxOrder = 256;

}  // namespace cyclespec

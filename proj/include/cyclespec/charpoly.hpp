#pragma once

// The Laplacian L(alpha, n) and its characteristic polynomial
// D(lambda) = det(lambda I - L) in closed Chebyshev form, factored p*q form,
// and the trigonometric/hyperbolic forms obtained from lambda = g(x) and
// lambda = g_minus(x).

#include <vector>

#include "cyclespec/model.hpp"

namespace cyclespec {

/// Path graph Laplacian on n vertices closed by an edge of weight alpha:
/// diagonal (1+conj(alpha), 2, ..., 2, 1+alpha), off-diagonals -1, corners
/// (1,n) = -conj(alpha) and (n,1) = -alpha.
class LaplacianMatrix {
 public:
  LaplacianMatrix(const SpectralProblem& problem, const PrecisionContext& ctx);

  long order() const { return n_; }
  /// Zero-based entry (i, j).
  Complex entry(long i, long j) const;
  /// Row-major dense copy.
  std::vector<Complex> dense() const;
  /// L v in O(n).
  std::vector<Complex> apply(const std::vector<Complex>& v) const;
  /// L v - lambda v.
  std::vector<Complex> residual(const std::vector<Complex>& v, const Real& lambda) const;

 private:
  long n_;
  long bits_;
  Complex alpha_;
};

LaplacianMatrix build_matrix(const SpectralProblem& problem, const PrecisionContext& ctx);

/// T_m(x) and U_m(x). Three-term recurrence for |x| <= 1, cosh/sinh closed
/// forms for |x| > 1.
Real chebyshev_T(long m, const Real& x);
Real chebyshev_U(long m, const Real& x);

/// D(lambda) for Re(alpha); alpha may be any complex number.
Real charpoly_value(const SpectralProblem& problem, const Real& lambda);

struct PQ {
  Real p;
  Real q;
};
/// p_n(t) = (t^2-4) U_{n-1}(t/2),  q(t) = (1-a) T_n(t/2) + a (t/2) U_{n-1}(t/2).
PQ pq_values(const SpectralProblem& problem, const Real& t);

/// D(g(x)) for 0 < x < pi.
Real charpoly_trig(const SpectralProblem& problem, const Real& x);
/// D(g_minus(x)) for x > 0.
Real charpoly_hyp(const SpectralProblem& problem, const Real& x);

}  // namespace cyclespec

#pragma once

// Eigenvectors in closed form, their exact and asymptotic norms, and the
// continuous profiles w(x) that interpolate the components.
//
// Components use the full complex alpha (through conj(alpha)); the roots z
// and s depend on Re(alpha) only.

#include <utility>
#include <vector>

#include "cyclespec/spectrum.hpp"

namespace cyclespec {

struct EigenvectorRecord {
  long j = 0;
  Real lambda;
  std::vector<Complex> components;
  Real norm_exact;
  Real norm_asympt;
  /// ||L v - lambda v||_2 / ||v||_2
  Real residual;
  bool normalized = false;

  explicit EigenvectorRecord(long bits) : lambda(bits), norm_exact(bits), norm_asympt(bits), residual(bits) {}
};

/// Unnormalized components for the eigenvalue in `record`.
std::vector<Complex> eigenvector_components(const SpectralProblem& problem, const EigenvalueRecord& record,
                                            const PrecisionContext& ctx);

/// Components, norms and residual; `normalize` divides by norm_exact.
EigenvectorRecord eigenvector(const SpectralProblem& problem, const EigenvalueRecord& record,
                              const PrecisionContext& ctx, bool normalize = false);

/// Euclidean norm of a complex vector.
Real direct_norm(const std::vector<Complex>& v);

/// Closed-form norm of the eigenvector built from `record`.
Real norm_exact(const SpectralProblem& problem, const EigenvalueRecord& record, const PrecisionContext& ctx);
/// Same, solving for lambda_j first.
Real norm_exact(const SpectralProblem& problem, long j, const PrecisionContext& ctx);

/// The three summands of ||v_1||^2.
struct OutlierNormTerms {
  Real u1;
  Real u2;
  Real u3;
};
OutlierNormTerms outlier_norm_terms(const SpectralProblem& problem, const Real& s, const Real& lambda1);

/// sqrt(nu(d_{n,j}) n) for even j >= 4, mu (1 - 2a)^n for j = 1, the exact
/// closed form for odd j >= 3 and sqrt(n) for the constant vector (j = 2).
Real norm_asympt(const SpectralProblem& problem, long j, const PrecisionContext& ctx);

/// w(x) on `samples` equally spaced points of [0, n] (samples >= 2).
std::vector<std::pair<Real, Complex>> profile(const SpectralProblem& problem, const EigenvalueRecord& record,
                                              long samples, const PrecisionContext& ctx);

/// w(x) at a single point.
Complex profile_at(const SpectralProblem& problem, const EigenvalueRecord& record, const Real& x);

/// Hermitian inner product sum conj(a_k) b_k.
Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace cyclespec

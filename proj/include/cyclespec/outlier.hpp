#pragma once

// The negative outlier lambda_1 = g_minus(s) for n > kappa, where s is the
// unique positive root of tanh(n x/2) = kappa tanh(x/2), equivalently the
// fixed point of phi on (0, omega).

#include <vector>

#include "cyclespec/inner.hpp"

namespace cyclespec {

struct OutlierSolution {
  Real s;
  Real lambda1;
  Real ell;
  Provenance method = Provenance::kNewton;
  long iterations = 0;
  std::vector<Real> iterates;

  explicit OutlierSolution(long bits) : s(bits), lambda1(bits), ell(bits) {}
};

/// f(x) = x - phi(x) and f'(x).
Real outlier_f(const SpectralProblem& problem, const Real& x);
Real outlier_f_d1(const SpectralProblem& problem, const Real& x);

/// Newton on f from omega; iterates decrease monotonically to s.
OutlierSolution solve_outlier_newton(const SpectralProblem& problem, const PrecisionContext& ctx,
                                     const SolveOptions& opts = {});

/// x -> phi(x) from omega.
OutlierSolution solve_outlier_fixed_point(const SpectralProblem& problem, const PrecisionContext& ctx,
                                          const SolveOptions& opts = {});

/// Bisection of f on [ell, omega].
OutlierSolution solve_outlier_bisection(const SpectralProblem& problem, const PrecisionContext& ctx,
                                        const SolveOptions& opts = {});

OutlierSolution solve_outlier(const SpectralProblem& problem, const PrecisionContext& ctx, Method method,
                              const SolveOptions& opts = {});

/// lambda_2 - lambda_1 = |lambda_1| for n > kappa, 0 for n = kappa.
Real outlier_gap(const SpectralProblem& problem, const PrecisionContext& ctx);

/// Record form of a solution (j = 1, root = s, bracket [ell, omega]).
EigenvalueRecord outlier_record(const SpectralProblem& problem, const OutlierSolution& sol,
                                const PrecisionContext& ctx);

namespace detail {

/// Fixed-point iteration with direct evaluation of phi at every step.
OutlierSolution solve_outlier_fixed_point_reference(const SpectralProblem& problem, const PrecisionContext& ctx);

}  // namespace detail

}  // namespace cyclespec

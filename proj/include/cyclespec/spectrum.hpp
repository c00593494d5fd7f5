#pragma once

// Assembly of all n eigenvalues from the exact odd-j values, the inner
// solvers and the outlier solver.

#include <vector>

#include "cyclespec/outlier.hpp"

namespace cyclespec {

/// One record per j = 1..n, sorted by j. Odd j >= 3 are exact, j = 1 and
/// j = 2 follow the n vs kappa case split, even j >= 4 use `method`
/// (bisection whenever n < N_alpha). kAuto runs Newton and falls back to
/// the fixed-point iteration on a BracketViolation. Per-j solves run on
/// OpenMP threads; the result does not depend on the schedule.
std::vector<EigenvalueRecord> full_spectrum(const SpectralProblem& problem, const PrecisionContext& ctx,
                                            Method method = Method::kAuto);

/// Single-threaded reference of full_spectrum.
std::vector<EigenvalueRecord> full_spectrum_serial(const SpectralProblem& problem, const PrecisionContext& ctx,
                                                   Method method = Method::kAuto);

/// The record for one index j.
EigenvalueRecord solve_index(const SpectralProblem& problem, long j, const PrecisionContext& ctx, Method method,
                             const SolveOptions& opts = {});

/// Eigenvalues only.
std::vector<Real> eigenvalues(const std::vector<EigenvalueRecord>& records);

}  // namespace cyclespec

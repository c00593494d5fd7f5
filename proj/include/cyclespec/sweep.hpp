#pragma once

// Verification sweep over a grid of (alpha, n): eigenvector residuals,
// cross-method agreement, oracle agreement and the trace identity, checked
// against thresholds that scale with the working precision.

#include <optional>
#include <vector>

#include "cyclespec/model.hpp"

namespace cyclespec {

/// Rational alpha in [-3, 0) with denominator <= 3 (12 values, ascending).
std::vector<Rational> default_sweep_alphas();

/// Externally computed eigenvalue (e.g. from a general eigensolver).
struct ReferenceEigenvalue {
  Rational alpha;
  long n;
  long j;
  Real lambda;
};

struct SweepConfig {
  std::vector<Rational> alphas = default_sweep_alphas();
  /// 0 means N_alpha for each alpha.
  long n_min = 0;
  long n_max = 256;
  /// Oracle comparison for n <= oracle_max_n (0 disables it).
  long oracle_max_n = 64;
  std::vector<ReferenceEigenvalue> reference;
};

struct SweepRow {
  Rational alpha;
  long n = 0;
  /// max_j ||L v_j - lambda_j v_j|| over normalized v_j.
  Real max_residual;
  /// max_j |lambda^N - lambda^bisec| and |lambda^fp - lambda^N|.
  Real newton_vs_bisection;
  Real fixed_point_vs_newton;
  std::optional<Real> oracle_diff;
  std::optional<Real> reference_diff;
  /// |sum lambda - (2n - 2 + 2a)|.
  Real trace_error;

  explicit SweepRow(long bits)
      : max_residual(bits), newton_vs_bisection(bits), fixed_point_vs_newton(bits), trace_error(bits) {}
};

/// Pass thresholds at a given precision. At 3322 bits they are the values
/// 1e-996 (residual) and 1e-998 (method differences); they scale by
/// 2^(3322 - bits) otherwise.
struct SweepThresholds {
  Real residual;
  Real method_diff;
  Real oracle_diff;     // 2^(-bits/2)
  Real reference_diff;  // 1e-792 at 3322 bits, 10^(-792 bits/3322) otherwise
  Real trace;           // 100 eps

  explicit SweepThresholds(const PrecisionContext& ctx);
};

struct SweepSummary {
  long bits;
  std::vector<SweepRow> rows;  // sorted by (alpha, n)
  Real max_residual;
  Real max_newton_vs_bisection;
  Real max_fixed_point_vs_newton;
  std::optional<Real> max_oracle_diff;
  std::optional<Real> max_reference_diff;
  Real max_trace_error;
  SweepThresholds thresholds;

  bool residual_ok() const { return max_residual < thresholds.residual; }
  bool methods_ok() const {
    return max_newton_vs_bisection < thresholds.method_diff && max_fixed_point_vs_newton < thresholds.method_diff;
  }
  bool oracle_ok() const { return !max_oracle_diff || *max_oracle_diff <= thresholds.oracle_diff; }
  bool reference_ok() const { return !max_reference_diff || *max_reference_diff < thresholds.reference_diff; }
  bool trace_ok() const { return max_trace_error <= thresholds.trace; }
  bool passed() const { return residual_ok() && methods_ok() && oracle_ok() && reference_ok() && trace_ok(); }

  explicit SweepSummary(const PrecisionContext& ctx);
};

/// One (alpha, n) job.
SweepRow sweep_row(const SpectralProblem& problem, const SweepConfig& config, const PrecisionContext& ctx);

/// All jobs, run concurrently on OpenMP threads; the result does not depend
/// on the schedule.
SweepSummary run_sweep(const SweepConfig& config, const PrecisionContext& ctx);

}  // namespace cyclespec

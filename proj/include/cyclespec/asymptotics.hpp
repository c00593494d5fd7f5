#pragma once

// Closed-form approximations of the eigenvalues and the error reports that
// reproduce the published error tables.

#include <optional>
#include <vector>

#include "cyclespec/spectrum.hpp"

namespace cyclespec {

/// Lambda(d_{n,j}) = g + g' eta / n + (g' eta eta' + g'' eta^2 / 2) / n^2 at
/// d_{n,j}; even 2 <= j <= n.
Real lambda_asympt_inner(const SpectralProblem& problem, long j, const PrecisionContext& ctx);

/// d_{n,j} + eta(d)/n (order 1) or d + eta(d)/n + eta(d) eta'(d)/n^2 (order 2).
Real z_asympt(const SpectralProblem& problem, long j, int order, const PrecisionContext& ctx);

/// e^{-n omega} = (1 - 2a)^{-n}, exact before rounding.
Real exp_minus_n_omega(const SpectralProblem& problem, const PrecisionContext& ctx);

/// omega - g1 e^{-n omega} - g1^2 n e^{-2 n omega} + g2 e^{-2 n omega}.
Real s_asympt(const SpectralProblem& problem, const PrecisionContext& ctx);

/// Omega + b1 e^{-n omega} + b2 n e^{-2 n omega} - b3 e^{-2 n omega}.
Real lambda_asympt_outlier(const SpectralProblem& problem, const PrecisionContext& ctx);

struct AsymptoticEntry {
  long j;
  Real lambda_exact;
  Real lambda_asympt;
  Real error;  // lambda_asympt - lambda_exact
};

struct AsymptoticReport {
  Rational alpha;
  long n = 0;
  /// Even j >= 2 (when requested).
  std::vector<AsymptoticEntry> entries;
  /// max |R| over even 4 <= j <= n, and n^3 times it.
  Real max_abs_error;
  Real scaled_inner;
  /// Same maximum with j = 2 included.
  Real max_abs_error_with_j2;
  /// Outlier error R_1 and |R_1| n^-2 e^{3 n omega}; present for n > kappa.
  std::optional<Real> outlier_error;
  std::optional<Real> scaled_outlier;

  explicit AsymptoticReport(long bits)
      : max_abs_error(bits), scaled_inner(bits), max_abs_error_with_j2(bits) {}
};

struct ReportOptions {
  bool inner = true;
  bool outlier = true;
  bool keep_entries = false;
};

/// Errors of the asymptotic formulas against Newton eigenvalues.
AsymptoticReport asymptotic_report(const SpectralProblem& problem, const PrecisionContext& ctx,
                                   const ReportOptions& opts = {});

/// One report per n; each n must be >= N_alpha.
std::vector<AsymptoticReport> error_table(const Rational& alpha, const std::vector<long>& n_list,
                                          const PrecisionContext& ctx, const ReportOptions& opts = {});

/// Decimal rendering with `digits` significant digits ("2.84e-05").
std::string display(const Real& x, int digits = 3);

}  // namespace cyclespec

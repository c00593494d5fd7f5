#pragma once

// Eigenvalues of L(alpha, n) inside [0, 4].
//
// Odd j >= 3 are exact: lambda_j = g(d_{n,j}). For even j the root z of
//   h(x) = n x - (j-1) pi - eta(x)
// in I_{n,j} = (d_{n,j-1}, d_{n,j}) gives lambda_j = g(z). Three solvers
// are provided: guarded Newton from d_{n,j}, the contraction
// x -> d_{n,j} + eta(x)/n, and bisection.

#include <optional>
#include <string_view>
#include <vector>

#include "cyclespec/model.hpp"

namespace cyclespec {

enum class Method { kAuto, kNewton, kFixedPoint, kBisection };

std::string_view to_string(Method m);
Method parse_method(std::string_view text);

/// How a record's eigenvalue was obtained.
enum class Provenance { kExactOdd, kNewton, kFixedPoint, kBisection, kZero };

std::string_view to_string(Provenance p);

/// Which change of variables the record's root refers to.
enum class RootKind {
  kInner,    // lambda = g(root), root in [0, pi]
  kOutlier,  // lambda = g_minus(root), root in (0, omega)
  kNone,     // lambda = 0 without a root variable
};

struct EigenvalueRecord {
  long j = 0;
  Real lambda;
  Real root;
  RootKind root_kind = RootKind::kNone;
  Provenance method = Provenance::kZero;
  /// Bracket of `root` (same variable as root).
  Real bracket_lo;
  Real bracket_hi;
  long iterations = 0;
  /// Iterates y^(0), y^(1), ... when requested through SolveOptions.
  std::vector<Real> iterates;

  explicit EigenvalueRecord(long bits) : lambda(bits), root(bits), bracket_lo(bits), bracket_hi(bits) {}
};

struct SolveOptions {
  bool keep_iterates = false;
};

/// Localization interval for lambda_j. `exact` intervals are points.
struct LambdaBracket {
  long j;
  Real lo;
  Real hi;
  bool exact;
};

/// Theorem-style localization of all n eigenvalues.
std::vector<LambdaBracket> localize(const SpectralProblem& problem, const PrecisionContext& ctx);

/// h(x) = n x - (j-1) pi - eta(x) and its derivative.
Real inner_h(const SpectralProblem& problem, long j, const Real& x);
Real inner_h_d1(const SpectralProblem& problem, long j, const Real& x);

/// Guarded Newton on h from d_{n,j}; requires n >= N_alpha, even 4 <= j <= n.
EigenvalueRecord solve_inner_newton(const SpectralProblem& problem, long j, const PrecisionContext& ctx,
                                    const SolveOptions& opts = {});

/// Fixed-point iteration x -> d_{n,j} + eta(x)/n; same preconditions as Newton.
EigenvalueRecord solve_inner_fixed_point(const SpectralProblem& problem, long j, const PrecisionContext& ctx,
                                         const SolveOptions& opts = {});

/// Bisection on the secular equation over I_{n,j}; even 2 <= j <= n, any n.
/// Throws BracketError on the double zero (n = kappa, j = 2).
EigenvalueRecord solve_inner_bisection(const SpectralProblem& problem, long j, const PrecisionContext& ctx,
                                       const SolveOptions& opts = {});

/// Exact record for odd j >= 3.
EigenvalueRecord exact_odd_record(const SpectralProblem& problem, long j, const PrecisionContext& ctx);

/// Record for an eigenvalue that is exactly zero.
EigenvalueRecord zero_record(long j, const PrecisionContext& ctx);

namespace detail {

/// Reference bisection: direct full-precision evaluation of h at every
/// midpoint. Kept for testing the production bisection.
EigenvalueRecord solve_inner_bisection_reference(const SpectralProblem& problem, long j,
                                                 const PrecisionContext& ctx);

/// Reference fixed-point iteration with direct evaluation of eta.
EigenvalueRecord solve_inner_fixed_point_reference(const SpectralProblem& problem, long j,
                                                   const PrecisionContext& ctx);

/// Stopping tolerance 2^(-bits+8) max(1, |x|).
Real step_tolerance(const Real& x, long bits);

/// Iteration cap for a contraction with Lipschitz constant `lipschitz`
/// (double): at least `bits`, enough for full precision otherwise.
long contraction_cap(double lipschitz, long bits);

}  // namespace detail

}  // namespace cyclespec

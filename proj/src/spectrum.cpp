#include "cyclespec/spectrum.hpp"

#include <exception>
#include <optional>

namespace cyclespec {

EigenvalueRecord solve_index(const SpectralProblem& problem, long j, const PrecisionContext& ctx, Method method,
                             const SolveOptions& opts) {
  problem.require_negative();
  const long n = problem.n();
  if (j < 1 || j > n) throw DomainError("index j out of range 1..n");
  const int side = problem.compare_n_kappa();
  if (j == 1) {
    if (side <= 0) return zero_record(1, ctx);
    return outlier_record(problem, solve_outlier(problem, ctx, method, opts), ctx);
  }
  if (j == 2) {
    if (side >= 0) return zero_record(2, ctx);
    return solve_inner_bisection(problem, 2, ctx, opts);
  }
  if (j % 2 == 1) return exact_odd_record(problem, j, ctx);
  if (n < problem.n_alpha()) return solve_inner_bisection(problem, j, ctx, opts);
  switch (method) {
    case Method::kNewton: return solve_inner_newton(problem, j, ctx, opts);
    case Method::kFixedPoint: return solve_inner_fixed_point(problem, j, ctx, opts);
    case Method::kBisection: return solve_inner_bisection(problem, j, ctx, opts);
    case Method::kAuto: break;
  }
  try {
    return solve_inner_newton(problem, j, ctx, opts);
  } catch (const BracketViolation&) {
    return solve_inner_fixed_point(problem, j, ctx, opts);
  }
}

std::vector<EigenvalueRecord> full_spectrum_serial(const SpectralProblem& problem, const PrecisionContext& ctx,
                                                   Method method) {
  problem.require_negative();
  std::vector<EigenvalueRecord> out;
  out.reserve(static_cast<std::size_t>(problem.n()));
  for (long j = 1; j <= problem.n(); ++j) out.push_back(solve_index(problem, j, ctx, method));
  return out;
}

std::vector<EigenvalueRecord> full_spectrum(const SpectralProblem& problem, const PrecisionContext& ctx,
                                            Method method) {
  problem.require_negative();
  const long n = problem.n();
  std::vector<std::optional<EigenvalueRecord>> slots(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic, 1)
  for (long j = 1; j <= n; ++j) {
    try {
      slots[j - 1].emplace(solve_index(problem, j, ctx, method));
    } catch (...) {
      errors[j - 1] = std::current_exception();
    }
  }
  // Report the failure with the smallest j, independent of the schedule.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<EigenvalueRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<Real> eigenvalues(const std::vector<EigenvalueRecord>& records) {
  std::vector<Real> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.lambda);
  return out;
}

}  // namespace cyclespec

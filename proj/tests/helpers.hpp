#pragma once

#include <random>

#include "cyclespec/numeric.hpp"

namespace testing {

using cyclespec::Real;

/// |a - b| <= tol
inline bool near(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

/// |a - b| / |b| (|a - b| when b = 0)
inline Real rel_diff(const Real& a, const Real& b) {
  const Real d = abs(a - b);
  return b.is_zero() ? d : d / abs(b);
}

/// Random rational in (lo, hi) with denominator `den`, never an endpoint.
inline cyclespec::Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> pick(lo * den + 1, hi * den - 1);
  cyclespec::Rational q(pick(rng), den);
  q.canonicalize();
  return q;
}

}  // namespace testing

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace innerlab {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using VectorXr = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Error taxonomy shared by every module.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// 1 - conj(a) * w with the real part formed from error-free products, so
/// that points clustered near the circle keep their relative accuracy.
inline Complex one_minus_conj_mul(const Complex& a, const Complex& w) {
  const double ar = a.real(), ai = a.imag(), wr = w.real(), wi = w.imag();
  const double p = ar * wr;
  const double pe = std::fma(ar, wr, -p);
  const double q = ai * wi;
  const double qe = std::fma(ai, wi, -q);
  const double re = ((1.0 - p) - q) - (pe + qe);
  const double im = -(ar * wi - ai * wr);
  return {re, im};
}

/// Pseudohyperbolic distance |z - w| / |1 - conj(z) w|.
inline double pseudo_hyperbolic(const Complex& z, const Complex& w) {
  const double den = std::abs(one_minus_conj_mul(z, w));
  if (den == 0.0) {
    throw UsageError("rho: denominator vanishes (both points on the circle)");
  }
  return std::min(1.0, std::abs(z - w) / den);
}

/// 1 - |z| computed without cancellation for real-axis points.
inline double boundary_distance(const Complex& z) { return 1.0 - std::abs(z); }

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

/// Principal angle of a point on the circle, in [0, 2pi).
inline double circle_angle(const Complex& z) {
  double t = std::arg(z);
  if (t < 0.0) t += kTwoPi;
  return t;
}

}  // namespace innerlab

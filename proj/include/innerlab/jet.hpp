#pragma once

#include <utility>

#include <Eigen/Core>

#include "innerlab/core.hpp"
#include "innerlab/rational.hpp"

namespace innerlab {

/// Truncated Taylor expansion of an analytic function at a point.
///
/// Stores Taylor coefficients c_i = f^(i)(center) / i!, i = 0..order, so that
/// products are plain Cauchy products. Derivatives are recovered by
/// derivative(l) = l! c_l. Scalar is Complex (floating point) or
/// GaussRational (exact).
template <class Scalar>
class Jet {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Traits = ScalarTraits<Scalar>;

  Jet() = default;

  Jet(Scalar center, int order) : center_(std::move(center)), coeffs_(checked_size(order)) {
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_[i] = Traits::from_int(0);
  }

  Jet(Scalar center, Coeffs coeffs) : center_(std::move(center)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) throw UsageError("jet needs at least one coefficient");
  }

  static Jet constant(const Scalar& center, int order, const Scalar& value) {
    Jet j(center, order);
    j.coeffs_[0] = value;
    return j;
  }

  /// Jet of the identity map z at the center.
  static Jet variable(const Scalar& center, int order) {
    Jet j(center, order);
    j.coeffs_[0] = center;
    if (order >= 1) j.coeffs_[1] = Traits::from_int(1);
    return j;
  }

  const Scalar& center() const { return center_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Coeffs& coeffs() const { return coeffs_; }
  const Scalar& coeff(int i) const { return coeffs_[i]; }
  Scalar& coeff(int i) { return coeffs_[i]; }
  const Scalar& value() const { return coeffs_[0]; }

  Scalar derivative(int l) const {
    if (l < 0 || l > order()) throw UsageError("derivative order exceeds jet order");
    return Traits::factorial_of(l) * coeffs_[l];
  }

  Jet& operator+=(const Jet& o) {
    check_compatible(o);
    for (int i = 0; i <= order(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check_compatible(o);
    for (int i = 0; i <= order(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Jet& operator*=(const Scalar& s) {
    for (int i = 0; i <= order(); ++i) coeffs_[i] *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(const Jet& a) {
    Jet r = a;
    for (int i = 0; i <= r.order(); ++i) r.coeffs_[i] = -r.coeffs_[i];
    return r;
  }
  friend Jet operator*(Jet a, const Scalar& s) { return a *= s; }
  friend Jet operator*(const Scalar& s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    const int m = a.order();
    Jet r(a.center_, m);
    for (int i = 0; i <= m; ++i) {
      if (Traits::is_zero(a.coeffs_[i])) continue;
      for (int j = 0; i + j <= m; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    if (Traits::is_zero(b.coeffs_[0])) throw SingularityError("jet division by a jet vanishing at the center");
    const int m = a.order();
    Jet q(a.center_, m);
    for (int n = 0; n <= m; ++n) {
      Scalar acc = a.coeffs_[n];
      for (int k = 1; k <= n; ++k) acc -= b.coeffs_[k] * q.coeffs_[n - k];
      q.coeffs_[n] = acc / b.coeffs_[0];
    }
    return q;
  }

  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  /// Taylor polynomial evaluated at the displacement h from the center.
  Scalar evaluate_offset(const Scalar& h) const {
    Scalar acc = coeffs_[order()];
    for (int i = order() - 1; i >= 0; --i) acc = acc * h + coeffs_[i];
    return acc;
  }

 private:
  static Eigen::Index checked_size(int order) {
    if (order < 0) throw UsageError("jet order must be nonnegative");
    return order + 1;
  }

  void check_compatible(const Jet& o) const {
    if (!(center_ == o.center_)) throw UsageError("jet centers differ");
    if (order() != o.order()) throw UsageError("jet orders differ");
  }

  Scalar center_{};
  Coeffs coeffs_;
};

using JetC = Jet<Complex>;
using JetQ = Jet<GaussRational>;

enum class JetOp { kAdd, kSub, kMul, kDiv };

template <class Scalar>
Jet<Scalar> jet_arith(const Jet<Scalar>& a, const Jet<Scalar>& b, JetOp op) {
  switch (op) {
    case JetOp::kAdd: return a + b;
    case JetOp::kSub: return a - b;
    case JetOp::kMul: return a * b;
    case JetOp::kDiv: return a / b;
  }
  throw UsageError("unknown jet operation");
}

/// Nonnegative integer power by repeated squaring; negative powers divide.
template <class Scalar>
Jet<Scalar> pow(const Jet<Scalar>& base, int n) {
  using Traits = ScalarTraits<Scalar>;
  Jet<Scalar> one = Jet<Scalar>::constant(base.center(), base.order(), Traits::from_int(1));
  if (n < 0) return one / pow(base, -n);
  Jet<Scalar> result = one;
  Jet<Scalar> sq = base;
  while (n > 0) {
    if (n & 1) result = result * sq;
    n >>= 1;
    if (n > 0) sq = sq * sq;
  }
  return result;
}

/// exp of a floating-point jet: n v_n = sum_k k u_k v_{n-k}.
inline JetC exp(const JetC& u) {
  const int m = u.order();
  JetC v(u.center(), m);
  v.coeff(0) = std::exp(u.coeff(0));
  for (int n = 1; n <= m; ++n) {
    Complex acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += static_cast<double>(k) * u.coeff(k) * v.coeff(n - k);
    v.coeff(n) = acc / static_cast<double>(n);
  }
  return v;
}

/// Principal power u^beta (real beta) for a jet with u_0 off the negative axis.
inline JetC pow_real(const JetC& u, double beta) {
  const Complex u0 = u.coeff(0);
  if (u0 == Complex(0.0, 0.0)) throw SingularityError("real power of a jet vanishing at the center");
  const int m = u.order();
  JetC v(u.center(), m);
  v.coeff(0) = std::pow(u0, beta);
  for (int n = 1; n <= m; ++n) {
    Complex acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += (beta * k - (n - k)) * u.coeff(k) * v.coeff(n - k);
    v.coeff(n) = acc / (static_cast<double>(n) * u0);
  }
  return v;
}

}  // namespace innerlab

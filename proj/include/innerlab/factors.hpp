#pragma once

#include <optional>
#include <span>

#include "innerlab/jet.hpp"

namespace innerlab {

/// Where a jet is taken. On-circle points carry their angle so that
/// boundary-sensitive quantities are formed from the angle, not from the
/// rounded Cartesian point.
template <class Scalar>
struct EvalPoint {
  Scalar w{};
  std::optional<double> angle{};

  static EvalPoint interior(Scalar w) { return {std::move(w), std::nullopt}; }
};

inline EvalPoint<Complex> circle_point(double angle) {
  return {std::polar(1.0, angle), angle};
}

namespace detail {

template <class Scalar>
Scalar one_minus_conj_product(const Scalar& a, const Scalar& w) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    return ScalarTraits<Scalar>::from_int(1) - conj(a) * w;
  } else {
    return one_minus_conj_mul(a, w);
  }
}

}  // namespace detail

/// Jet of the Möbius factor (a - z) / (1 - conj(a) z) at w.
///
/// Closed form: c_0 = (a - w)/D and c_n = -(1 - |a|^2) conj(a)^(n-1) / D^(n+1)
/// with D = 1 - conj(a) w. A zero at the origin gives the factor z. With
/// `normalized`, the factor is multiplied by conj(a)/|a| (floating point only).
/// `defect` supplies 1 - |a| exactly when |a| itself has rounded onto 1.
template <class Scalar>
Jet<Scalar> mobius_jet(const Scalar& a, const EvalPoint<Scalar>& at, int order, bool normalized,
                       std::optional<double> defect = std::nullopt) {
  using Traits = ScalarTraits<Scalar>;
  const Scalar& w = at.w;
  if (Traits::is_zero(a)) return Jet<Scalar>::variable(w, order);

  const Scalar abar = Traits::conjugate(a);
  Scalar one_minus_norm = detail::one_minus_conj_product(a, a);
  Scalar d;
  if constexpr (Traits::exact) {
    d = detail::one_minus_conj_product(a, w);
  } else {
    if (defect) one_minus_norm = Scalar(*defect * (2.0 - *defect));
    if (at.angle) {
      // On the circle 1 - conj(a) w = w conj(w - a), so |b(w)| = 1 to rounding.
      d = w * std::conj(w - a);
    } else if (w == a) {
      d = one_minus_norm;
    } else {
      d = detail::one_minus_conj_product(a, w);
    }
  }
  if (Traits::is_zero(d)) throw SingularityError("Möbius factor evaluated at its pole");

  Jet<Scalar> j(w, order);
  j.coeff(0) = (a - w) / d;
  Scalar abar_pow = Traits::from_int(1);
  Scalar d_pow = d * d;
  for (int n = 1; n <= order; ++n) {
    j.coeff(n) = -(one_minus_norm * abar_pow) / d_pow;
    abar_pow = abar_pow * abar;
    d_pow = d_pow * d;
  }
  if (normalized) {
    if constexpr (Traits::exact) {
      throw UsageError("normalized Möbius factors are not representable exactly");
    } else {
      j *= abar / std::abs(a);
    }
  }
  return j;
}

/// Jet of the atomic singular factor exp(-mass (zeta + z)/(zeta - z)) at w.
///
/// The exponent has c_0 = -mass (zeta + w)/(zeta - w) and
/// c_n = -2 mass zeta / (zeta - w)^(n+1). On the circle the exponent is
/// purely imaginary, and zeta - w is formed from the angle difference.
inline JetC atom_jet(const Complex& zeta, double mass, const EvalPoint<Complex>& at, int order) {
  Complex delta;
  if (at.angle) {
    const double phi = circle_angle(zeta);
    const double half = 0.5 * (*at.angle - phi);
    // zeta - w = zeta (1 - e^{i(t - phi)}) = -2i sin(half) e^{i half} zeta
    delta = Complex(0.0, -2.0 * std::sin(half)) * std::polar(1.0, half) * zeta;
  } else {
    delta = zeta - at.w;
  }
  if (delta == Complex(0.0, 0.0)) throw SingularityError("singular factor evaluated at its atom");

  JetC e(at.w, order);
  if (at.angle) {
    // (zeta + w)/(zeta - w) = i cot(half) on the circle.
    const double half = 0.5 * (*at.angle - circle_angle(zeta));
    e.coeff(0) = Complex(0.0, -mass * std::cos(half) / std::sin(half));
  } else {
    e.coeff(0) = -mass * (zeta + at.w) / delta;
  }
  Complex dpow = delta * delta;
  for (int n = 1; n <= order; ++n) {
    e.coeff(n) = -2.0 * mass * zeta / dpow;
    dpow *= delta;
  }
  return exp(e);
}

/// Jet of the polynomial sum_i p_i z^i at w (Taylor shift).
template <class Scalar>
Jet<Scalar> polynomial_jet(std::span<const Scalar> coeffs, const Scalar& w, int order) {
  Jet<Scalar> j(w, order);
  if (coeffs.empty()) return j;
  // Repeated synthetic division by (z - w) yields the shifted coefficients.
  std::vector<Scalar> work(coeffs.begin(), coeffs.end());
  const int deg = static_cast<int>(work.size()) - 1;
  for (int k = 0; k <= std::min(order, deg); ++k) {
    for (int i = deg - 1; i >= k; --i) work[i] += w * work[i + 1];
    j.coeff(k) = work[k];
  }
  return j;
}

}  // namespace innerlab

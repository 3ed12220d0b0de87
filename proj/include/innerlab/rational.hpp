#pragma once

#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include "innerlab/core.hpp"

namespace innerlab {

// Exact rationals; expression templates off so values behave like ints.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// A double is a dyadic rational, so this conversion is exact.
inline Rational exact_rational(double x) { return Rational(x); }

inline std::string to_string(const Rational& q) { return q.str(); }

inline Rational rational_factorial_inverse(int m) {
  if (m < 0) return Rational(0);
  BigInt f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return Rational(BigInt(1), f);
}

/// Gaussian rational re + i im: the exact backend for jets.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  /// Exact image of a double-precision complex.
  static GaussRational from_complex(const Complex& z) {
    return {exact_rational(z.real()), exact_rational(z.imag())};
  }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  Complex to_complex() const {
    return {re_.convert_to<double>(), im_.convert_to<double>()};
  }

  Rational norm() const { return re_ * re_ + im_ * im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    const Rational den = o.norm();
    if (den == 0) throw SingularityError("exact division by zero");
    Rational r = (re_ * o.re_ + im_ * o.im_) / den;
    im_ = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(r);
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend GaussRational conj(const GaussRational& a) { return {a.re_, -a.im_}; }

 private:
  Rational re_{0};
  Rational im_{0};
};

// Scalar traits used by the templated jet code.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex from_complex(const Complex& z) { return z; }
  static Complex to_complex(const Complex& z) { return z; }
  static bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
  static Complex conjugate(const Complex& z) { return std::conj(z); }
  static Complex from_int(long long v) { return Complex(static_cast<double>(v), 0.0); }
  static Complex inverse_factorial(int m) { return Complex(1.0 / factorial(m), 0.0); }
  static Complex factorial_of(int m) { return Complex(factorial(m), 0.0); }
};

template <>
struct ScalarTraits<GaussRational> {
  static constexpr bool exact = true;
  static GaussRational from_complex(const Complex& z) { return GaussRational::from_complex(z); }
  static Complex to_complex(const GaussRational& z) { return z.to_complex(); }
  static bool is_zero(const GaussRational& z) { return z.is_zero(); }
  static GaussRational conjugate(const GaussRational& z) { return conj(z); }
  static GaussRational from_int(long long v) { return GaussRational(Rational(v)); }
  static GaussRational inverse_factorial(int m) { return GaussRational(rational_factorial_inverse(m)); }
  static GaussRational factorial_of(int m) {
    return GaussRational(Rational(1) / rational_factorial_inverse(m));
  }
};

}  // namespace innerlab

namespace Eigen {
template <>
struct NumTraits<innerlab::GaussRational> : GenericNumTraits<innerlab::GaussRational> {
  using Real = innerlab::Rational;
  using NonInteger = innerlab::GaussRational;
  using Literal = innerlab::GaussRational;
  using Nested = innerlab::GaussRational;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "innerlab/factors.hpp"
#include "innerlab/jet.hpp"
#include "json.hpp"

namespace innerlab {

enum class ExprOp { kConst, kIdentity, kMobius, kPow1m, kSum, kProduct, kPow, kAtom };

/// Immutable closed-form analytic expression on the disk.
///
/// Nodes: constants, the identity z, Möbius factors, (1 - z)^beta on the
/// principal branch, sums, products, integer powers and atomic singular
/// factors exp(-mass (zeta + z)/(zeta - z)). Copies share structure.
class AnalyticExpr {
 public:
  struct Node {
    ExprOp op;
    Complex point{};       // constant value, Möbius zero or atom location
    double real_param = 0; // beta for pow1m, mass for atoms
    int int_param = 0;     // exponent for pow
    bool normalized = false;
    std::vector<AnalyticExpr> args;
  };

  AnalyticExpr();  // the constant 0
  explicit AnalyticExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const { return *node_; }
  ExprOp op() const { return node_->op; }

  /// Direct pointwise evaluation (independent of the jet path).
  Complex operator()(const Complex& z) const;

  /// Points where some factor is singular: atoms, and 1 for fractional powers.
  std::vector<Complex> singular_points() const;

 private:
  std::shared_ptr<const Node> node_;
};

AnalyticExpr constant(Complex c);
AnalyticExpr identity();
AnalyticExpr mobius(Complex zero, bool normalized = false);
AnalyticExpr pow1m(double beta);
AnalyticExpr atom(Complex zeta, double mass);
AnalyticExpr sum(std::vector<AnalyticExpr> terms);
AnalyticExpr product(std::vector<AnalyticExpr> factors);
AnalyticExpr pow(const AnalyticExpr& base, int n);
/// Polynomial sum_i c_i z^i.
AnalyticExpr polynomial(const std::vector<Complex>& coeffs);

AnalyticExpr operator+(const AnalyticExpr& a, const AnalyticExpr& b);
AnalyticExpr operator-(const AnalyticExpr& a, const AnalyticExpr& b);
AnalyticExpr operator-(const AnalyticExpr& a);
AnalyticExpr operator*(const AnalyticExpr& a, const AnalyticExpr& b);
AnalyticExpr operator*(Complex c, const AnalyticExpr& a);

/// Jet of the expression at an interior point (or a circle point given by
/// EvalPoint with its angle). Throws SingularityError on the spectrum, and
/// UsageError when a node has no exact form in the rational backend.
template <class Scalar>
Jet<Scalar> jet_of_expr(const AnalyticExpr& e, const EvalPoint<Scalar>& at, int order);

template <class Scalar>
Jet<Scalar> jet_of_expr(const AnalyticExpr& e, const Scalar& w, int order) {
  return jet_of_expr(e, EvalPoint<Scalar>::interior(w), order);
}

/// Jet at the circle point e^{i angle}.
JetC jet_on_circle(const AnalyticExpr& e, double angle, int order);

/// f^(l)(w).
Complex derivative(const AnalyticExpr& e, const Complex& w, int l);

// JSON expression tree {op, args, params}; documents carry schema "1".
nlohmann::json to_json(const AnalyticExpr& e);
AnalyticExpr expr_from_json(const nlohmann::json& j);

inline constexpr const char* kSchemaVersion = "1";

}  // namespace innerlab

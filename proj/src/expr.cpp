#include "innerlab/expr.hpp"

#include <cmath>

namespace innerlab {

namespace {

using Node = AnalyticExpr::Node;

AnalyticExpr make(Node n) { return AnalyticExpr(std::make_shared<const Node>(std::move(n))); }

bool is_integer(double x) { return std::floor(x) == x; }

template <class Scalar>
Scalar lift(const Complex& c) {
  return ScalarTraits<Scalar>::from_complex(c);
}

template <class Scalar>
Jet<Scalar> eval_jet(const AnalyticExpr& e, const EvalPoint<Scalar>& at, int order) {
  using Traits = ScalarTraits<Scalar>;
  const Node& n = e.node();
  switch (n.op) {
    case ExprOp::kConst:
      return Jet<Scalar>::constant(at.w, order, lift<Scalar>(n.point));
    case ExprOp::kIdentity:
      return Jet<Scalar>::variable(at.w, order);
    case ExprOp::kMobius:
      return mobius_jet<Scalar>(lift<Scalar>(n.point), at, order, n.normalized);
    case ExprOp::kPow1m: {
      Jet<Scalar> u = Jet<Scalar>::constant(at.w, order, Traits::from_int(1)) - Jet<Scalar>::variable(at.w, order);
      if (is_integer(n.real_param)) return pow(u, static_cast<int>(n.real_param));
      if constexpr (Traits::exact) {
        throw UsageError("fractional power has no exact rational jet");
      } else {
        return pow_real(u, n.real_param);
      }
    }
    case ExprOp::kSum: {
      Jet<Scalar> acc(at.w, order);
      for (const auto& a : n.args) acc += eval_jet(a, at, order);
      return acc;
    }
    case ExprOp::kProduct: {
      Jet<Scalar> acc = Jet<Scalar>::constant(at.w, order, Traits::from_int(1));
      for (const auto& a : n.args) acc *= eval_jet(a, at, order);
      return acc;
    }
    case ExprOp::kPow:
      return pow(eval_jet(n.args.at(0), at, order), n.int_param);
    case ExprOp::kAtom:
      if constexpr (Traits::exact) {
        throw UsageError("singular inner factors have no exact rational jet");
      } else {
        return atom_jet(n.point, n.real_param, at, order);
      }
  }
  throw UsageError("unknown expression node");
}

const char* op_name(ExprOp op) {
  switch (op) {
    case ExprOp::kConst: return "const";
    case ExprOp::kIdentity: return "z";
    case ExprOp::kMobius: return "mobius";
    case ExprOp::kPow1m: return "pow1m";
    case ExprOp::kSum: return "sum";
    case ExprOp::kProduct: return "product";
    case ExprOp::kPow: return "pow";
    case ExprOp::kAtom: return "atom";
  }
  return "?";
}

ExprOp op_from_name(const std::string& s) {
  for (ExprOp op : {ExprOp::kConst, ExprOp::kIdentity, ExprOp::kMobius, ExprOp::kPow1m, ExprOp::kSum,
                    ExprOp::kProduct, ExprOp::kPow, ExprOp::kAtom}) {
    if (s == op_name(op)) return op;
  }
  throw UsageError("unknown expression op '" + s + "'");
}

}  // namespace

AnalyticExpr::AnalyticExpr() : node_(std::make_shared<const Node>(Node{ExprOp::kConst})) {}

Complex AnalyticExpr::operator()(const Complex& z) const {
  const Node& n = *node_;
  switch (n.op) {
    case ExprOp::kConst:
      return n.point;
    case ExprOp::kIdentity:
      return z;
    case ExprOp::kMobius: {
      const Complex a = n.point;
      if (a == Complex(0.0, 0.0)) return z;
      const Complex d = one_minus_conj_mul(a, z);
      if (d == Complex(0.0, 0.0)) throw SingularityError("Möbius factor evaluated at its pole");
      Complex v = (a - z) / d;
      if (n.normalized) v *= std::conj(a) / std::abs(a);
      return v;
    }
    case ExprOp::kPow1m: {
      const Complex u = 1.0 - z;
      if (is_integer(n.real_param)) return std::pow(u, static_cast<int>(n.real_param));
      if (u == Complex(0.0, 0.0)) throw SingularityError("fractional power at its branch point");
      return std::pow(u, n.real_param);
    }
    case ExprOp::kSum: {
      Complex acc = 0.0;
      for (const auto& a : n.args) acc += a(z);
      return acc;
    }
    case ExprOp::kProduct: {
      Complex acc = 1.0;
      for (const auto& a : n.args) acc *= a(z);
      return acc;
    }
    case ExprOp::kPow: {
      const Complex b = n.args.at(0)(z);
      if (n.int_param < 0 && b == Complex(0.0, 0.0)) throw SingularityError("negative power of zero");
      Complex acc = 1.0;
      for (int i = 0; i < std::abs(n.int_param); ++i) acc *= b;
      return n.int_param < 0 ? 1.0 / acc : acc;
    }
    case ExprOp::kAtom: {
      if (z == n.point) throw SingularityError("singular factor evaluated at its atom");
      return std::exp(-n.real_param * (n.point + z) / (n.point - z));
    }
  }
  throw UsageError("unknown expression node");
}

std::vector<Complex> AnalyticExpr::singular_points() const {
  std::vector<Complex> out;
  const Node& n = *node_;
  if (n.op == ExprOp::kAtom) out.push_back(n.point);
  if (n.op == ExprOp::kPow1m && !is_integer(n.real_param)) out.emplace_back(1.0, 0.0);
  for (const auto& a : n.args) {
    auto s = a.singular_points();
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

AnalyticExpr constant(Complex c) { return make(Node{ExprOp::kConst, c}); }
AnalyticExpr identity() { return make(Node{ExprOp::kIdentity}); }

AnalyticExpr mobius(Complex zero, bool normalized) {
  if (std::abs(zero) >= 1.0) throw UsageError("Möbius zero must lie in the open disk");
  Node n{ExprOp::kMobius, zero};
  n.normalized = normalized;
  return make(std::move(n));
}

AnalyticExpr pow1m(double beta) {
  if (!(beta > 0.0)) throw UsageError("(1 - z)^beta requires beta > 0");
  Node n{ExprOp::kPow1m};
  n.real_param = beta;
  return make(std::move(n));
}

AnalyticExpr atom(Complex zeta, double mass) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw UsageError("atom must lie on the unit circle");
  if (!(mass > 0.0)) throw UsageError("atom mass must be positive");
  Node n{ExprOp::kAtom, zeta};
  n.real_param = mass;
  return make(std::move(n));
}

AnalyticExpr sum(std::vector<AnalyticExpr> terms) {
  Node n{ExprOp::kSum};
  n.args = std::move(terms);
  return make(std::move(n));
}

AnalyticExpr product(std::vector<AnalyticExpr> factors) {
  Node n{ExprOp::kProduct};
  n.args = std::move(factors);
  return make(std::move(n));
}

AnalyticExpr pow(const AnalyticExpr& base, int exponent) {
  Node n{ExprOp::kPow};
  n.int_param = exponent;
  n.args = {base};
  return make(std::move(n));
}

AnalyticExpr polynomial(const std::vector<Complex>& coeffs) {
  std::vector<AnalyticExpr> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == Complex(0.0, 0.0)) continue;
    if (i == 0) {
      terms.push_back(constant(coeffs[i]));
    } else {
      terms.push_back(product({constant(coeffs[i]), pow(identity(), static_cast<int>(i))}));
    }
  }
  return sum(std::move(terms));
}

AnalyticExpr operator+(const AnalyticExpr& a, const AnalyticExpr& b) { return sum({a, b}); }
AnalyticExpr operator-(const AnalyticExpr& a) { return product({constant(-1.0), a}); }
AnalyticExpr operator-(const AnalyticExpr& a, const AnalyticExpr& b) { return sum({a, -b}); }
AnalyticExpr operator*(const AnalyticExpr& a, const AnalyticExpr& b) { return product({a, b}); }
AnalyticExpr operator*(Complex c, const AnalyticExpr& a) { return product({constant(c), a}); }

template <class Scalar>
Jet<Scalar> jet_of_expr(const AnalyticExpr& e, const EvalPoint<Scalar>& at, int order) {
  return eval_jet(e, at, order);
}

template Jet<Complex> jet_of_expr<Complex>(const AnalyticExpr&, const EvalPoint<Complex>&, int);
template Jet<GaussRational> jet_of_expr<GaussRational>(const AnalyticExpr&, const EvalPoint<GaussRational>&,
                                                       int);

JetC jet_on_circle(const AnalyticExpr& e, double angle, int order) {
  return eval_jet(e, circle_point(angle), order);
}

Complex derivative(const AnalyticExpr& e, const Complex& w, int l) {
  if (l < 0) throw UsageError("derivative order must be nonnegative");
  return jet_of_expr(e, w, l).derivative(l);
}

static nlohmann::json node_to_json(const AnalyticExpr& e) {
  const Node& n = e.node();
  nlohmann::json j;
  j["op"] = op_name(n.op);
  nlohmann::json params = nlohmann::json::object();
  switch (n.op) {
    case ExprOp::kConst:
      params = {{"re", n.point.real()}, {"im", n.point.imag()}};
      break;
    case ExprOp::kMobius:
      params = {{"re", n.point.real()}, {"im", n.point.imag()}, {"normalized", n.normalized}};
      break;
    case ExprOp::kPow1m:
      params = {{"beta", n.real_param}};
      break;
    case ExprOp::kPow:
      params = {{"n", n.int_param}};
      break;
    case ExprOp::kAtom:
      params = {{"re", n.point.real()}, {"im", n.point.imag()}, {"mass", n.real_param}};
      break;
    default:
      break;
  }
  j["params"] = params;
  j["args"] = nlohmann::json::array();
  for (const auto& a : n.args) j["args"].push_back(node_to_json(a));
  return j;
}

nlohmann::json to_json(const AnalyticExpr& e) {
  return {{"schema", kSchemaVersion}, {"expr", node_to_json(e)}};
}

AnalyticExpr expr_from_json(const nlohmann::json& doc) {
  if (doc.contains("schema")) {
    if (doc.at("schema") != kSchemaVersion) throw UsageError("unsupported expression schema");
    return expr_from_json(doc.at("expr"));
  }
  const ExprOp op = op_from_name(doc.at("op").get<std::string>());
  const nlohmann::json params = doc.value("params", nlohmann::json::object());
  std::vector<AnalyticExpr> args;
  if (doc.contains("args")) {
    for (const auto& a : doc.at("args")) args.push_back(expr_from_json(a));
  }
  auto point = [&] { return Complex(params.value("re", 0.0), params.value("im", 0.0)); };
  switch (op) {
    case ExprOp::kConst: return constant(point());
    case ExprOp::kIdentity: return identity();
    case ExprOp::kMobius: return mobius(point(), params.value("normalized", false));
    case ExprOp::kPow1m: return pow1m(params.at("beta").get<double>());
    case ExprOp::kSum: return sum(std::move(args));
    case ExprOp::kProduct: return product(std::move(args));
    case ExprOp::kPow:
      if (args.size() != 1) throw UsageError("pow takes exactly one argument");
      return pow(args[0], params.at("n").get<int>());
    case ExprOp::kAtom: return atom(point(), params.at("mass").get<double>());
  }
  throw UsageError("unknown expression op");
}

}  // namespace innerlab

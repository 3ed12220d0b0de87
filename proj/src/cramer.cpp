#include "innerlab/cramer.hpp"

#include <cmath>
#include <limits>

namespace innerlab {

namespace {

void require_square(const RationalMatrix& m, Eigen::Index rhs_size) {
  if (m.rows() != m.cols()) throw UsageError("matrix must be square");
  if (m.rows() != rhs_size) throw UsageError("right-hand side length differs from matrix size");
}

// Exact inverse by Gauss-Jordan elimination.
RationalMatrix exact_inverse(const RationalMatrix& m) {
  const Eigen::Index size = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::Identity(size, size);
  for (Eigen::Index c = 0; c < size; ++c) {
    Eigen::Index p = c;
    while (p < size && a(p, c) == 0) ++p;
    if (p == size) throw SingularityError("matrix is singular");
    if (p != c) {
      a.row(p).swap(a.row(c));
      inv.row(p).swap(inv.row(c));
    }
    const Rational piv = a(c, c);
    for (Eigen::Index j = 0; j < size; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (Eigen::Index r = 0; r < size; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      for (Eigen::Index j = 0; j < size; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace

RationalMatrix build_M(int k, int n, bool exploration) {
  if (k < 1 || k > n) throw UsageError("M(k, n) needs 1 <= k <= n");
  if (!exploration && 2 * k <= n) throw UsageError("M(k, n) needs n/2 < k (pass the exploration flag to relax)");
  const int size = n - k + 1;
  RationalMatrix m(size, size);
  for (int s = 0; s < size; ++s) {
    for (int t = 0; t < size; ++t) m(s, t) = rational_factorial_inverse(k + t - s);
  }
  return m;
}

Rational det_exact(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw UsageError("determinant needs a square matrix");
  const Eigen::Index size = m.rows();
  if (size == 0) return Rational(1);

  BigInt scale = 1;
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      const BigInt den = boost::multiprecision::denominator(m(i, j));
      scale = scale / boost::multiprecision::gcd(scale, den) * den;
    }
  }
  Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic> a(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      a(i, j) = boost::multiprecision::numerator(m(i, j)) * (scale / boost::multiprecision::denominator(m(i, j)));
    }
  }

  int sign = 1;
  BigInt prev = 1;
  for (Eigen::Index c = 0; c + 1 < size; ++c) {
    if (a(c, c) == 0) {
      Eigen::Index p = c + 1;
      while (p < size && a(p, c) == 0) ++p;
      if (p == size) return Rational(0);
      a.row(p).swap(a.row(c));
      sign = -sign;
    }
    for (Eigen::Index i = c + 1; i < size; ++i) {
      for (Eigen::Index j = c + 1; j < size; ++j) {
        a(i, j) = (a(i, j) * a(c, c) - a(i, c) * a(c, j)) / prev;
      }
      a(i, c) = 0;
    }
    prev = a(c, c);
  }
  BigInt scale_pow = 1;
  for (Eigen::Index i = 0; i < size; ++i) scale_pow *= scale;
  return Rational(BigInt(sign) * a(size - 1, size - 1), scale_pow);
}

RationalVector gauss_solve(const RationalMatrix& m, const RationalVector& rhs) {
  require_square(m, rhs.size());
  const Eigen::Index size = m.rows();
  RationalMatrix a = m;
  RationalVector b = rhs;
  for (Eigen::Index c = 0; c < size; ++c) {
    Eigen::Index p = c;
    while (p < size && a(p, c) == 0) ++p;
    if (p == size) throw SingularityError("matrix is singular");
    if (p != c) {
      a.row(p).swap(a.row(c));
      std::swap(b[p], b[c]);
    }
    for (Eigen::Index r = c + 1; r < size; ++r) {
      if (a(r, c) == 0) continue;
      const Rational f = a(r, c) / a(c, c);
      for (Eigen::Index j = c; j < size; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  RationalVector x(size);
  for (Eigen::Index r = size - 1; r >= 0; --r) {
    Rational acc = b[r];
    for (Eigen::Index j = r + 1; j < size; ++j) acc -= a(r, j) * x[j];
    x[r] = acc / a(r, r);
  }
  return x;
}

SystemSolution<Rational> cramer_solve(const RationalMatrix& m, const RationalVector& rhs) {
  require_square(m, rhs.size());
  SystemSolution<Rational> out;
  out.det = det_exact(m);
  if (out.det == 0) throw SingularityError("Cramer solve with a singular matrix");
  const Eigen::Index size = m.rows();
  out.unknowns.resize(size);
  for (Eigen::Index t = 0; t < size; ++t) {
    RationalMatrix mt = m;
    mt.col(t) = rhs;
    out.det_columns.push_back(det_exact(mt));
    out.unknowns[t] = out.det_columns.back() / out.det;
  }
  Rational worst = 0;
  Rational scale = 1;
  for (Eigen::Index s = 0; s < size; ++s) {
    Rational acc = -rhs[s];
    for (Eigen::Index t = 0; t < size; ++t) acc += m(s, t) * out.unknowns[t];
    worst = std::max(worst, Rational(abs(acc)));
    scale = std::max(scale, Rational(abs(rhs[s])));
  }
  out.residual = Rational(worst / scale).convert_to<double>();
  return out;
}

SystemSolution<Complex> cramer_solve(const RationalMatrix& m, const VectorXc& rhs) {
  require_square(m, rhs.size());
  SystemSolution<Complex> out;
  out.det = det_exact(m);
  if (out.det == 0) throw SingularityError("Cramer solve with a singular matrix");
  // inverse(t, s) = cofactor(s, t) / det, exact.
  const RationalMatrix inv = exact_inverse(m);
  const Eigen::Index size = m.rows();
  Eigen::MatrixXd inv_d(size, size), m_d(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      inv_d(i, j) = inv(i, j).convert_to<double>();
      m_d(i, j) = m(i, j).convert_to<double>();
    }
  }
  out.unknowns = inv_d.cast<Complex>() * rhs;
  const double det_d = out.det.convert_to<double>();
  for (Eigen::Index t = 0; t < size; ++t) out.det_columns.push_back(det_d * out.unknowns[t]);
  const VectorXc res = m_d.cast<Complex>() * out.unknowns - rhs;
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  out.residual = res.cwiseAbs().maxCoeff() / scale;
  return out;
}

Recovery recover_gk(const AnalyticExpr& g, const Complex& zj, const Complex& zl, int k, int n, double alpha,
                    bool exploration) {
  if (zj == zl) throw UsageError("recovery needs z_l != z_j");
  const RationalMatrix m = build_M(k, n, exploration);

  Recovery r;
  r.k = k;
  r.n = n;
  r.alpha = alpha;
  r.zj = zj;
  r.zl = zl;
  r.outside_hypotheses = 2 * k <= n;

  const JetC jet = jet_of_expr<Complex>(g, zj, n);
  double lower = 0.0, upper = 0.0;
  for (int i = 0; i < k; ++i) lower = std::max(lower, std::abs(jet.coeff(i)));
  for (int i = k; i <= n; ++i) upper = std::max(upper, std::abs(jet.coeff(i)));
  if (lower > 1e-10 * upper) {
    throw PreconditionError("g does not vanish to order k at z_j");
  }

  const Complex h = zl - zj;
  const int size = n - k + 1;
  r.rhs = VectorXc::Zero(size);
  r.expected = VectorXc::Zero(size);
  for (int t = 0; t < size; ++t) r.expected[t] = jet.derivative(k + t) * std::pow(h, t);
  for (int s = 0; s < size; ++s) {
    for (int mm = std::max(k, s); mm <= n; ++mm) {
      r.rhs[s] += jet.derivative(mm) / factorial(mm - s) * std::pow(h, mm - k);
    }
  }

  const JetC at_l = jet_of_expr<Complex>(g, zl, n);
  r.rhs_alt = VectorXc::Zero(size);
  for (int s = 0; s < size; ++s) r.rhs_alt[s] = at_l.derivative(s) * std::pow(h, s - k);

  r.solution = cramer_solve(m, r.rhs);
  const double scale = std::max(r.expected.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  for (int t = 0; t < size; ++t) {
    r.max_rel_error = std::max(r.max_rel_error, std::abs(r.solution.unknowns[t] - r.expected[t]) / scale);
  }
  const double hk = std::pow(std::abs(h), alpha - k);
  for (int s = 0; s < size; ++s) {
    r.bound_ratios.push_back(std::abs(r.rhs[s]) / hk);
    r.remainder_ratios.push_back(std::abs(r.rhs[s] - r.rhs_alt[s]) / hk);
  }
  return r;
}

nlohmann::json rational_json(const Rational& q) {
  return {{"num", boost::multiprecision::numerator(q).str()}, {"den", boost::multiprecision::denominator(q).str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  const BigInt num(j.at("num").get<std::string>());
  const BigInt den(j.at("den").get<std::string>());
  if (den == 0) throw UsageError("rational with zero denominator");
  return Rational(num, den);
}

nlohmann::json to_json(const RationalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(row);
  }
  return {{"schema", kSchemaVersion}, {"rows", rows}};
}

RationalMatrix rational_matrix_from_json(const nlohmann::json& j) {
  const auto& rows = j.at("rows");
  const auto size = static_cast<Eigen::Index>(rows.size());
  RationalMatrix m(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != size) throw UsageError("matrix rows must be square");
    for (Eigen::Index jj = 0; jj < size; ++jj) m(i, jj) = rational_from_json(rows[i][jj]);
  }
  return m;
}

nlohmann::json to_json(const SystemSolution<Rational>& s) {
  nlohmann::json u = nlohmann::json::array(), cols = nlohmann::json::array();
  for (Eigen::Index t = 0; t < s.unknowns.size(); ++t) u.push_back(rational_json(s.unknowns[t]));
  for (const auto& c : s.det_columns) cols.push_back(rational_json(c));
  return {{"schema", kSchemaVersion}, {"unknowns", u}, {"det", rational_json(s.det)},
          {"det_columns", cols}, {"residual", s.residual}};
}

nlohmann::json to_json(const Recovery& r) {
  auto cvec = [](const VectorXc& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v[i].real(), v[i].imag()});
    return a;
  };
  nlohmann::json j = {
      {"schema", kSchemaVersion},
      {"k", r.k},
      {"n", r.n},
      {"alpha", r.alpha},
      {"z_j", {r.zj.real(), r.zj.imag()}},
      {"z_l", {r.zl.real(), r.zl.imag()}},
      {"R", cvec(r.rhs)},
      {"R_taylor_remainder_check", cvec(r.rhs_alt)},
      {"unknowns", cvec(r.solution.unknowns)},
      {"det", rational_json(r.solution.det)},
      {"residual", r.solution.residual},
      {"max_rel_error", r.max_rel_error},
      {"bound_ratios", r.bound_ratios},
      {"remainder_ratios", r.remainder_ratios},
  };
  if (r.outside_hypotheses) j["label"] = "outside the hypothesis n/2 < k";
  return j;
}

}  // namespace innerlab

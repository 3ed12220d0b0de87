#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "innerlab/expr.hpp"
#include "innerlab/rational.hpp"

namespace innerlab {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// M(k, n)(s, t) = 1/(k + t - s)!, s, t = 0..n-k, with 1/m! = 0 for m < 0.
/// Requires n/2 < k <= n unless `exploration` is set.
RationalMatrix build_M(int k, int n, bool exploration = false);

/// Exact determinant by fraction-free (Bareiss) elimination on the matrix
/// scaled to integers.
Rational det_exact(const RationalMatrix& m);

/// Exact solve by Gaussian elimination with row pivoting.
RationalVector gauss_solve(const RationalMatrix& m, const RationalVector& rhs);

template <class Scalar>
struct SystemSolution {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> unknowns;
  Rational det;
  std::vector<Scalar> det_columns;  // det of M with column t replaced by rhs
  double residual = 0.0;            // max |M u - rhs| / max(1, max |rhs|)
};

/// Cramer's rule. With rational right-hand sides every replaced-column
/// determinant is computed exactly; with complex right-hand sides the exact
/// cofactors are applied in floating point.
SystemSolution<Rational> cramer_solve(const RationalMatrix& m, const RationalVector& rhs);
SystemSolution<Complex> cramer_solve(const RationalMatrix& m, const VectorXc& rhs);

struct Recovery {
  int k = 0, n = 0;
  double alpha = 0.0;
  Complex zj, zl;
  bool outside_hypotheses = false;    // built with k <= n/2
  VectorXc rhs;                       // R_0..R_{n-k} from the jet at z_j
  VectorXc rhs_alt;                   // g^(s)(z_l) (z_l - z_j)^(s-k)
  SystemSolution<Complex> solution;
  VectorXc expected;                  // g^(k+t)(z_j) (z_l - z_j)^t
  double max_rel_error = 0.0;         // unknowns against `expected`
  std::vector<double> bound_ratios;   // |R_s| / |z_l - z_j|^(alpha - k)
  std::vector<double> remainder_ratios;  // |R_s - R_s^alt| / |z_l - z_j|^(alpha - k)
};

/// Rebuilds the Taylor system at (z_j, z_l) for g vanishing to order k at
/// z_j and solves it for g^(k)(z_j). Throws PreconditionError when some
/// |g^(m)(z_j)/m!|, m < k, exceeds 1e-10 times the largest higher coefficient.
Recovery recover_gk(const AnalyticExpr& g, const Complex& zj, const Complex& zl, int k, int n, double alpha,
                    bool exploration = false);

// Exact rationals as {"num": "...", "den": "..."}.
nlohmann::json rational_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RationalMatrix& m);
RationalMatrix rational_matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SystemSolution<Rational>& s);
nlohmann::json to_json(const Recovery& r);

}  // namespace innerlab

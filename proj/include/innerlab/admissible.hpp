#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "innerlab/expr.hpp"
#include "innerlab/zero_sequence.hpp"

namespace innerlab {

/// A trace (phi_0, ..., phi_n) on a finite set E of the closed disk.
/// phi(s, i) is phi_s at points[i].
struct JetData {
  std::vector<Complex> points;
  int n = 0;
  double alpha = 1.0;  // n < alpha <= n + 1
  Eigen::MatrixXcd phi;

  /// Throws UsageError on an incomplete table, alpha out of (n, n+1], or
  /// repeated points.
  void validate() const;
};

struct AdmissibilityReport {
  double c_min = 0.0;  // max over s and ordered pairs of LHS / |z - w|^(alpha - s)
  int worst_z = -1;    // indices into JetData::points
  int worst_w = -1;
  int worst_s = -1;
  double gate = 1.0;
  bool pass = true;    // c_min <= gate
  bool has_boundary_points = false;  // boundary entries were taken as data
};

/// Smallest C with
///   |phi_s(z) - sum_{m=0}^{n-s} phi_{s+m}(w)/m! (z - w)^m| <= C |z - w|^(alpha - s)
/// over all ordered pairs z != w of E and s = 0..n.
AdmissibilityReport check_admissible(const JetData& data, double gate = 1.0);

/// phi_k(z_j) = d_j^(alpha - k), every other phi_s = 0, with n = ceil(alpha) - 1.
/// E is the stored points plus the declared accumulation points (where phi_k = 0),
/// and d_j is measured against all of E.
JetData build_delta_jet(const ZeroSequence& seq, int k, double alpha);

/// phi_s = e^(s) on E, s = 0..n.
JetData trace_of_expr(const AnalyticExpr& e, const std::vector<Complex>& points, int n, double alpha);

// {alpha, n, points, phi: [[[re,im],...],...]}, one row per s.
nlohmann::json to_json(const JetData& data);
JetData jet_data_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AdmissibilityReport& r, const JetData& data);

}  // namespace innerlab

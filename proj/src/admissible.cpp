#include "innerlab/admissible.hpp"

#include <cmath>
#include <limits>

namespace innerlab {

namespace {

bool on_circle(const Complex& z) { return std::abs(std::abs(z) - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon(); }

nlohmann::json point_json(const Complex& z) { return {z.real(), z.imag()}; }
Complex point_from(const nlohmann::json& p) { return {p.at(0).get<double>(), p.at(1).get<double>()}; }

}  // namespace

void JetData::validate() const {
  if (n < 0) throw UsageError("jet order n must be nonnegative");
  if (!(alpha > n && alpha <= n + 1)) throw UsageError("alpha must lie in (n, n+1]");
  if (phi.rows() != n + 1 || phi.cols() != static_cast<Eigen::Index>(points.size())) {
    throw UsageError("jet table must have n+1 rows and one column per point");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::abs(points[i]) > 1.0 + 1e-12) throw UsageError("jet points must lie in the closed disk");
    for (std::size_t l = 0; l < i; ++l) {
      if (points[i] == points[l]) throw UsageError("jet points must be pairwise distinct");
    }
  }
}

AdmissibilityReport check_admissible(const JetData& data, double gate) {
  data.validate();
  const int count = static_cast<int>(data.points.size());
  if (count < 2) throw UsageError("admissibility needs at least two points");
  const int n = data.n;

  AdmissibilityReport r;
  r.gate = gate;
  for (const auto& p : data.points) r.has_boundary_points = r.has_boundary_points || on_circle(p);

  std::vector<double> inv_fact(n + 1);
  for (int m = 0; m <= n; ++m) inv_fact[m] = 1.0 / factorial(m);
  std::vector<Complex> hpow(n + 1);

  for (int zi = 0; zi < count; ++zi) {
    for (int wi = 0; wi < count; ++wi) {
      if (zi == wi) continue;
      const Complex h = data.points[zi] - data.points[wi];
      const double dist = std::abs(h);
      hpow[0] = 1.0;
      for (int m = 1; m <= n; ++m) hpow[m] = hpow[m - 1] * h;
      for (int s = 0; s <= n; ++s) {
        Complex taylor = 0.0;
        for (int m = 0; m <= n - s; ++m) taylor += data.phi(s + m, wi) * inv_fact[m] * hpow[m];
        const double lhs = std::abs(data.phi(s, zi) - taylor);
        const double ratio = lhs / std::pow(dist, data.alpha - s);
        if (ratio > r.c_min || r.worst_s < 0) {
          r.c_min = std::max(r.c_min, ratio);
          r.worst_z = zi;
          r.worst_w = wi;
          r.worst_s = s;
        }
      }
    }
  }
  r.pass = r.c_min <= gate;
  return r;
}

JetData build_delta_jet(const ZeroSequence& seq, int k, double alpha) {
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  const int n = static_cast<int>(std::ceil(alpha)) - 1;
  if (k < 0) throw UsageError("k must be nonnegative");
  if (k > n) throw UsageError("k must not exceed n = ceil(alpha) - 1");

  JetData data;
  data.points = seq.closure_points();
  data.n = n;
  data.alpha = alpha;
  const int count = static_cast<int>(data.points.size());
  if (count < 2) throw UsageError("delta jet needs at least two points");
  data.phi = Eigen::MatrixXcd::Zero(n + 1, count);
  for (int j = 0; j < seq.size(); ++j) {
    double d = std::numeric_limits<double>::infinity();
    for (int l = 0; l < count; ++l) {
      if (l != j) d = std::min(d, std::abs(data.points[j] - data.points[l]));
    }
    data.phi(k, j) = std::pow(d, alpha - k);
  }
  return data;
}

JetData trace_of_expr(const AnalyticExpr& e, const std::vector<Complex>& points, int n, double alpha) {
  JetData data;
  data.points = points;
  data.n = n;
  data.alpha = alpha;
  data.phi = Eigen::MatrixXcd::Zero(n + 1, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const JetC jet = on_circle(points[i]) ? jet_on_circle(e, circle_angle(points[i]), n)
                                          : jet_of_expr<Complex>(e, points[i], n);
    for (int s = 0; s <= n; ++s) data.phi(s, static_cast<Eigen::Index>(i)) = jet.derivative(s);
  }
  data.validate();
  return data;
}

nlohmann::json to_json(const JetData& data) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["alpha"] = data.alpha;
  j["n"] = data.n;
  j["points"] = nlohmann::json::array();
  for (const auto& p : data.points) j["points"].push_back(point_json(p));
  j["phi"] = nlohmann::json::array();
  for (Eigen::Index s = 0; s < data.phi.rows(); ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index i = 0; i < data.phi.cols(); ++i) row.push_back(point_json(data.phi(s, i)));
    j["phi"].push_back(row);
  }
  return j;
}

JetData jet_data_from_json(const nlohmann::json& j) {
  JetData data;
  data.alpha = j.at("alpha").get<double>();
  data.n = j.at("n").get<int>();
  for (const auto& p : j.at("points")) data.points.push_back(point_from(p));
  const auto& phi = j.at("phi");
  data.phi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(phi.size()),
                                    static_cast<Eigen::Index>(data.points.size()));
  for (std::size_t s = 0; s < phi.size(); ++s) {
    if (phi[s].size() != data.points.size()) throw UsageError("jet table row length differs from point count");
    for (std::size_t i = 0; i < phi[s].size(); ++i) {
      data.phi(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) = point_from(phi[s][i]);
    }
  }
  data.validate();
  return data;
}

nlohmann::json to_json(const AdmissibilityReport& r, const JetData& data) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["alpha"] = data.alpha;
  j["n"] = data.n;
  j["C_min"] = r.c_min;
  j["gate"] = r.gate;
  j["pass"] = r.pass;
  if (r.worst_s >= 0) {
    j["witness"] = {{"z", point_json(data.points[r.worst_z])},
                    {"w", point_json(data.points[r.worst_w])},
                    {"s", r.worst_s}};
  }
  if (r.has_boundary_points) j["note"] = "boundary entries of E were taken as supplied data";
  return j;
}

}  // namespace innerlab

#include "innerlab/criteria.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "innerlab/geometry.hpp"

namespace innerlab {

namespace {

nlohmann::json point_json(const Complex& z) { return {z.real(), z.imag()}; }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError("epsilon must lie in (0, 1)");
}

// Running sup with canonical tie-break (first index wins).
struct SupTracker {
  double fine = 0.0;
  double coarse = 0.0;
  std::optional<Complex> witness;
  std::size_t witness_index = 0;
  std::size_t samples = 0;
  std::size_t coarse_samples = 0;
  std::size_t skipped = 0;

  void add(double value, const Complex& z, std::size_t index, bool in_coarse) {
    ++samples;
    if (!witness || value > fine) {
      fine = std::max(fine, value);
      witness = z;
      witness_index = index;
    }
    if (in_coarse) {
      ++coarse_samples;
      coarse = std::max(coarse, value);
    }
  }

  void fill(CriterionReport& r) const {
    r.sup = fine;
    r.coarse_sup = coarse;
    r.witness = witness;
    r.witness_index = witness_index;
    r.samples = samples;
    r.skipped = skipped;
    r.empty = samples == 0;
    if (r.empty) {
      r.verdict = "inconclusive";
    } else if (coarse_samples == 0) {
      r.verdict = "inconclusive";
    } else {
      r.verdict = refinement_verdict(fine, coarse);
    }
  }
};

template <class Visit>
void for_each_boundary_point(const InnerFunction& theta, const BoundaryGrid& grid, Visit visit) {
  if (grid.size < 2) throw UsageError("boundary grid needs at least two points");
  const Spectrum spec = theta.spectrum();
  std::size_t kept = 0;
  for (int i = 0; i < grid.size; ++i) {
    const double angle = kTwoPi * static_cast<double>(i) / static_cast<double>(grid.size);
    const Complex zeta = std::polar(1.0, angle);
    if (!spec.empty() && spec.distance(zeta) < grid.exclusion) continue;
    ++kept;
    visit(static_cast<std::size_t>(i), angle, zeta, i % 2 == 0);
  }
  if (kept == 0) throw UsageError("boundary grid is empty after excluding the spectrum");
}

// Interior-grid sup of value(z, defect) over {|theta| < level}.
template <class Value>
CriterionReport interior_sup(const InnerFunction& theta, double level, const GridSpec& grid, Value value) {
  SupTracker t;
  for_each_grid_point(grid, [&](const GridPoint& p) {
    if (!(std::abs(eval_inner(theta, p.z)) < level)) return;
    double v;
    try {
      v = value(p.z, p.defect);
    } catch (const SingularityError&) {
      ++t.skipped;
      return;
    }
    if (!std::isfinite(v)) {
      ++t.skipped;
      return;
    }
    t.add(v, p.z, p.index, p.coarse);
  });
  CriterionReport r;
  r.grid = grid.describe();
  t.fill(r);
  return r;
}

double relative_spread(const VectorXr& v, const std::vector<bool>& edge, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = 0.0;
  int count = 0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (edge[j]) continue;
    lo = std::min(lo, v[j]);
    hi = std::max(hi, v[j]);
    ++count;
  }
  if (count == 0) lo = hi = 0.0;
  return count;
}

// bounded when the interior sup is within 10% of the sup over the first half
// of the interior indices.
std::string growth_verdict(const VectorXr& v, const std::vector<bool>& edge) {
  std::vector<double> interior;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (!edge[j]) interior.push_back(v[j]);
  }
  if (interior.size() < 4) return "inconclusive";
  double head = 0.0, all = 0.0;
  for (std::size_t i = 0; i < interior.size(); ++i) {
    if (i < interior.size() / 2) head = std::max(head, interior[i]);
    all = std::max(all, interior[i]);
  }
  return all <= 1.1 * head ? "bounded" : "divergent";
}

}  // namespace

std::string refinement_verdict(double fine, double coarse, double tolerance) {
  if (fine <= (1.0 + tolerance) * coarse) return "bounded";
  if (fine >= 1.5 * coarse) return "divergent";
  return "inconclusive";
}

nlohmann::json CriterionReport::to_json() const {
  nlohmann::json j = {
      {"schema", kSchemaVersion},
      {"criterion", criterion},
      {"params", params},
      {"sup", sup},
      {"coarse_sup", coarse_sup},
      {"grid", grid},
      {"samples", samples},
      {"skipped", skipped},
      {"empty", empty},
      {"verdict", verdict},
  };
  j["witness"] = witness ? point_json(*witness) : nlohmann::json();
  if (witness) j["witness_index"] = witness_index;
  return j;
}

std::string BoundaryGrid::describe() const {
  std::ostringstream os;
  os << "circle M=" << size << " exclusion=" << exclusion;
  return os.str();
}

CriterionReport decrease_sup(const AnalyticExpr& f, const InnerFunction& theta, double eps, double exponent,
                             const GridSpec& grid) {
  require_eps(eps);
  if (!(exponent > 0.0)) throw UsageError("exponent must be positive");
  CriterionReport r = interior_sup(theta, eps, grid, [&](const Complex& z, double defect) {
    return std::abs(f(z)) / std::pow(defect, exponent);
  });
  r.criterion = "decrease_sup";
  r.params = {{"eps", eps}, {"exponent", exponent}};
  return r;
}

CriterionReport derivative_decrease(const AnalyticExpr& f, const InnerFunction& theta, double eps, double alpha,
                                    int k, const GridSpec& grid) {
  require_eps(eps);
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  if (k < 1) throw UsageError("derivative order k must be at least 1");
  CriterionReport r = interior_sup(theta, 0.5 * eps, grid, [&](const Complex& z, double defect) {
    return std::abs(jet_of_expr<Complex>(f, z, k).derivative(k)) / std::pow(defect, alpha - k);
  });
  r.criterion = "derivative_decrease";
  r.params = {{"eps", eps}, {"alpha", alpha}, {"k", k}};
  return r;
}

CriterionReport boundary_crit(const AnalyticExpr& f, const InnerFunction& theta, int N, const BoundaryGrid& grid) {
  if (N < 0) throw UsageError("N must be nonnegative");
  SupTracker t;
  for_each_boundary_point(theta, grid, [&](std::size_t i, double angle, const Complex& zeta, bool coarse) {
    double v;
    try {
      v = std::abs(f(zeta)) * std::pow(boundary_deriv_modulus(theta, angle), N);
    } catch (const SingularityError&) {
      ++t.skipped;
      return;
    }
    if (!std::isfinite(v)) {
      ++t.skipped;
      return;
    }
    t.add(v, zeta, i, coarse);
  });
  CriterionReport r;
  r.criterion = "boundary_crit";
  r.params = {{"N", N}};
  r.grid = grid.describe();
  t.fill(r);
  return r;
}

CriterionReport shider_sup(const InnerFunction& theta, int l, const BoundaryGrid& grid) {
  if (l < 1) throw UsageError("derivative order l must be at least 1");
  SupTracker t;
  for_each_boundary_point(theta, grid, [&](std::size_t i, double angle, const Complex& zeta, bool coarse) {
    const double tau = d_tau(theta, angle).tau;
    const double v = std::abs(inner_jet_on_circle(theta, angle, l).derivative(l)) * std::pow(tau, l);
    t.add(v, zeta, i, coarse);
  });
  CriterionReport r;
  r.criterion = "shider_sup";
  r.params = {{"l", l}};
  r.grid = grid.describe();
  t.fill(r);
  return r;
}

nlohmann::json LeibnizReport::to_json() const {
  nlohmann::json p = nlohmann::json::array(), s = nlohmann::json::array();
  for (const auto& r : products) p.push_back(r.to_json());
  for (const auto& r : scaled) s.push_back(r.to_json());
  return {{"schema", kSchemaVersion}, {"N", N}, {"products", p}, {"scaled", s},
          {"max_sum_rel_error", max_sum_rel_error}};
}

LeibnizReport leibniz_terms(const AnalyticExpr& f, const InnerFunction& theta, int N, const BoundaryGrid& grid) {
  if (N < 0) throw UsageError("N must be nonnegative");
  LeibnizReport out;
  out.N = N;
  std::vector<SupTracker> prod(N + 1), scal(N + 1);
  const AnalyticExpr combined = f * theta.to_expr();
  for_each_boundary_point(theta, grid, [&](std::size_t i, double angle, const Complex& zeta, bool coarse) {
    const JetC fj = jet_on_circle(f, angle, N);
    const JetC tj = inner_jet_on_circle(theta, angle, N);
    const double tau = d_tau(theta, angle).tau;
    Complex sum = 0.0;
    double mass = 0.0;
    for (int l = 0; l <= N; ++l) {
      const Complex fd = fj.derivative(N - l);
      const Complex td = tj.derivative(l);
      const Complex term = binomial(N, l) * fd * td;
      sum += term;
      mass += std::abs(term);
      prod[l].add(std::abs(fd * td), zeta, i, coarse);
      scal[l].add(std::abs(fd) / std::pow(tau, l), zeta, i, coarse);
    }
    const Complex direct = jet_on_circle(combined, angle, N).derivative(N);
    const double scale = std::max({std::abs(direct), mass, std::numeric_limits<double>::min()});
    out.max_sum_rel_error = std::max(out.max_sum_rel_error, std::abs(sum - direct) / scale);
  });
  for (int l = 0; l <= N; ++l) {
    CriterionReport a, b;
    a.criterion = "leibniz_product";
    b.criterion = "leibniz_tau_scaled";
    a.params = b.params = {{"N", N}, {"l", l}};
    a.grid = b.grid = grid.describe();
    prod[l].fill(a);
    scal[l].fill(b);
    out.products.push_back(a);
    out.scaled.push_back(b);
  }
  return out;
}

VectorXr delta_table(const ZeroSequence& seq, int k, double alpha) {
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  if (k < 0 || k > static_cast<int>(std::floor(alpha))) throw UsageError("k must lie in 0..floor(alpha)");
  const VectorXr d = nearest_gaps(seq);
  VectorXr v(seq.size());
  for (int j = 0; j < seq.size(); ++j) v[j] = std::pow(d[j], alpha - k) * std::pow(seq.defect(j), k);
  return v;
}

DecayProfile zero_decay_profile(const VectorXr& values, const ZeroSequence& seq, int k, double alpha, double gate) {
  if (values.size() != seq.size()) throw UsageError("value table length differs from sequence length");
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  if (k < 0 || k > static_cast<int>(std::floor(alpha))) throw UsageError("k must lie in 0..floor(alpha)");
  DecayProfile p;
  p.k = k;
  p.alpha = alpha;
  p.gate = gate;
  p.values = values.cwiseAbs();
  p.gaps = nearest_gaps(seq);
  p.defects = Eigen::Map<const VectorXr>(seq.defects().data(), seq.size());
  p.edge = edge_flags(seq);
  p.r1.resize(seq.size());
  p.r2.resize(seq.size());
  for (int j = 0; j < seq.size(); ++j) {
    const double defect = seq.defect(j);
    p.r1[j] = p.values[j] / (std::pow(p.gaps[j], alpha - k) * std::pow(defect, k));
    p.r2[j] = p.values[j] / std::pow(defect, alpha);
  }
  const double n1 = relative_spread(p.r1, p.edge, p.r1_min, p.r1_max);
  relative_spread(p.r2, p.edge, p.r2_min, p.r2_max);
  if (n1 == 0) {
    p.r1_verdict = p.r2_verdict = "inconclusive";
    return p;
  }
  p.r1_verdict = (p.r1_min > 0.0 && p.r1_max / p.r1_min <= gate) ? "comparable" : growth_verdict(p.r1, p.edge);
  p.r2_verdict = growth_verdict(p.r2, p.edge);
  return p;
}

DecayProfile zero_decay_profile(const AnalyticExpr& f, const ZeroSequence& seq, int k, double alpha, double gate) {
  VectorXr values(seq.size());
  for (int j = 0; j < seq.size(); ++j) values[j] = std::abs(f(seq[j]));
  return zero_decay_profile(values, seq, k, alpha, gate);
}

nlohmann::json DecayProfile::to_json() const {
  auto arr = [](const VectorXr& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  return {
      {"schema", kSchemaVersion},
      {"k", k},
      {"alpha", alpha},
      {"gate", gate},
      {"r1", arr(r1)},
      {"r2", arr(r2)},
      {"edge", edge},
      {"r1_min", r1_min},
      {"r1_max", r1_max},
      {"r2_min", r2_min},
      {"r2_max", r2_max},
      {"r1_verdict", r1_verdict},
      {"r2_verdict", r2_verdict},
  };
}

std::string DecayProfile::to_csv() const {
  std::ostringstream os;
  os << "j,|f(z_j)|,d_j,1-|z_j|,r1,r2,edge_flag\n";
  for (Eigen::Index j = 0; j < r1.size(); ++j) {
    os << (j + 1) << ',' << fmt(values[j]) << ',' << fmt(gaps[j]) << ',' << fmt(defects[j]) << ',' << fmt(r1[j]) << ',' << fmt(r2[j])
       << ',' << (edge[j] ? 1 : 0) << '\n';
  }
  return os.str();
}

nlohmann::json CoveringReport::to_json() const {
  nlohmann::json j = {
      {"schema", kSchemaVersion},
      {"criterion", "covering_profile"},
      {"eps", eps},
      {"grid", grid},
      {"samples", samples},
      {"empty", empty},
      {"lambda", lambda},
      {"coarse_lambda", coarse_lambda},
      {"c_distance", c_distance},
      {"c_defect", c_defect},
      {"split_failures", split_failures},
  };
  j["lambda_witness"] = lambda_witness ? point_json(*lambda_witness) : nlohmann::json();
  return j;
}

CoveringReport covering_profile(const InnerFunction& b1, const InnerFunction& b2, double eps, const GridSpec& grid) {
  require_eps(eps);
  if (!b1.atoms().empty() || !b2.atoms().empty()) throw UsageError("covering needs finite Blaschke products");
  const InnerFunction b = b1 * b2;
  const auto& zeros = b.zeros();
  CoveringReport out;
  out.eps = eps;
  out.grid = grid.describe();
  for_each_grid_point(grid, [&](const GridPoint& p) {
    const double m1 = std::abs(eval_inner(b1, p.z));
    const double m2 = std::abs(eval_inner(b2, p.z));
    if (!(m1 * m2 < eps)) return;
    ++out.samples;
    // Exact: fl(min^2) <= fl(m1 m2) < eps by monotone rounding.
    if (!(m1 * m1 < eps || m2 * m2 < eps)) ++out.split_failures;
    if (zeros.empty()) return;
    double best = std::numeric_limits<double>::infinity();
    std::size_t near = 0;
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      const double r = rho(p.z, zeros[j]);
      if (r < best) {
        best = r;
        near = j;
      }
    }
    if (!out.lambda_witness || best > out.lambda) {
      out.lambda = std::max(out.lambda, best);
      out.lambda_witness = p.z;
    }
    if (p.coarse) out.coarse_lambda = std::max(out.coarse_lambda, best);
    out.c_distance = std::max(out.c_distance, std::abs(p.z - zeros[near]) / p.defect);
    out.c_defect = std::max(out.c_defect, b.zero_defects()[near] / p.defect);
  });
  out.empty = out.samples == 0;
  return out;
}

}  // namespace innerlab

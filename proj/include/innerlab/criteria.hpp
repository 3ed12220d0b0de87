#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "innerlab/expr.hpp"
#include "innerlab/inner.hpp"
#include "innerlab/zero_sequence.hpp"

namespace innerlab {

/// Verdicts are about finite-grid estimates only:
/// bounded, comparable, divergent or inconclusive.
struct CriterionReport {
  std::string criterion;
  nlohmann::json params = nlohmann::json::object();
  double sup = 0.0;
  std::optional<Complex> witness;
  std::size_t witness_index = 0;   // canonical grid index of the witness
  std::string grid;
  double coarse_sup = 0.0;         // same estimator on the next coarser grid
  std::size_t samples = 0;
  std::size_t skipped = 0;         // points where the function was singular
  bool empty = false;              // no sampled point passed the region test
  std::string verdict = "inconclusive";

  nlohmann::json to_json() const;
};

/// Equispaced circle points 2 pi i / size, skipping those within `exclusion`
/// of the spectrum. The coarse grid is every second point.
struct BoundaryGrid {
  int size = 1 << 14;
  double exclusion = 1e-6;

  std::string describe() const;
};

/// Growth rule shared by all sup estimators: bounded when the fine sup is
/// within `tolerance` of the coarse one, divergent when it grew by half or
/// more, inconclusive in between or when the coarse sample is empty.
std::string refinement_verdict(double fine, double coarse, double tolerance = 0.1);

/// sup over Omega(theta, eps) of |f(z)| / (1 - |z|)^exponent.
CriterionReport decrease_sup(const AnalyticExpr& f, const InnerFunction& theta, double eps, double exponent,
                             const GridSpec& grid = {});

/// sup over Omega(theta, eps/2) of |f^(k)(z)| / (1 - |z|)^(alpha - k).
CriterionReport derivative_decrease(const AnalyticExpr& f, const InnerFunction& theta, double eps, double alpha,
                                    int k, const GridSpec& grid = {});

/// sup over the boundary grid of |f(zeta)| |theta'(zeta)|^N.
CriterionReport boundary_crit(const AnalyticExpr& f, const InnerFunction& theta, int N, const BoundaryGrid& grid = {});

/// sup over the boundary grid of |theta^(l)(zeta)| tau(zeta)^l.
CriterionReport shider_sup(const InnerFunction& theta, int l, const BoundaryGrid& grid = {});

struct LeibnizReport {
  int N = 0;
  std::vector<CriterionReport> products;  // l = 0..N: sup |f^(N-l) theta^(l)|
  std::vector<CriterionReport> scaled;    // l = 0..N: sup |f^(N-l)| / tau^l
  double max_sum_rel_error = 0.0;         // binomial sum against the jet of f theta

  nlohmann::json to_json() const;
};
LeibnizReport leibniz_terms(const AnalyticExpr& f, const InnerFunction& theta, int N, const BoundaryGrid& grid = {});

struct DecayProfile {
  int k = 0;
  double alpha = 0.0;
  double gate = 10.0;
  VectorXr r1;  // |f(z_j)| / (d_j^(alpha-k) (1 - |z_j|)^k)
  VectorXr r2;  // |f(z_j)| / (1 - |z_j|)^alpha
  VectorXr values;  // |f(z_j)|
  VectorXr gaps;    // d_j
  VectorXr defects; // 1 - |z_j|
  std::vector<bool> edge;
  double r1_min = 0.0, r1_max = 0.0, r2_min = 0.0, r2_max = 0.0;  // over interior indices
  std::string r1_verdict, r2_verdict;

  nlohmann::json to_json() const;
  /// j,|f(z_j)|,d_j,1-|z_j|,r1,r2,edge_flag
  std::string to_csv() const;
};

/// Ratios of |f(z_j)| against d_j^(alpha-k) (1-|z_j|)^k and (1-|z_j|)^alpha,
/// with gaps taken over the truncation and edge indices excluded from the
/// summaries.
DecayProfile zero_decay_profile(const VectorXr& values, const ZeroSequence& seq, int k, double alpha,
                                double gate = 10.0);
DecayProfile zero_decay_profile(const AnalyticExpr& f, const ZeroSequence& seq, int k, double alpha,
                                double gate = 10.0);

/// The table d_j^(alpha-k) (1 - |z_j|)^k.
VectorXr delta_table(const ZeroSequence& seq, int k, double alpha);

struct CoveringReport {
  double eps = 0.0;
  std::string grid;
  std::size_t samples = 0;
  bool empty = false;
  double lambda = 0.0;        // max over samples of min_j rho(z, z_j)
  double c_distance = 0.0;    // max |z - z*| / (1 - |z|), z* the rho-nearest zero
  double c_defect = 0.0;      // max (1 - |z*|) / (1 - |z|)
  std::optional<Complex> lambda_witness;
  std::size_t split_failures = 0;  // samples outside Omega(B1, sqrt eps) u Omega(B2, sqrt eps)
  double coarse_lambda = 0.0;

  nlohmann::json to_json() const;
};
CoveringReport covering_profile(const InnerFunction& b1, const InnerFunction& b2, double eps,
                                const GridSpec& grid = {});

}  // namespace innerlab

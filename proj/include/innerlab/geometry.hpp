#pragma once

#include <span>
#include <string>
#include <vector>

#include "innerlab/zero_sequence.hpp"

namespace innerlab {

enum class GapMode {
  kTruncated,       // gaps over the stored points only
  kGeneratorAware,  // append the next omitted generator terms first
};

/// d_j = min_{l != j} |z_j - z_l|.
VectorXr nearest_gaps(const ZeroSequence& seq, GapMode mode = GapMode::kTruncated);

/// Gaps measured against every other point of the closure (stored points
/// plus declared accumulation points).
VectorXr closure_gaps(const ZeroSequence& seq);

/// Truncation edge flags: the last two indices of a generated sequence.
std::vector<bool> edge_flags(const ZeroSequence& seq);

double rho(const Complex& z, const Complex& w);

struct CarlesonResult {
  double delta = 0.0;  // inf_j prod_{l != j} rho(z_j, z_l)
  int argmin = -1;
};
CarlesonResult carleson_delta(const ZeroSequence& seq);

struct SeparationResult {
  double min_rho = 0.0;
  int pair_i = -1, pair_j = -1;
  bool two_split = false;  // conflict graph {rho < threshold} is bipartite
  double threshold = 0.1;
  double best_split_rho = 0.0;  // largest achievable within-class min rho
  std::vector<int> coloring;    // a witness split at `threshold` (if any)
};
SeparationResult separation_check(const ZeroSequence& seq, double threshold = 0.1);

struct ArcResult {
  double c = 0.0;                // min over levels 0..depth
  std::vector<double> per_level; // min over the dyadic arcs of each level
  int worst_level = 0;
  int worst_arc = 0;
};
/// Dyadic arc scan of sup_{zeta in I} dist(zeta, E) / |I|.
ArcResult arc_condition(std::span<const Complex> set, int depth, int samples_per_arc = 64);
ArcResult arc_condition(const ZeroSequence& seq, int depth, int samples_per_arc = 64);

/// dist(zeta, E) = min over the set.
double set_distance(const Complex& zeta, std::span<const Complex> set);

/// integral over the circle of log dist(zeta, E) |d zeta|.
double bc_entropy(std::span<const Complex> set, int refinement = 10);
double bc_entropy(const ZeroSequence& seq, int refinement = 10);

struct RatioResult {
  VectorXr ratios;          // d_j / (1 - |z_j|)
  std::vector<bool> edge;
  double max = 0.0;         // over non-edge indices
  int argmax = -1;
};
RatioResult v1_ratio(const ZeroSequence& seq);

struct GeometryReport {
  ZeroSequence seq;
  VectorXr gaps;
  RatioResult ratio;
  CarlesonResult carleson;
  SeparationResult separation;
  ArcResult arc;
  double entropy = 0.0;
  double tail = 0.0;

  /// j,|z_j|,1-|z_j|,d_j,ratio,edge_flag
  std::string table_csv() const;
  nlohmann::json scalars_json() const;
};

GeometryReport geometry_report(const ZeroSequence& seq, int arc_depth = 6, int entropy_refinement = 10);

}  // namespace innerlab

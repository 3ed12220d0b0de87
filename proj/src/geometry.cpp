#include "innerlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace innerlab {

namespace {

void require_two(const ZeroSequence& seq) {
  if (seq.size() < 2) throw UsageError("gap geometry needs at least two points");
}

VectorXr gaps_against(std::span<const Complex> pts, std::span<const Complex> extra, int count) {
  VectorXr d(count);
  for (int j = 0; j < count; ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (int l = 0; l < static_cast<int>(pts.size()); ++l) {
      if (l != j) best = std::min(best, std::abs(pts[j] - pts[l]));
    }
    for (const auto& e : extra) best = std::min(best, std::abs(pts[j] - e));
    d[j] = best;
  }
  return d;
}

// Two-colors the graph {i ~ j : rho_ij < t}; returns false if not bipartite.
bool two_color(const Eigen::MatrixXd& r, double t, std::vector<int>& color) {
  const int n = static_cast<int>(r.rows());
  color.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v) {
        if (v == u || !(r(u, v) < t)) continue;
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

VectorXr nearest_gaps(const ZeroSequence& seq, GapMode mode) {
  require_two(seq);
  if (mode == GapMode::kGeneratorAware && seq.is_generated()) {
    const std::vector<Complex> extra = {seq.generator_term(seq.size() + 1), seq.generator_term(seq.size() + 2)};
    return gaps_against(seq.points(), extra, seq.size());
  }
  return gaps_against(seq.points(), {}, seq.size());
}

VectorXr closure_gaps(const ZeroSequence& seq) {
  if (seq.size() + static_cast<int>(seq.accumulation().size()) < 2) {
    throw UsageError("gap geometry needs at least two points");
  }
  return gaps_against(seq.points(), seq.accumulation(), seq.size());
}

std::vector<bool> edge_flags(const ZeroSequence& seq) {
  std::vector<bool> edge(seq.size(), false);
  if (seq.is_generated()) {
    for (int j = std::max(0, seq.size() - 2); j < seq.size(); ++j) edge[j] = true;
  }
  return edge;
}

double rho(const Complex& z, const Complex& w) {
  if (std::abs(z) > 1.0 || std::abs(w) > 1.0) throw UsageError("rho: points must lie in the closed disk");
  if (z == w) return 0.0;
  return pseudo_hyperbolic(z, w);
}

CarlesonResult carleson_delta(const ZeroSequence& seq) {
  require_two(seq);
  CarlesonResult out;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < seq.size(); ++j) {
    double log_prod = 0.0;
    for (int l = 0; l < seq.size(); ++l) {
      if (l != j) log_prod += std::log(rho(seq[j], seq[l]));
    }
    if (log_prod < best) {
      best = log_prod;
      out.argmin = j;
    }
  }
  out.delta = std::exp(best);
  return out;
}

SeparationResult separation_check(const ZeroSequence& seq, double threshold) {
  require_two(seq);
  const int n = seq.size();
  Eigen::MatrixXd r = Eigen::MatrixXd::Ones(n, n);
  SeparationResult out;
  out.threshold = threshold;
  out.min_rho = std::numeric_limits<double>::infinity();
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      r(i, j) = r(j, i) = rho(seq[i], seq[j]);
      values.push_back(r(i, j));
      if (r(i, j) < out.min_rho) {
        out.min_rho = r(i, j);
        out.pair_i = i;
        out.pair_j = j;
      }
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Largest t with {rho < t} bipartite: the first value v for which the graph
  // {rho <= v} fails to be bipartite (or 1 if it never does).
  std::vector<int> scratch;
  auto bipartite_le = [&](double v) { return two_color(r, std::nextafter(v, 2.0), scratch); };
  std::size_t lo = 0, hi = values.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (bipartite_le(values[mid])) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  out.best_split_rho = lo < values.size() ? values[lo] : 1.0;
  out.two_split = two_color(r, threshold, out.coloring);
  if (!out.two_split) out.coloring.clear();
  return out;
}

double set_distance(const Complex& zeta, std::span<const Complex> set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : set) best = std::min(best, std::abs(zeta - p));
  return best;
}

ArcResult arc_condition(std::span<const Complex> set, int depth, int samples_per_arc) {
  if (depth < 0 || depth > 16) throw UsageError("arc scan depth must lie in 0..16");
  if (set.empty()) throw UsageError("arc scan needs a nonempty set");
  if (samples_per_arc < 1) throw UsageError("arc scan needs at least one sample per arc");
  ArcResult out;
  out.c = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= depth; ++level) {
    const long arcs = 1L << level;
    const double len = kTwoPi / static_cast<double>(arcs);
    double level_min = std::numeric_limits<double>::infinity();
    int level_arc = 0;
    for (long a = 0; a < arcs; ++a) {
      double sup = 0.0;
      for (int s = 0; s < samples_per_arc; ++s) {
        const double t = len * (static_cast<double>(a) + (s + 0.5) / samples_per_arc);
        sup = std::max(sup, set_distance(std::polar(1.0, t), set));
      }
      const double ratio = sup / len;
      if (ratio < level_min) {
        level_min = ratio;
        level_arc = static_cast<int>(a);
      }
    }
    out.per_level.push_back(level_min);
    if (level_min < out.c) {
      out.c = level_min;
      out.worst_level = level;
      out.worst_arc = level_arc;
    }
  }
  return out;
}

ArcResult arc_condition(const ZeroSequence& seq, int depth, int samples_per_arc) {
  const auto e = seq.closure_points();
  return arc_condition(std::span<const Complex>(e), depth, samples_per_arc);
}

double bc_entropy(std::span<const Complex> set, int refinement) {
  if (set.empty()) throw UsageError("entropy needs a nonempty set");
  std::vector<double> breaks = {0.0, kTwoPi};
  for (const auto& p : set) {
    if (std::abs(p) > 0.0) breaks.push_back(circle_angle(p));
  }
  // log dist(., E) has a kink wherever the nearest point changes. The tie
  // set of p and q on the circle is cos(t - arg(q - p)) = (|q|^2 - |p|^2) / (2|q - p|);
  // keep the ties that sit on the lower envelope.
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const Complex diff = set[j] - set[i];
      const double c = (std::norm(set[j]) - std::norm(set[i])) / (2.0 * std::abs(diff));
      if (!(std::abs(c) <= 1.0)) continue;
      const double phase = std::arg(diff), spread = std::acos(c);
      for (double t : {phase + spread, phase - spread}) {
        const Complex zeta = std::polar(1.0, t);
        const double tie = std::abs(zeta - set[i]);
        if (set_distance(zeta, set) >= tie * (1.0 - 1e-12)) breaks.push_back(circle_angle(zeta));
      }
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double x, double y) { return y - x < 1e-15; }),
               breaks.end());

  boost::math::quadrature::tanh_sinh<double> integrator(static_cast<std::size_t>(std::max(refinement, 4)));
  auto f = [&](double t) { return std::log(set_distance(std::polar(1.0, t), set)); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] - breaks[i] <= 0.0) continue;
    total += integrator.integrate(f, breaks[i], breaks[i + 1]);
  }
  return total;
}

double bc_entropy(const ZeroSequence& seq, int refinement) {
  const auto e = seq.closure_points();
  return bc_entropy(std::span<const Complex>(e), refinement);
}

RatioResult v1_ratio(const ZeroSequence& seq) {
  const VectorXr d = nearest_gaps(seq);
  RatioResult out;
  out.edge = edge_flags(seq);
  out.ratios.resize(seq.size());
  out.max = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < seq.size(); ++j) {
    out.ratios[j] = d[j] / seq.defect(j);
    if (!out.edge[j] && out.ratios[j] > out.max) {
      out.max = out.ratios[j];
      out.argmax = j;
    }
  }
  return out;
}

GeometryReport geometry_report(const ZeroSequence& seq, int arc_depth, int entropy_refinement) {
  GeometryReport r{seq};
  r.gaps = nearest_gaps(seq);
  r.ratio = v1_ratio(seq);
  r.carleson = carleson_delta(seq);
  r.separation = separation_check(seq);
  r.arc = arc_condition(seq, arc_depth);
  r.entropy = bc_entropy(seq, entropy_refinement);
  r.tail = tail_mass(seq, seq.size());
  return r;
}

std::string GeometryReport::table_csv() const {
  std::ostringstream os;
  os << "j,|z_j|,1-|z_j|,d_j,ratio,edge_flag\n";
  for (int j = 0; j < seq.size(); ++j) {
    os << (j + 1) << ',' << fmt(std::abs(seq[j])) << ',' << fmt(seq.defect(j)) << ',' << fmt(gaps[j]) << ','
       << fmt(ratio.ratios[j]) << ',' << (ratio.edge[j] ? 1 : 0) << '\n';
  }
  return os.str();
}

nlohmann::json GeometryReport::scalars_json() const {
  return {
      {"schema", "1"},
      {"sequence", to_json(seq)},
      {"J", seq.size()},
      {"tail_mass", tail},
      {"v1_max", ratio.max},
      {"v1_argmax", ratio.argmax + 1},
      {"carleson_delta", carleson.delta},
      {"carleson_argmin", carleson.argmin + 1},
      {"separation_min_rho", separation.min_rho},
      {"two_split", separation.two_split},
      {"split_threshold", separation.threshold},
      {"best_split_rho", separation.best_split_rho},
      {"arc_constant", arc.c},
      {"arc_per_level", arc.per_level},
      {"bc_entropy", entropy},
      {"note", "estimates over a finite truncation; tail_mass bounds the omitted zeros"},
  };
}

}  // namespace innerlab

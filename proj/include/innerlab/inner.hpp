#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "innerlab/expr.hpp"
#include "innerlab/jet.hpp"
#include "innerlab/zero_sequence.hpp"

namespace innerlab {

struct Atom {
  Complex zeta;  // on the unit circle
  double mass;   // > 0
};

struct Spectrum {
  std::vector<Complex> points;  // zeros, atoms and declared accumulation points

  bool empty() const { return points.empty(); }
  /// dist(zeta, spectrum); 2 (the disk diameter) for an empty spectrum.
  double distance(const Complex& zeta) const;
};

/// Finite Blaschke product times a finite-atomic singular inner function,
/// lambda * prod_j b_j(z) * prod_i exp(-mass_i (zeta_i + z)/(zeta_i - z)),
/// with b_j(z) = (conj(z_j)/|z_j|) (z_j - z)/(1 - conj(z_j) z), or the bare
/// Möbius factor when normalizers are switched off. A zero at the origin
/// contributes the factor z.
class InnerFunction {
 public:
  InnerFunction() = default;

  static InnerFunction from_zeros(std::vector<Complex> zeros, bool normalized = true);
  static InnerFunction blaschke(const ZeroSequence& seq, bool normalized = true);
  static InnerFunction singular(std::vector<Atom> atoms);
  static InnerFunction identity();  // theta(z) = z

  const std::vector<Complex>& zeros() const { return zeros_; }
  const std::vector<double>& zero_defects() const { return defects_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Complex>& accumulation() const { return accumulation_; }
  Complex phase() const { return phase_; }
  bool normalized() const { return normalized_; }

  InnerFunction with_phase(Complex phase) const;
  InnerFunction with_accumulation(std::vector<Complex> points) const;

  Spectrum spectrum() const;

  /// The same function as an expression tree (accumulation points are not
  /// part of the closed form).
  AnalyticExpr to_expr() const;

  friend InnerFunction operator*(const InnerFunction& a, const InnerFunction& b);

 private:
  std::vector<Complex> zeros_;
  std::vector<double> defects_;
  std::vector<Atom> atoms_;
  std::vector<Complex> accumulation_;
  Complex phase_{1.0, 0.0};
  bool normalized_ = true;
};

/// theta(z) for z in the closed disk; points with |z| = 1 (to rounding) are
/// treated as circle points. Throws SingularityError at an atom.
Complex eval_inner(const InnerFunction& theta, const Complex& z);
Complex eval_inner_on_circle(const InnerFunction& theta, double angle);

JetC inner_jet(const InnerFunction& theta, const Complex& z, int order);
JetC inner_jet_on_circle(const InnerFunction& theta, double angle, int order);

/// |theta'(zeta)| = sum_j (1 - |z_j|^2)/|zeta - z_j|^2 + sum_i 2 mass_i/|zeta - zeta_i|^2.
double boundary_deriv_modulus(const InnerFunction& theta, double angle);
double boundary_deriv_modulus(const InnerFunction& theta, const Complex& zeta);

struct DTau {
  double d = 0.0;    // dist(zeta, spectrum)
  double tau = 0.0;  // min(d, 1/|theta'(zeta)|)
  bool empty_spectrum = false;
};
DTau d_tau(const InnerFunction& theta, double angle);
DTau d_tau(const InnerFunction& theta, const Complex& zeta);

/// Hyperbolically graded polar mesh.
///
/// Radii 1 - 2^(-q - s/S) for q = 0..Q-1, s = 0..S-1, then 1 - 2^(-Q); the
/// angular count on annulus q is M0 * 2^q. The grid at depth Q-1 is a subset
/// of the grid at depth Q (the `coarse` flag marks it).
struct GridSpec {
  int depth = 12;           // Q
  int radial_substeps = 8;  // S
  int angular_base = 16;    // M0

  std::size_t size() const;
  std::string describe() const;
};

struct GridPoint {
  std::size_t index;  // canonical order
  Complex z;
  double defect;      // 1 - |z|
  bool coarse;        // also a point of the depth Q-1 grid
};

void for_each_grid_point(const GridSpec& grid, const std::function<void(const GridPoint&)>& visit);

struct SublevelSample {
  double epsilon = 0.0;
  GridSpec grid;
  std::vector<Complex> points;
  std::vector<double> moduli;   // |theta(z)|
  std::vector<double> defects;  // 1 - |z|

  std::size_t size() const { return points.size(); }
  /// re,im,|theta(z)|,1-|z|
  std::string to_csv() const;
};

SublevelSample sample_sublevel(const InnerFunction& theta, double epsilon, const GridSpec& grid);

// {zeros: [[re,im],...], atoms: [[re,im,mass],...], phase: [re,im]}
nlohmann::json to_json(const InnerFunction& theta);
InnerFunction inner_from_json(const nlohmann::json& j);

}  // namespace innerlab

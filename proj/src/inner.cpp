#include "innerlab/inner.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace innerlab {

namespace {

bool on_circle(const Complex& z) { return std::abs(std::abs(z) - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon(); }

// |zeta - zeta_i| for two circle points, from their angles.
double chord(double angle, const Complex& zeta_i) {
  return std::abs(2.0 * std::sin(0.5 * (angle - circle_angle(zeta_i))));
}

Complex mobius_value(const Complex& a, bool normalized, const EvalPoint<Complex>& at) {
  const Complex& w = at.w;
  if (a == Complex(0.0, 0.0)) return w;
  const Complex d = at.angle ? w * std::conj(w - a) : one_minus_conj_mul(a, w);
  if (d == Complex(0.0, 0.0)) throw SingularityError("Möbius factor evaluated at its pole");
  Complex v = (a - w) / d;
  if (normalized) v *= std::conj(a) / std::abs(a);
  return v;
}

Complex atom_value(const Atom& at_i, const EvalPoint<Complex>& at) {
  if (at.angle) {
    const double half = 0.5 * (*at.angle - circle_angle(at_i.zeta));
    const double s = std::sin(half);
    if (s == 0.0) throw SingularityError("singular factor evaluated at its atom");
    return std::polar(1.0, -at_i.mass * std::cos(half) / s);
  }
  const Complex delta = at_i.zeta - at.w;
  if (delta == Complex(0.0, 0.0)) throw SingularityError("singular factor evaluated at its atom");
  return std::exp(-at_i.mass * (at_i.zeta + at.w) / delta);
}

Complex eval_at(const InnerFunction& theta, const EvalPoint<Complex>& at) {
  Complex v = theta.phase();
  for (const auto& a : theta.zeros()) v *= mobius_value(a, theta.normalized(), at);
  for (const auto& s : theta.atoms()) v *= atom_value(s, at);
  return v;
}

void check_boundary_spectrum(const InnerFunction& theta, double angle) {
  for (const auto& s : theta.atoms()) {
    if (chord(angle, s.zeta) == 0.0) throw SingularityError("boundary point lies on the spectrum");
  }
  for (const auto& p : theta.accumulation()) {
    if (chord(angle, p) == 0.0) throw SingularityError("boundary point lies on the spectrum");
  }
}

JetC jet_at(const InnerFunction& theta, const EvalPoint<Complex>& at, int order) {
  JetC j = JetC::constant(at.w, order, theta.phase());
  for (std::size_t i = 0; i < theta.zeros().size(); ++i) {
    j *= mobius_jet<Complex>(theta.zeros()[i], at, order, theta.normalized(), theta.zero_defects()[i]);
  }
  for (const auto& s : theta.atoms()) j *= atom_jet(s.zeta, s.mass, at, order);
  return j;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double Spectrum::distance(const Complex& zeta) const {
  if (points.empty()) return 2.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, std::abs(zeta - p));
  return best;
}

InnerFunction InnerFunction::from_zeros(std::vector<Complex> zeros, bool normalized) {
  InnerFunction f;
  for (const auto& z : zeros) {
    if (!(std::abs(z) < 1.0)) throw UsageError("Blaschke zeros must lie in the open disk");
    f.defects_.push_back(1.0 - std::abs(z));
  }
  f.zeros_ = std::move(zeros);
  f.normalized_ = normalized;
  return f;
}

InnerFunction InnerFunction::blaschke(const ZeroSequence& seq, bool normalized) {
  InnerFunction f;
  f.zeros_ = seq.points();
  f.defects_ = seq.defects();
  for (double d : f.defects_) {
    if (!(d > 0.0)) throw UsageError("Blaschke zeros must lie in the open disk");
  }
  f.accumulation_ = seq.accumulation();
  f.normalized_ = normalized;
  return f;
}

InnerFunction InnerFunction::singular(std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (std::abs(std::abs(a.zeta) - 1.0) > 1e-12) throw UsageError("atoms must lie on the unit circle");
    if (!(a.mass > 0.0)) throw UsageError("atom masses must be positive");
  }
  InnerFunction f;
  f.atoms_ = std::move(atoms);
  return f;
}

InnerFunction InnerFunction::identity() { return from_zeros({Complex(0.0, 0.0)}); }

InnerFunction InnerFunction::with_phase(Complex phase) const {
  if (std::abs(std::abs(phase) - 1.0) > 1e-12) throw UsageError("phase must be unimodular");
  InnerFunction f = *this;
  f.phase_ = phase;
  return f;
}

InnerFunction InnerFunction::with_accumulation(std::vector<Complex> points) const {
  InnerFunction f = *this;
  f.accumulation_ = std::move(points);
  return f;
}

Spectrum InnerFunction::spectrum() const {
  Spectrum s;
  s.points = zeros_;
  for (const auto& a : atoms_) s.points.push_back(a.zeta);
  s.points.insert(s.points.end(), accumulation_.begin(), accumulation_.end());
  return s;
}

AnalyticExpr InnerFunction::to_expr() const {
  std::vector<AnalyticExpr> factors = {constant(phase_)};
  for (const auto& z : zeros_) factors.push_back(mobius(z, normalized_));
  for (const auto& a : atoms_) factors.push_back(atom(a.zeta, a.mass));
  return product(std::move(factors));
}

InnerFunction operator*(const InnerFunction& a, const InnerFunction& b) {
  if (a.normalized_ != b.normalized_ && !a.zeros_.empty() && !b.zeros_.empty()) {
    throw UsageError("cannot multiply products with different normalization conventions");
  }
  InnerFunction f = a;
  if (a.zeros_.empty()) f.normalized_ = b.normalized_;
  f.zeros_.insert(f.zeros_.end(), b.zeros_.begin(), b.zeros_.end());
  f.defects_.insert(f.defects_.end(), b.defects_.begin(), b.defects_.end());
  f.atoms_.insert(f.atoms_.end(), b.atoms_.begin(), b.atoms_.end());
  f.accumulation_.insert(f.accumulation_.end(), b.accumulation_.begin(), b.accumulation_.end());
  f.phase_ = a.phase_ * b.phase_;
  return f;
}

Complex eval_inner(const InnerFunction& theta, const Complex& z) {
  if (std::abs(z) > 1.0 + 4.0 * std::numeric_limits<double>::epsilon()) {
    throw UsageError("inner functions are evaluated on the closed disk");
  }
  if (on_circle(z)) return eval_inner_on_circle(theta, circle_angle(z));
  return eval_at(theta, EvalPoint<Complex>::interior(z));
}

Complex eval_inner_on_circle(const InnerFunction& theta, double angle) {
  check_boundary_spectrum(theta, angle);
  return eval_at(theta, circle_point(angle));
}

JetC inner_jet(const InnerFunction& theta, const Complex& z, int order) {
  if (on_circle(z)) return inner_jet_on_circle(theta, circle_angle(z), order);
  return jet_at(theta, EvalPoint<Complex>::interior(z), order);
}

JetC inner_jet_on_circle(const InnerFunction& theta, double angle, int order) {
  check_boundary_spectrum(theta, angle);
  return jet_at(theta, circle_point(angle), order);
}

double boundary_deriv_modulus(const InnerFunction& theta, double angle) {
  check_boundary_spectrum(theta, angle);
  const Complex zeta = std::polar(1.0, angle);
  double sum = 0.0;
  for (std::size_t j = 0; j < theta.zeros().size(); ++j) {
    const double dj = theta.zero_defects()[j];
    const double dist = std::abs(zeta - theta.zeros()[j]);
    sum += dj * (2.0 - dj) / (dist * dist);
  }
  for (const auto& s : theta.atoms()) {
    const double c = chord(angle, s.zeta);
    sum += 2.0 * s.mass / (c * c);
  }
  return sum;
}

double boundary_deriv_modulus(const InnerFunction& theta, const Complex& zeta) {
  if (!on_circle(zeta)) throw UsageError("boundary derivative needs a point on the circle");
  return boundary_deriv_modulus(theta, circle_angle(zeta));
}

DTau d_tau(const InnerFunction& theta, double angle) {
  const double deriv = boundary_deriv_modulus(theta, angle);
  const Spectrum spec = theta.spectrum();
  DTau out;
  out.empty_spectrum = spec.empty();
  const Complex zeta = std::polar(1.0, angle);
  out.d = spec.distance(zeta);
  for (const auto& s : theta.atoms()) out.d = std::min(out.d, chord(angle, s.zeta));
  for (const auto& p : theta.accumulation()) out.d = std::min(out.d, chord(angle, p));
  out.tau = deriv > 0.0 ? std::min(out.d, 1.0 / deriv) : out.d;
  return out;
}

DTau d_tau(const InnerFunction& theta, const Complex& zeta) {
  if (!on_circle(zeta)) throw UsageError("d_tau needs a point on the circle");
  return d_tau(theta, circle_angle(zeta));
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;  // the origin
  for (int q = 0; q < depth; ++q) {
    for (int s = 0; s < radial_substeps; ++s) {
      if (q == 0 && s == 0) continue;
      n += static_cast<std::size_t>(angular_base) << q;
    }
  }
  return n + (static_cast<std::size_t>(angular_base) << depth);
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  os << "polar Q=" << depth << " S=" << radial_substeps << " M0=" << angular_base;
  return os.str();
}

void for_each_grid_point(const GridSpec& grid, const std::function<void(const GridPoint&)>& visit) {
  if (grid.depth < 1 || grid.radial_substeps < 1 || grid.angular_base < 1) {
    throw UsageError("grid parameters must be positive");
  }
  std::size_t index = 0;
  auto ring = [&](int q, double defect, bool coarse) {
    const long count = static_cast<long>(grid.angular_base) << q;
    const double r = 1.0 - defect;
    for (long k = 0; k < count; ++k) {
      const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(count);
      visit(GridPoint{index++, std::polar(r, t), defect, coarse});
    }
  };
  visit(GridPoint{index++, Complex(0.0, 0.0), 1.0, true});
  for (int q = 0; q < grid.depth; ++q) {
    for (int s = 0; s < grid.radial_substeps; ++s) {
      if (q == 0 && s == 0) continue;
      const double defect = std::exp2(-q - static_cast<double>(s) / grid.radial_substeps);
      ring(q, defect, q <= grid.depth - 2 || (q == grid.depth - 1 && s == 0));
    }
  }
  ring(grid.depth, std::exp2(-grid.depth), false);
}

std::string SublevelSample::to_csv() const {
  std::ostringstream os;
  os << "re,im,|theta(z)|,1-|z|\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    os << fmt(points[i].real()) << ',' << fmt(points[i].imag()) << ',' << fmt(moduli[i]) << ','
       << fmt(defects[i]) << '\n';
  }
  return os.str();
}

SublevelSample sample_sublevel(const InnerFunction& theta, double epsilon, const GridSpec& grid) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw UsageError("epsilon must lie in (0, 1)");
  SublevelSample out;
  out.epsilon = epsilon;
  out.grid = grid;
  for_each_grid_point(grid, [&](const GridPoint& p) {
    const double m = std::abs(eval_inner(theta, p.z));
    if (m < epsilon) {
      out.points.push_back(p.z);
      out.moduli.push_back(m);
      out.defects.push_back(p.defect);
    }
  });
  for (double m : out.moduli) {
    if (!(m < epsilon)) throw std::logic_error("sublevel sample contains a point outside the sublevel set");
  }
  return out;
}

nlohmann::json to_json(const InnerFunction& theta) {
  nlohmann::json j;
  j["schema"] = "1";
  j["zeros"] = nlohmann::json::array();
  for (const auto& z : theta.zeros()) j["zeros"].push_back({z.real(), z.imag()});
  j["defects"] = theta.zero_defects();
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : theta.atoms()) j["atoms"].push_back({a.zeta.real(), a.zeta.imag(), a.mass});
  j["phase"] = {theta.phase().real(), theta.phase().imag()};
  j["normalized"] = theta.normalized();
  j["accumulation"] = nlohmann::json::array();
  for (const auto& p : theta.accumulation()) j["accumulation"].push_back({p.real(), p.imag()});
  return j;
}

InnerFunction inner_from_json(const nlohmann::json& j) {
  std::vector<Complex> zeros;
  for (const auto& z : j.value("zeros", nlohmann::json::array())) {
    zeros.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  }
  InnerFunction f = InnerFunction::from_zeros(zeros, j.value("normalized", true));
  std::vector<Atom> atoms;
  for (const auto& a : j.value("atoms", nlohmann::json::array())) {
    atoms.push_back({Complex(a.at(0).get<double>(), a.at(1).get<double>()), a.at(2).get<double>()});
  }
  if (!atoms.empty()) f = f * InnerFunction::singular(std::move(atoms));
  if (j.contains("phase")) {
    const auto& p = j.at("phase");
    f = p.is_array() ? f.with_phase({p.at(0).get<double>(), p.at(1).get<double>()})
                     : f.with_phase({p.get<double>(), 0.0});
  }
  std::vector<Complex> acc;
  for (const auto& p : j.value("accumulation", nlohmann::json::array())) {
    acc.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  }
  return f.with_accumulation(std::move(acc));
}

}  // namespace innerlab

// One pass/fail line per acceptance criterion, each with its own time budget.
// Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "innerlab/admissible.hpp"
#include "innerlab/cramer.hpp"
#include "innerlab/criteria.hpp"
#include "innerlab/geometry.hpp"
#include "innerlab/suites.hpp"
#include "pinned.hpp"

using namespace innerlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string format(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.ok && in_time;
  failures += pass ? 0 : 1;
  std::printf("[%s] %2d %-28s %6.2fs/%gs  %s%s\n", pass ? "PASS" : "FAIL", id, title, secs, budget_s,
              o.detail.c_str(), in_time ? "" : "  (over time budget)");
  std::fflush(stdout);
}

InnerFunction random_finite(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rad(0.0, 0.95), ang(0.0, kTwoPi), mass(0.1, 2.0);
  std::vector<Complex> z(1 + rng() % 6);
  for (auto& p : z) p = std::polar(std::sqrt(rad(rng)), ang(rng));
  InnerFunction theta = InnerFunction::from_zeros(z);
  if (rng() % 2) theta = theta * InnerFunction::singular({{std::polar(1.0, ang(rng)), mass(rng)}});
  return theta.with_phase(std::polar(1.0, ang(rng)));
}

Outcome matrix_nonsingular() {
  int count = 0;
  for (int n = 1; n <= 12; ++n)
    for (int k = n / 2 + 1; k <= n; ++k) {
      if (det_exact(build_M(k, n)) == Rational(0)) return {false, format("det M(%d,%d) = 0", k, n)};
      ++count;
    }
  const Rational d23 = det_exact(build_M(2, 3)), d34 = det_exact(build_M(3, 4));
  const bool spots = d23 == Rational(1, 12) && d34 == Rational(1, 144);
  return {spots, format("%d matrices nonsingular; det M(2,3)=%s det M(3,4)=%s", count, to_string(d23).c_str(),
                        to_string(d34).c_str())};
}

Outcome product_rule(std::vector<IdentityOutcome>& outcomes) {
  std::mt19937_64 rng(0);
  bool exact = true;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const IdentityOutcome o = check_identities(random_identity_case(rng, 8, 4));
    exact = exact && o.product_rule_exact;
    worst = std::max(worst, o.product_rule_rel);
    outcomes.push_back(o);
  }
  return {exact && worst <= 1e-11, format("50 cases: exact %s, float worst rel %.3g (gate 1e-11)",
                                          exact ? "yes" : "NO", worst)};
}

Outcome power_band(const std::vector<IdentityOutcome>& outcomes) {
  bool exact = true;
  double worst = 0.0;
  for (const auto& o : outcomes) {
    exact = exact && o.induction_exact;
    worst = std::max(worst, o.induction_rel);
  }
  bool ok = exact && worst <= 1e-11;
  std::string detail = format("induction exact %s, float worst rel %.3g;", exact ? "yes" : "NO", worst);
  const InnerFunction b = InnerFunction::blaschke(ZeroSequence::radial(0.5, 40));
  std::string raw;
  for (int m = 1; m <= 3; ++m) {
    double lo = INFINITY, hi = 0.0;
    for (int j = 5; j <= 35; ++j) {
      const double v = blaschke_power_ratio(b, j - 1, m);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const bool pinned_ok = std::abs(lo / pinned::kBandMin[m] - 1) <= 1e-9 && std::abs(hi / pinned::kBandMax[m] - 1) <= 1e-9;
    const double spread = hi / lo;
    const bool gated = spread >= 1e-3 && spread <= 1e3;
    ok = ok && pinned_ok && gated;
    detail += format(" m=%d max/min %.3f%s%s", m, spread, pinned_ok ? "" : " OFF-PIN", gated ? "" : " OFF-GATE");
    raw += format(" m=%d [%.3g, %.3g]", m, lo, hi);
  }
  std::printf("       info: raw ratios over j=5..35:%s\n", raw.c_str());
  return {ok, detail};
}

Outcome delta_certificate() {
  double worst = 0.0;
  int count = 0;
  for (int J : {5, 10, 20, 30, 40})
    for (const auto& seq : {ZeroSequence::spiral(0.25, 0.5, J), ZeroSequence::radial(0.5, J)})
      for (int n = 0; n <= 4; ++n)
        for (double frac : {0.25, 0.5, 0.75, 1.0})
          for (int k = 0; k <= n; ++k) {
            worst = std::max(worst, check_admissible(build_delta_jet(seq, k, n + frac)).c_min);
            ++count;
          }
  return {worst <= 1 + 1e-12, format("%d jets, worst C_min %.15g (gate 1 + 1e-12)", count, worst)};
}

Outcome dichotomy() {
  const auto sp = v1_ratio(ZeroSequence::spiral(0.25, 0.5, 30));
  bool increasing = true;
  double prev = 0.0;
  for (int j = 0; j < sp.ratios.size(); ++j) {
    if (sp.edge[j]) continue;
    increasing = increasing && sp.ratios[j] > prev;
    prev = sp.ratios[j];
  }
  const auto rd = v1_ratio(ZeroSequence::radial(0.5, 30));
  double dev = 0.0;
  for (int j = 0; j < rd.ratios.size(); ++j)
    if (!rd.edge[j]) dev = std::max(dev, std::abs(rd.ratios[j] - 0.5));
  return {increasing && sp.max > 1e6 && dev <= 1e-12,
          format("spiral increasing %s max %.3g; radial max |ratio - 1/2| %.2g", increasing ? "yes" : "NO", sp.max,
                 dev)};
}

Outcome cramer_recovery() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0), rad(0.0, 0.8), ang(0.0, kTwoPi);
  double worst = 0.0;
  int done = 0;
  while (done < 200) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int k = n / 2 + 1 + static_cast<int>(rng() % (n - n / 2));
    const Complex zj = std::polar(rad(rng), ang(rng));
    const Complex zl = zj + std::polar(0.05 + 0.1 * (rng() % 4), ang(rng));
    if (std::abs(zl) >= 0.95) continue;
    std::vector<Complex> h(1 + rng() % 5);
    for (auto& c : h) c = {u(rng), u(rng)};
    const AnalyticExpr g = pow(polynomial({-zj, 1.0}), k) * polynomial(h) * mobius(std::polar(0.9, ang(rng)), true);
    const Recovery rec = recover_gk(g, zj, zl, k, n, n + 0.5);
    worst = std::max(worst, std::abs(rec.solution.unknowns[0] - rec.expected[0]) / std::abs(rec.expected[0]));
    ++done;
  }
  // g = z^2, k = 2, n = 3, z_j = 0, z_l = 1/2
  const Recovery hand = recover_gk(pow(identity(), 2), 0.0, 0.5, 2, 3, 3.5);
  RationalVector r(2);
  r << Rational(1), Rational(2);
  const auto exact = cramer_solve(build_M(2, 3), r);
  const bool hand_ok = hand.rhs[0] == Complex(1.0) && hand.rhs[1] == Complex(2.0) &&
                       exact.unknowns[0] == Rational(2) && exact.unknowns[1] == Rational(0);
  return {worst <= 1e-9 && hand_ok, format("200 recoveries, worst rel error of u_0 %.3g; hand case R=(%g,%g) u=(%s,%s)",
                                           worst, hand.rhs[0].real(), hand.rhs[1].real(),
                                           to_string(exact.unknowns[0]).c_str(), to_string(exact.unknowns[1]).c_str())};
}

Outcome decay_profiles() {
  const double alpha = 2.5;
  const int k = 2;
  double r1_dev = 0.0;
  const auto spiral = ZeroSequence::spiral(0.25, 0.5, 30), radial = ZeroSequence::radial(0.5, 30);
  for (const auto& seq : {spiral, radial}) {
    const auto p = zero_decay_profile(delta_table(seq, k, alpha), seq, k, alpha);
    for (int j = 0; j < p.r1.size(); ++j) r1_dev = std::max(r1_dev, std::abs(p.r1[j] - 1.0));
  }
  const auto sp = zero_decay_profile(delta_table(spiral, k, alpha), spiral, k, alpha);
  const auto rp = zero_decay_profile(delta_table(radial, k, alpha), radial, k, alpha);
  const double target = std::pow(0.5, alpha - k);
  double r2_dev = 0.0;
  for (int j = 0; j < rp.r2.size(); ++j)
    if (!rp.edge[j]) r2_dev = std::max(r2_dev, std::abs(rp.r2[j] - target));
  return {r1_dev <= 1e-12 && sp.r2_max > 1e2 && r2_dev <= 1e-12,
          format("r1 dev %.2g; spiral r2 sup %.3g; radial r2 dev from (1-a)^(alpha-k) %.2g", r1_dev, sp.r2_max,
                 r2_dev)};
}

Outcome splitting() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> rad(0.0, 0.95), ang(0.0, kTwoPi);
  std::size_t samples = 0, failures_seen = 0;
  int redraws = 0;
  const GridSpec grid{10, 8, 16};
  for (int i = 0; i < 10; ++i) {
    for (;;) {
      std::vector<Complex> z1(1 + rng() % 4), z2(1 + rng() % 4);
      for (auto& z : z1) z = std::polar(std::sqrt(rad(rng)), ang(rng));
      for (auto& z : z2) z = std::polar(std::sqrt(rad(rng)), ang(rng));
      const auto b1 = InnerFunction::from_zeros(z1), b2 = InnerFunction::from_zeros(z2);
      const auto a = covering_profile(b1, b2, 0.04, grid), b = covering_profile(b1, b2, 0.25, grid);
      if (a.empty || b.empty) {
        ++redraws;
        continue;
      }
      samples += a.samples + b.samples;
      failures_seen += a.split_failures + b.split_failures;
      break;
    }
  }
  return {failures_seen == 0, format("10 factored B, eps in {0.04, 0.25}: %zu samples, %zu exceptions (%d empty draws redrawn)",
                                     samples, failures_seen, redraws)};
}

Outcome boundary_machinery() {
  const InnerFunction atom1 = InnerFunction::singular({{1.0, 1.0}});
  const InnerFunction ident = InnerFunction::identity();
  const AnalyticExpr one_minus_z = constant(1.0) - identity();
  const BoundaryGrid fine{1 << 14, 1e-6}, coarse{1 << 13, 1e-6};
  const auto bc = boundary_crit(pow(one_minus_z, 2), atom1, 1, fine);
  const bool bc_ok = std::abs(bc.sup - 2.0) <= 1e-9;

  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
  double shider_change = 0.0;
  for (const auto& [theta, l] : {std::pair{ident, 1}, std::pair{atom1, 1},
                                 std::pair{InnerFunction::from_zeros({0.5}), 2}})
    shider_change = std::max(shider_change, rel(shider_sup(theta, l, fine).sup, shider_sup(theta, l, coarse).sup));

  const InnerFunction three = InnerFunction::from_zeros({{0.3, 0.2}, {-0.5, 0.1}, {0.1, -0.6}});
  double leib_change = 0.0, leib_sum = 0.0;
  for (const auto& [f, theta, N] :
       {std::tuple{constant(1.0), ident, 1}, std::tuple{pow(one_minus_z, 2), atom1, 1},
        std::tuple{polynomial({0.3, Complex(0.0, -0.7), 0.2, Complex(0.5, 0.5)}), three, 2}}) {
    const auto a = leibniz_terms(f, theta, N, coarse), b = leibniz_terms(f, theta, N, fine);
    leib_sum = std::max(leib_sum, b.max_sum_rel_error);
    for (int l = 0; l <= N; ++l) {
      leib_change = std::max(leib_change, rel(a.products[l].sup, b.products[l].sup));
      leib_change = std::max(leib_change, rel(a.scaled[l].sup, b.scaled[l].sup));
    }
  }
  return {bc_ok && shider_change <= 0.1 && leib_change <= 0.1 && leib_sum <= 1e-11,
          format("boundary_crit %.12g; shider change %.3g, leibniz change %.3g, sum rel %.2g", bc.sup, shider_change,
                 leib_change, leib_sum)};
}

Outcome boundary_modulus() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  double mod_dev = 0.0, deriv_dev = 0.0;
  int points = 0;
  for (int f = 0; f < 50; ++f) {
    const InnerFunction theta = random_finite(rng);
    for (int i = 0; i < 100; ++i) {
      const double t = ang(rng);
      if (theta.spectrum().distance(std::polar(1.0, t)) < 1e-4) continue;
      mod_dev = std::max(mod_dev, std::abs(std::abs(eval_inner(theta, std::polar(1.0, t))) - 1.0));
      const double jet = std::abs(inner_jet_on_circle(theta, t, 1).derivative(1));
      deriv_dev = std::max(deriv_dev, std::abs(boundary_deriv_modulus(theta, t) - jet) / jet);
      ++points;
    }
  }
  return {mod_dev <= 1e-12 && deriv_dev <= 1e-10,
          format("50 functions, %d points: max ||theta|-1| %.2g, derivative rel %.2g", points, mod_dev, deriv_dev)};
}

}  // namespace

int main() {
  std::vector<IdentityOutcome> identity_outcomes;
  criterion(1, "matrix nonsingularity", 1, matrix_nonsingular);
  criterion(2, "product rule at zeros", 5, [&] { return product_rule(identity_outcomes); });
  criterion(3, "power induction and band", 10, [&] { return power_band(identity_outcomes); });
  criterion(4, "delta jet certificate", 20, delta_certificate);
  criterion(5, "separation dichotomy", 1, dichotomy);
  criterion(6, "cramer recovery", 5, cramer_recovery);
  criterion(7, "decay profiles", 1, decay_profiles);
  criterion(8, "splitting exactness", 10, splitting);
  criterion(9, "boundary machinery", 15, boundary_machinery);
  criterion(10, "boundary modulus", 5, boundary_modulus);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

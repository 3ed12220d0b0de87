#include <gtest/gtest.h>

#include <random>

#include "innerlab/admissible.hpp"
#include "innerlab/geometry.hpp"

using namespace innerlab;

namespace {

std::vector<Complex> random_points(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> rad(0.0, 0.95), ang(0.0, 2 * kPi);
  std::vector<Complex> pts;
  for (int i = 0; i < count; ++i) pts.push_back(std::polar(rad(rng), ang(rng)));
  return pts;
}

}  // namespace

TEST(Admissible, IdentityTraceOnTwoPoints) {
  JetData d{{0.0, 0.5}, 0, 1.0, Eigen::MatrixXcd(1, 2)};
  d.phi << 0.0, 0.5;
  const auto r = check_admissible(d);
  EXPECT_DOUBLE_EQ(r.c_min, 1.0);
  EXPECT_TRUE(r.pass);
}

TEST(Admissible, JumpNeedsLargeConstant) {
  JetData d{{0.0, 0.01}, 0, 0.5, Eigen::MatrixXcd(1, 2)};
  d.phi << 0.0, 1.0;
  const auto r = check_admissible(d);
  EXPECT_NEAR(r.c_min, 10.0, 1e-12);  // 1 / 0.01^(1/2)
  EXPECT_FALSE(r.pass);
}

TEST(Admissible, PolynomialTracesOfDegreeNAreExact) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng() % 5);
    std::vector<Complex> c(n + 1);
    for (auto& x : c) x = {u(rng), u(rng)};
    const auto d = trace_of_expr(polynomial(c), random_points(rng, 6), n, n + 0.75);
    // zero up to rounding, which the division by |z - w|^(alpha - s) amplifies
    double closest = 2.0;
    for (std::size_t i = 0; i < d.points.size(); ++i)
      for (std::size_t j = i + 1; j < d.points.size(); ++j) closest = std::min(closest, std::abs(d.points[i] - d.points[j]));
    const double tol = 1e-14 * (1.0 + d.phi.cwiseAbs().maxCoeff()) * 16.0 / std::pow(closest, d.alpha);
    EXPECT_LE(check_admissible(d).c_min, tol) << "n=" << n;
  }
}

TEST(Admissible, ScalingCovariance) {
  std::mt19937_64 rng(59);
  const auto d = trace_of_expr(mobius({0.2, 0.3}, true) * atom(1.0, 0.5), random_points(rng, 8), 2, 2.5);
  const double base = check_admissible(d).c_min;
  JetData scaled = d;
  scaled.phi *= Complex(0.0, 3.0);
  EXPECT_NEAR(check_admissible(scaled).c_min, 3.0 * base, 1e-12 * base);
}

TEST(Admissible, RotationInvariance) {
  std::mt19937_64 rng(61);
  const auto d = trace_of_expr(pow1m(2.5), random_points(rng, 8), 2, 2.5);
  const double base = check_admissible(d).c_min;
  // rotate E by omega and multiply phi_s by omega^(-s): the Taylor relation is unchanged
  const Complex omega = std::polar(1.0, 0.7);
  JetData rot = d;
  for (auto& p : rot.points) p *= omega;
  for (int s = 0; s <= rot.n; ++s) rot.phi.row(s) *= std::pow(omega, -s);
  EXPECT_NEAR(check_admissible(rot).c_min, base, 1e-12 * base);
}

TEST(Admissible, WitnessAttainsTheConstant) {
  std::mt19937_64 rng(67);
  const auto d = trace_of_expr(atom({0.0, 1.0}, 1.0), random_points(rng, 10), 1, 1.5);
  const auto r = check_admissible(d);
  const Complex z = d.points[r.worst_z], w = d.points[r.worst_w];
  Complex taylor = 0.0;
  double fact = 1.0;
  for (int m = 0; m <= d.n - r.worst_s; ++m) {
    if (m > 0) fact *= m;
    taylor += d.phi(r.worst_s + m, r.worst_w) / fact * std::pow(z - w, m);
  }
  const double lhs = std::abs(d.phi(r.worst_s, r.worst_z) - taylor);
  EXPECT_NEAR(lhs / std::pow(std::abs(z - w), d.alpha - r.worst_s), r.c_min, 1e-12 * r.c_min);
}

TEST(DeltaJet, ShapeAndValues) {
  const auto seq = ZeroSequence::radial(0.5, 6);
  const auto d = build_delta_jet(seq, 1, 1.5);
  EXPECT_EQ(d.n, 1);
  ASSERT_EQ(d.points.size(), 7u);  // points and the accumulation point 1
  const VectorXr gaps = closure_gaps(seq);
  for (int j = 0; j < 6; ++j) {
    EXPECT_EQ(d.phi(0, j), Complex(0.0));
    EXPECT_NEAR(d.phi(1, j).real(), std::pow(gaps[j], 0.5), 1e-15);
  }
  EXPECT_EQ(d.phi(1, 6), Complex(0.0));
  EXPECT_THROW(build_delta_jet(seq, 2, 1.5), UsageError);
}

TEST(DeltaJet, GeneratedSequencesStayBelowOne) {
  for (const auto& seq : {ZeroSequence::radial(0.5, 20), ZeroSequence::spiral(0.25, 0.5, 20)}) {
    for (int n = 0; n <= 3; ++n)
      for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        const double alpha = n + frac;
        for (int k = 0; k <= n; ++k) {
          const auto r = check_admissible(build_delta_jet(seq, k, alpha));
          EXPECT_LE(r.c_min, 1.0 + 1e-12) << "k=" << k << " alpha=" << alpha;
          EXPECT_TRUE(r.has_boundary_points);
        }
      }
  }
}

TEST(JetData, Validation) {
  JetData d{{0.0, 0.5}, 1, 1.5, Eigen::MatrixXcd::Zero(2, 2)};
  EXPECT_NO_THROW(d.validate());
  d.alpha = 2.5;
  EXPECT_THROW(d.validate(), UsageError);
  d.alpha = 1.0;
  EXPECT_THROW(d.validate(), UsageError);
  d.alpha = 1.5;
  d.points = {0.5, 0.5};
  EXPECT_THROW(d.validate(), UsageError);
  d.points = {0.0, 1.5};
  EXPECT_THROW(d.validate(), UsageError);
  d.points = {0.0, 0.5};
  d.phi = Eigen::MatrixXcd::Zero(1, 2);
  EXPECT_THROW(d.validate(), UsageError);
  EXPECT_THROW(check_admissible(JetData{{0.0}, 0, 1.0, Eigen::MatrixXcd::Zero(1, 1)}), UsageError);
}

TEST(JetData, JsonRoundTrip) {
  const auto d = build_delta_jet(ZeroSequence::spiral(0.25, 0.5, 5), 0, 0.75);
  const auto back = jet_data_from_json(to_json(d));
  EXPECT_EQ(back.points, d.points);
  EXPECT_EQ(back.phi, d.phi);
  EXPECT_EQ(back.alpha, d.alpha);
  const auto report = to_json(check_admissible(d), d);
  EXPECT_EQ(report.at("C_min"), check_admissible(d).c_min);
  EXPECT_TRUE(report.contains("note"));
}

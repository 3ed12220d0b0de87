#include <gtest/gtest.h>

#include <random>

#include "innerlab/inner.hpp"

using namespace innerlab;

namespace {

InnerFunction random_inner(std::mt19937_64& rng, bool with_atom) {
  std::uniform_real_distribution<double> rad(0.0, 0.95), ang(0.0, 2 * kPi), mass(0.1, 2.0);
  std::vector<Complex> zeros;
  const int n = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < n; ++i) zeros.push_back(std::polar(rad(rng), ang(rng)));
  InnerFunction b = InnerFunction::from_zeros(zeros);
  if (!with_atom) return b;
  return b * InnerFunction::singular({{std::polar(1.0, ang(rng)), mass(rng)}});
}

}  // namespace

TEST(Inner, SingleZeroAtOrigin) {
  const auto b = InnerFunction::from_zeros({0.5});
  EXPECT_NEAR(std::abs(eval_inner(b, 0.0) - Complex(0.5)), 0.0, 1e-16);
  EXPECT_EQ(eval_inner(b, 0.5), Complex(0.0));
  const auto id = InnerFunction::identity();
  EXPECT_EQ(eval_inner(id, Complex(0.3, -0.2)), Complex(0.3, -0.2));
}

TEST(Inner, AtomAtOrigin) {
  const auto s = InnerFunction::singular({{1.0, 1.0}});
  EXPECT_NEAR(std::abs(eval_inner(s, 0.0) - std::exp(-1.0)), 0.0, 1e-16);
}

TEST(Inner, UnimodularOnTheCircle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const auto theta = random_inner(rng, trial % 2 == 1);
    const double t = ang(rng);
    if (theta.spectrum().distance(std::polar(1.0, t)) < 1e-3) continue;
    EXPECT_NEAR(std::abs(eval_inner_on_circle(theta, t)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(eval_inner(theta, std::polar(1.0, t))), 1.0, 1e-12);
  }
}

TEST(Inner, BoundedByOneInside) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> rad(0.0, 0.999), ang(0.0, 2 * kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const auto theta = random_inner(rng, true);
    EXPECT_LE(std::abs(eval_inner(theta, std::polar(rad(rng), ang(rng)))), 1.0 + 1e-14);
  }
}

TEST(Inner, Multiplicative) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> rad(0.0, 0.9), ang(0.0, 2 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_inner(rng, true), b = random_inner(rng, false);
    const Complex z = std::polar(rad(rng), ang(rng));
    const Complex want = eval_inner(a, z) * eval_inner(b, z);
    EXPECT_LE(std::abs(eval_inner(a * b, z) - want), 1e-13);
    EXPECT_LE(std::abs((a * b).to_expr()(z) - want), 1e-13);
  }
}

TEST(Inner, JetAgreesWithExpression) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto theta = random_inner(rng, true);
    const Complex z(0.1, -0.3);
    const JetC a = inner_jet(theta, z, 5);
    const JetC b = jet_of_expr<Complex>(theta.to_expr(), z, 5);
    for (int i = 0; i <= 5; ++i) EXPECT_LE(std::abs(a.coeff(i) - b.coeff(i)), 1e-9 * std::max(1.0, std::abs(b.coeff(i))));
  }
}

TEST(Inner, BoundaryDerivativeModulus) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const auto theta = random_inner(rng, true);
    const double t = ang(rng);
    if (theta.spectrum().distance(std::polar(1.0, t)) < 1e-2) continue;
    const double from_jet = std::abs(inner_jet_on_circle(theta, t, 1).derivative(1));
    EXPECT_NEAR(boundary_deriv_modulus(theta, t), from_jet, 1e-10 * from_jet);
  }
  // single atom: 2 sigma / |zeta - zeta_0|^2, at the antipode 2 sigma / 4
  const auto s = InnerFunction::singular({{1.0, 3.0}});
  EXPECT_NEAR(boundary_deriv_modulus(s, kPi), 1.5, 1e-14);
}

TEST(Inner, DistanceAndTau) {
  const auto id = InnerFunction::identity();
  const DTau dt = d_tau(id, 0.7);
  EXPECT_NEAR(dt.d, 1.0, 1e-15);
  EXPECT_NEAR(dt.tau, 1.0, 1e-15);
  const auto s = InnerFunction::singular({{1.0, 1.0}});
  // d = |zeta - 1| = 2 at the antipode, |S'| = 1/2, so tau = min(2, 2) = 2
  const DTau ds = d_tau(s, kPi);
  EXPECT_NEAR(ds.d, 2.0, 1e-15);
  EXPECT_NEAR(ds.tau, 2.0, 1e-14);
  const DTau near = d_tau(s, 0.1);
  EXPECT_LT(near.tau, near.d);
}

TEST(Inner, RejectsPointsOutsideOrOnTheSpectrum) {
  EXPECT_THROW(InnerFunction::from_zeros({1.0}), UsageError);
  EXPECT_THROW(InnerFunction::singular({{0.5, 1.0}}), UsageError);
  EXPECT_THROW(InnerFunction::singular({{1.0, -1.0}}), UsageError);
  const auto s = InnerFunction::singular({{1.0, 1.0}});
  EXPECT_THROW(eval_inner_on_circle(s, 0.0), SingularityError);
  EXPECT_THROW(boundary_deriv_modulus(s, 0.0), SingularityError);
}

TEST(Inner, AccumulationPointsJoinTheSpectrum) {
  const auto b = InnerFunction::blaschke(ZeroSequence::radial(0.5, 10));
  ASSERT_EQ(b.accumulation().size(), 1u);
  // zeros belong to the spectrum as well; the nearest to i is 1/2
  EXPECT_NEAR(b.spectrum().distance(Complex(0.0, 1.0)), std::sqrt(1.25), 1e-12);
  EXPECT_THROW(eval_inner_on_circle(b, 0.0), SingularityError);
}

TEST(Inner, JsonRoundTrip) {
  const auto theta = (InnerFunction::from_zeros({{0.1, 0.2}, {-0.5, 0.0}}) *
                      InnerFunction::singular({{Complex(0.0, 1.0), 0.5}}))
                         .with_phase(Complex(0.0, 1.0));
  const auto back = inner_from_json(to_json(theta));
  const Complex z(0.2, 0.3);
  EXPECT_EQ(eval_inner(back, z), eval_inner(theta, z));
  EXPECT_EQ(to_json(back), to_json(theta));
}

TEST(Grid, SizeAndCanonicalOrder) {
  const GridSpec g{4, 3, 8};
  std::size_t n = 0, expected_index = 0;
  for_each_grid_point(g, [&](const GridPoint& p) {
    EXPECT_EQ(p.index, expected_index++);
    EXPECT_LT(std::abs(p.z), 1.0);
    EXPECT_NEAR(p.defect, 1.0 - std::abs(p.z), 1e-15);
    ++n;
  });
  // origin + sum_q (S - [q = 0]) M0 2^q + M0 2^Q
  std::size_t want = 1 + 8 * 16;
  for (int q = 0; q < 4; ++q) want += (q == 0 ? 2 : 3) * 8 * (1u << q);
  EXPECT_EQ(n, want);
  EXPECT_EQ(g.size(), want);
  EXPECT_EQ(g.describe(), "polar Q=4 S=3 M0=8");
}

TEST(Grid, CoarseFlagMarksTheShallowerGrid) {
  const GridSpec fine{5, 4, 16}, coarse{4, 4, 16};
  std::vector<Complex> flagged, shallow;
  for_each_grid_point(fine, [&](const GridPoint& p) {
    if (p.coarse) flagged.push_back(p.z);
  });
  for_each_grid_point(coarse, [&](const GridPoint& p) { shallow.push_back(p.z); });
  ASSERT_EQ(flagged.size(), shallow.size());
  for (std::size_t i = 0; i < flagged.size(); ++i) EXPECT_LE(std::abs(flagged[i] - shallow[i]), 1e-15);
}

TEST(Sublevel, IdentityDisk) {
  const auto id = InnerFunction::identity();
  const GridSpec g{6, 4, 16};
  const auto s = sample_sublevel(id, 0.5, g);
  std::size_t want = 0;
  for_each_grid_point(g, [&](const GridPoint& p) { want += std::abs(p.z) < 0.5 ? 1 : 0; });
  EXPECT_EQ(s.size(), want);
  EXPECT_GT(s.size(), 0u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_LT(s.moduli[i], 0.5);
    EXPECT_NEAR(s.defects[i], 1.0 - std::abs(s.points[i]), 1e-15);
  }
  const std::string csv = s.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "re,im,|theta(z)|,1-|z|");
}

TEST(Sublevel, SingularFunctionReachesTheBoundary) {
  const auto s = InnerFunction::singular({{1.0, 1.0}});
  const auto sample = sample_sublevel(s, 0.05, GridSpec{10, 4, 16});
  ASSERT_GT(sample.size(), 0u);
  double min_defect = 1.0;
  for (double d : sample.defects) min_defect = std::min(min_defect, d);
  // |S| < eps is a horodisk at 1 tangent to the circle
  EXPECT_LT(min_defect, 1e-2);
}

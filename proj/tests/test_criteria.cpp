#include <gtest/gtest.h>

#include <random>

#include "innerlab/criteria.hpp"
#include "innerlab/geometry.hpp"
#include "pinned.hpp"

using namespace innerlab;

namespace {

const InnerFunction kAtomAtOne = InnerFunction::singular({{1.0, 1.0}});

InnerFunction subset(const ZeroSequence& seq, int first, int step) {
  std::vector<Complex> z;
  for (int j = first; j < seq.size(); j += step) z.push_back(seq[j]);
  return InnerFunction::from_zeros(z);
}

}  // namespace

TEST(Verdict, RefinementRule) {
  EXPECT_EQ(refinement_verdict(1.05, 1.0), "bounded");
  EXPECT_EQ(refinement_verdict(1.0, 1.0), "bounded");
  EXPECT_EQ(refinement_verdict(1.3, 1.0), "inconclusive");
  EXPECT_EQ(refinement_verdict(1.5, 1.0), "divergent");
  EXPECT_EQ(refinement_verdict(3.0, 1.0), "divergent");
}

TEST(BoundaryCrit, SquareKillsTheAtom) {
  // |1 - zeta|^2 * 2 / |1 - zeta|^2 = 2 everywhere
  const auto r = boundary_crit(polynomial({1.0, -2.0, 1.0}), kAtomAtOne, 1);
  EXPECT_NEAR(r.sup, 2.0, 1e-9);
  EXPECT_EQ(r.verdict, "bounded");
  // the grid point at the atom itself is excluded
  EXPECT_EQ(r.samples, static_cast<std::size_t>(BoundaryGrid{}.size - 1));
}

TEST(BoundaryCrit, IdentityHasUnitDerivative) {
  const auto r = boundary_crit(constant(1.0), InnerFunction::identity(), 3);
  EXPECT_NEAR(r.sup, 1.0, 1e-12);
  EXPECT_EQ(r.skipped, 0u);
}

TEST(BoundaryCrit, LinearFactorIsNotEnough) {
  // 2 / |1 - zeta| blows up as the grid approaches the atom
  const auto r = boundary_crit(polynomial({1.0, -1.0}), kAtomAtOne, 1);
  EXPECT_NE(r.verdict, "bounded");
  EXPECT_GT(r.sup, 1.8 * r.coarse_sup);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(std::abs(*r.witness - 1.0), 1e-3);
}

TEST(Shider, AtomIsExactlyOne) {
  const auto r = shider_sup(kAtomAtOne, 1);
  EXPECT_NEAR(r.sup, 1.0, 1e-12);
  EXPECT_EQ(r.verdict, "bounded");
}

TEST(Shider, SingleZeroSecondDerivative) {
  // sup over the circle is 1, attained where |zeta - 1/2| = 3/4
  const auto r = shider_sup(InnerFunction::from_zeros({0.5}), 2);
  EXPECT_LE(r.sup, 1.0 + 1e-12);
  EXPECT_GT(r.sup, 1.0 - 1e-3);  // grid spacing times the slope 4/3
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(std::abs(*r.witness - 0.5), 0.75, 1e-3);
}

TEST(Shider, ClosedFormOnEveryGridPoint) {
  // |b''| tau^2 with a = 1/2: (4/3) D for D < 3/4, (3/4)/D otherwise
  const auto theta = InnerFunction::from_zeros({0.5});
  for (int i = 0; i < 64; ++i) {
    const double t = 2 * kPi * i / 64;
    const double D = std::abs(std::polar(1.0, t) - 0.5);
    const DTau dt = d_tau(theta, t);
    const double v = std::abs(inner_jet_on_circle(theta, t, 2).derivative(2)) * dt.tau * dt.tau;
    EXPECT_NEAR(v, D < 0.75 ? 4.0 / 3.0 * D : 0.75 / D, 1e-13);
  }
}

TEST(Leibniz, BinomialSumMatchesProductJet) {
  const auto theta = InnerFunction::from_zeros({{0.3, 0.2}, {-0.6, 0.1}});
  const auto rep = leibniz_terms(polynomial({1.0, 0.5, Complex(0.0, -0.25)}), theta, 3, BoundaryGrid{1 << 10});
  EXPECT_LE(rep.max_sum_rel_error, 1e-11);
  EXPECT_EQ(rep.products.size(), 4u);
  EXPECT_EQ(rep.scaled.size(), 4u);
}

TEST(Leibniz, AtomWithVanishingFactor) {
  const auto rep = leibniz_terms(pow(polynomial({1.0, -1.0}), 4), kAtomAtOne, 2, BoundaryGrid{1 << 12});
  EXPECT_LE(rep.max_sum_rel_error, 1e-11);
}

TEST(DecreaseSup, MonomialOnTheIdentity) {
  // sup_{|z| < 1/2} |z|^2 / (1 - |z|) = 1/2, approached from below
  const auto r = decrease_sup(polynomial({0.0, 0.0, 1.0}), InnerFunction::identity(), 0.5, 1.0, GridSpec{10, 64, 16});
  EXPECT_LE(r.sup, 0.5);
  EXPECT_GE(r.sup, 0.45);
  EXPECT_FALSE(r.empty);
}

TEST(DerivativeDecrease, IdentityOnTheIdentity) {
  // f' = 1 on |z| < 1/4: sup (1 - |z|)^(-1/2) = (3/4)^(-1/2)
  const auto r = derivative_decrease(identity(), InnerFunction::identity(), 0.5, 1.5, 1, GridSpec{10, 64, 16});
  const double want = 1.0 / std::sqrt(0.75);
  EXPECT_LE(r.sup, want);
  EXPECT_GE(r.sup, 0.98 * want);
}

TEST(DecreaseSup, EmptyRegion) {
  // the zero is off the grid, so no grid point gets below a tiny eps
  const auto r = decrease_sup(constant(1.0), InnerFunction::from_zeros({{0.3, 0.1}}), 1e-9, 1.0, GridSpec{2, 2, 4});
  EXPECT_TRUE(r.empty);
  EXPECT_EQ(r.samples, 0u);
}

TEST(Decay, DeltaTableIsComparable) {
  const auto seq = ZeroSequence::radial(0.5, 20);
  const auto p = zero_decay_profile(delta_table(seq, 1, 1.5), seq, 1, 1.5);
  EXPECT_NEAR(p.r1_min, 1.0, 1e-15);
  EXPECT_NEAR(p.r1_max, 1.0, 1e-15);
  EXPECT_EQ(p.r1_verdict, "comparable");
  // d_j / (1 - |z_j|) = 1/2 away from the truncation edge
  EXPECT_NEAR(p.r2_min, std::pow(0.5, 0.5), 1e-12);
  EXPECT_NEAR(p.r2_max, std::pow(0.5, 0.5), 1e-12);
  EXPECT_EQ(p.r2_verdict, "bounded");  // r2 is judged on growth only
}

TEST(Decay, SpiralSeparatesTheTwoScales) {
  const auto seq = ZeroSequence::spiral(0.25, 0.5, 20);
  const auto p = zero_decay_profile(delta_table(seq, 0, 1.0), seq, 0, 1.0);
  EXPECT_EQ(p.r1_verdict, "comparable");
  EXPECT_EQ(p.r2_verdict, "divergent");
  const std::string csv = p.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "j,|f(z_j)|,d_j,1-|z_j|,r1,r2,edge_flag");
}

TEST(Decay, RejectsOrderAboveAlpha) {
  const auto seq = ZeroSequence::radial(0.5, 10);
  EXPECT_THROW(delta_table(seq, 2, 1.5), UsageError);
}

TEST(Covering, RadialOddEvenPins) {
  const auto seq = ZeroSequence::radial(0.5, 20);
  const auto b1 = subset(seq, 0, 2), b2 = subset(seq, 1, 2);
  const auto q11 = covering_profile(b1, b2, 0.1, GridSpec{11, 8, 16});
  const auto q12 = covering_profile(b1, b2, 0.1, GridSpec{12, 8, 16});
  EXPECT_NEAR(q11.lambda, pinned::kCoveringLambdaQ11, 1e-12);
  EXPECT_NEAR(q11.coarse_lambda, pinned::kCoveringCoarseQ11, 1e-12);
  EXPECT_EQ(q11.samples, static_cast<std::size_t>(pinned::kCoveringSamplesQ11));
  EXPECT_NEAR(q12.lambda, pinned::kCoveringLambdaQ12, 1e-12);
  EXPECT_NEAR(q12.coarse_lambda, pinned::kCoveringCoarseQ12, 1e-12);
  EXPECT_EQ(q12.samples, static_cast<std::size_t>(pinned::kCoveringSamplesQ12));
  EXPECT_EQ(q12.split_failures, 0u);
}

TEST(Covering, TrivialSplit) {
  const auto r = covering_profile(InnerFunction::identity(), InnerFunction(), 0.1, GridSpec{8, 4, 16});
  EXPECT_LT(r.lambda, 0.1);
  EXPECT_EQ(r.split_failures, 0u);
}

TEST(Covering, RandomFactorsNeverFailTheSplit) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> rad(0.0, 0.95), ang(0.0, 2 * kPi);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> z1, z2;
    for (int i = 0, n = 1 + rng() % 4; i < n; ++i) z1.push_back(std::polar(rad(rng), ang(rng)));
    for (int i = 0, n = 1 + rng() % 4; i < n; ++i) z2.push_back(std::polar(rad(rng), ang(rng)));
    for (double eps : {0.04, 0.25}) {
      const auto r = covering_profile(InnerFunction::from_zeros(z1), InnerFunction::from_zeros(z2), eps,
                                      GridSpec{8, 4, 16});
      EXPECT_EQ(r.split_failures, 0u);
    }
  }
}

TEST(Covering, AtomsAreRejected) {
  EXPECT_THROW(covering_profile(kAtomAtOne, InnerFunction::identity(), 0.1, GridSpec{4, 2, 8}), UsageError);
}

TEST(CriterionReport, JsonCarriesGridAndVerdict) {
  const auto r = shider_sup(kAtomAtOne, 1, BoundaryGrid{1 << 8});
  const auto j = r.to_json();
  EXPECT_EQ(j.at("criterion"), r.criterion);
  EXPECT_EQ(j.at("grid"), BoundaryGrid{1 << 8}.describe());
  EXPECT_EQ(j.at("verdict"), "bounded");
}

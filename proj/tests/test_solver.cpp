#include <gtest/gtest.h>

#include <cmath>

#include "corona/solver.hpp"
#include "test_support.hpp"

using namespace corona;
using corona::testing::corona_data;
using corona::testing::gauss_mat;

namespace {

CoronaInstance make(MatPoly F, MatPoly g, double delta_sq, double p = 2.0) {
  CoronaInstance inst;
  inst.name = "t";
  inst.F = std::move(F);
  inst.g = std::move(g);
  inst.delta_sq = delta_sq;
  inst.p = p;
  return inst;
}

// F = [z^alpha, c] / sqrt(1 + c^2), g = 1.
CoronaInstance hand(std::size_t n, double c = 0.5) {
  const double s = 1.0 / std::sqrt(1.0 + c * c);
  CMat c0(1, 2), c1(1, 2);
  c0 << 0.0, c * s;
  c1 << s, 0.0;
  const MultiIndex zero(std::vector<int>(n, 0)), one(std::vector<int>(n, 1));
  MatPoly F(1, 2, n, {{zero, c0}, {one, c1}});
  return make(F, MatPoly::constant(CMat::Ones(1, 1), n), c * c / (1.0 + c * c));
}

CoronaInstance random_instance(std::uint64_t seed, Eigen::Index r, Eigen::Index m, std::size_t n, int deg) {
  std::mt19937_64 rng(seed);
  const MatPoly F = corona_data(rng, r, m, n, deg);
  MatPoly g = corona::testing::random_poly(rng, r, 1, n, 1);
  g = g * cplx(1.0 / g.coeff_norm());
  const double c = 0.5;
  return make(F, g, c * c / (1.0 + c * c) * (1.0 - 1e-9));
}

double bound_oracle(double C, double r, double delta_sq) {
  const double d = std::sqrt(delta_sq);
  return C / std::pow(d, r + 1) * std::log(std::pow(1.0 / delta_sq, r)) + 1.0 / d;
}

}  // namespace

TEST(CoronaBound, HandValues) {
  // Published values are rounded to about five digits.
  EXPECT_NEAR(corona_bound(2.0, 1, 1.0 / kEuler, 1), 24.4538, 1e-4 * 24.4538);
  EXPECT_NEAR(corona_bound(2.0, 1, 0.2, 1), 69.745, 1e-4 * 69.745);
  EXPECT_NEAR(corona_bound(4.0, 1, 1.0 / kEuler, 2), 92.87, 1e-4 * 92.87);
  EXPECT_NEAR(kCoronaC, 8.38934, 1e-5);
  EXPECT_NEAR(kTrentC, 10.9859, 1e-4);
}

TEST(CoronaBound, MatchesDirectFormula) {
  for (double d2 : {0.01, 0.1, 0.3}) {
    for (int r : {1, 2, 3}) {
      EXPECT_NEAR(corona_bound(1.0, r, d2, 1), bound_oracle(kCoronaC, r, d2), 1e-9);
      EXPECT_NEAR(corona_bound(2.0, r, d2, 3), bound_oracle(std::sqrt(3.0) * kCoronaC, r, d2), 1e-9);
      const double cp = 1.0 / std::sin(kPi / 3.0);
      EXPECT_NEAR(corona_bound(3.0, r, d2, 2), bound_oracle(2.0 * cp * cp * kCoronaC, r, d2), 1e-8);
    }
  }
  EXPECT_LT(corona_bound(2.0, 1, 0.2, 1), disk_bound_with_constant(kTrentC, 1, 0.2));
}

TEST(CoronaBound, Preconditions) {
  EXPECT_THROW(corona_bound(2.0, 1, 0.5, 1), HypothesisError);
  EXPECT_THROW(corona_bound(2.0, 1, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(corona_bound(kInfP, 1, 0.2, 2), std::invalid_argument);
  EXPECT_NO_THROW(corona_bound(kInfP, 1, 0.2, 1));
}

TEST(LeastNorm, HandInstanceDisk) {
  const SolveResult s = least_norm_solve(hand(1), 16);
  EXPECT_NEAR(s.norm_2, 2.2360679774997896, 1e-9);
  EXPECT_LT(s.residual_l2, 1e-10);
  EXPECT_TRUE(s.feasible);
  EXPECT_NEAR(std::abs(s.f.coeff(MultiIndex{0})(1, 0)), std::sqrt(1.25) / 0.5, 1e-9);
  EXPECT_LT(s.normal_residual, 1e-10);
}

TEST(LeastNorm, HandInstanceBidisk) {
  const SolveResult s = least_norm_solve(hand(2), 6);
  EXPECT_NEAR(s.norm_2, std::sqrt(1.25) / 0.5, 1e-9);
  EXPECT_LT(s.residual_l2, 1e-10);
}

TEST(LeastNorm, ConstantUnitary) {
  std::mt19937_64 rng(1);
  const CMat U = gauss_mat(rng, 3, 3).householderQr().householderQ();
  const MatPoly g = corona::testing::random_poly(rng, 3, 1, 1, 2);
  const CoronaInstance inst = make(MatPoly::constant(U, 1), g, 1.0 - 1e-12);
  const MatPoly expect = mul(MatPoly::constant(U.adjoint(), 1), g);
  for (double p : {2.0, 4.0, 1.5}) {
    const SolveResult s = p == 2.0 ? least_norm_solve(inst, 4) : hp_least_norm(inst, 4, p);
    EXPECT_LT((s.f - expect).coeff_norm(), 1e-10) << p;
  }
}

TEST(LeastNorm, MinimalAgainstPseudoInverseOracle) {
  const CoronaInstance inst = random_instance(2, 1, 3, 1, 1);
  const int N = 5;
  const SolveResult s = least_norm_solve(inst, N);
  ASSERT_TRUE(s.feasible);
  // Dense oracle: constraint matrix built entry by entry, solved by SVD.
  const int rows = N + 1 + inst.F.max_degree();
  CMat A = CMat::Zero(rows, 3 * (N + 1));
  CVec b = CVec::Zero(rows);
  for (int beta = 0; beta < rows; ++beta) {
    for (int alpha = 0; alpha <= N; ++alpha) {
      if (beta - alpha >= 0) A.block(beta, 3 * alpha, 1, 3) = inst.F.coeff(MultiIndex{beta - alpha});
    }
    if (beta <= inst.g.max_degree()) b(beta) = inst.g.coeff(MultiIndex{beta})(0, 0);
  }
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const CVec x = svd.solve(b);
  EXPECT_NEAR(s.norm_2, x.norm(), 1e-10);
  for (int alpha = 0; alpha <= N; ++alpha) {
    EXPECT_LT((s.f.coeff(MultiIndex{alpha}) - x.segment(3 * alpha, 3)).norm(), 1e-9);
  }
}

TEST(LeastNorm, TruncationStable) {
  const CoronaInstance inst = random_instance(3, 1, 2, 1, 1);
  const SolveResult a = least_norm_solve(inst, 24);
  const SolveResult b = least_norm_solve(inst, 48);
  EXPECT_LT(std::abs(a.norm_2 - b.norm_2), 1e-8);
  EXPECT_LE(b.norm_2, a.norm_2 + 1e-12);
}

TEST(LeastNorm, RejectsShortTruncation) {
  CoronaInstance inst = hand(1);
  inst.g = MatPoly(1, 1, 1, {{MultiIndex{3}, CMat::Ones(1, 1)}});
  EXPECT_THROW(least_norm_solve(inst, 2), std::invalid_argument);
}

TEST(HpLeastNorm, AgreesAtTwoAndImprovesAtFour) {
  const CoronaInstance inst = hand(1);
  const SolveResult s2 = least_norm_solve(inst, 8);
  const SolveResult h2 = hp_least_norm(inst, 8, 2.0);
  EXPECT_LT((s2.f - h2.f).coeff_norm(), 1e-8);
  const SolveResult h4 = hp_least_norm(inst, 8, 4.0, 200);
  EXPECT_TRUE(h4.feasible);
  EXPECT_LE(h4.norm_p, h4.objective_history.empty() ? 0.0 : std::pow(h4.objective_history.front(), 0.25) + 1e-12);
  for (std::size_t k = 1; k < h4.objective_history.size(); ++k) {
    EXPECT_LE(h4.objective_history[k], h4.objective_history[k - 1] * (1.0 + 1e-12));
  }
}

TEST(HpLeastNorm, RandomInstanceMonotone) {
  const CoronaInstance inst = random_instance(4, 1, 3, 1, 2);
  for (double p : {1.5, 3.0}) {
    const SolveResult h = hp_least_norm(inst, 8, p, 60);
    EXPECT_TRUE(h.feasible);
    for (std::size_t k = 1; k < h.objective_history.size(); ++k) {
      EXPECT_LE(h.objective_history[k], h.objective_history[k - 1] * (1.0 + 1e-12));
    }
    EXPECT_LT(h.objective_history.back(), h.objective_history.front());
  }
  EXPECT_THROW(hp_least_norm(inst, 8, 1.0), std::invalid_argument);
}

TEST(F0Baseline, HandValues) {
  const DiskQuadrature Q = make_quadrature(16, 32);
  CMat e(1, 2);
  e << 1.0, 0.0;
  const F0Baseline b = f0_baseline(make(MatPoly::constant(e, 1), MatPoly::constant(CMat::Ones(1, 1), 1), 1.0), Q);
  EXPECT_NEAR(b.l2_norm, 1.0, 1e-14);
  EXPECT_NEAR(b.bound, 1.0, 1e-14);
  EXPECT_TRUE(b.passed);
  for (std::uint64_t seed : {5u, 6u}) {
    const CoronaInstance inst = random_instance(seed, 2, 4, seed == 5u ? 1 : 2, 1);
    const F0Baseline r = f0_baseline(inst, Q);
    EXPECT_TRUE(r.passed);
    EXPECT_LE(r.sup_ratio, 1.0 / std::sqrt(inst.delta_sq) + 1e-10);
  }
}

TEST(SolveAndReport, HandInstance) {
  CoronaInstance inst = hand(1);
  inst.delta_sq = 0.2;
  const BoundReport rep = solve_and_report(inst, 16, 2.0);
  EXPECT_TRUE(rep.hypothesis_ok);
  EXPECT_TRUE(rep.passed);
  EXPECT_NEAR(rep.achieved_norm, 2.2360679774997896, 1e-9);
  EXPECT_NEAR(rep.bound_value, 69.745, 1e-4 * 69.745);
  EXPECT_GT(rep.trent_bound, rep.bound_value);
}

TEST(SolveAndReport, HypothesisViolationIsFlagged) {
  std::mt19937_64 rng(7);
  CMat e(1, 2);
  e << 1.0, 0.0;
  const BoundReport rep =
      solve_and_report(make(MatPoly::constant(e, 1), MatPoly::constant(CMat::Ones(1, 1), 1), 1.0), 0, 2.0);
  EXPECT_FALSE(rep.hypothesis_ok);
  EXPECT_FALSE(rep.evaluated);
  EXPECT_FALSE(rep.passed);
  EXPECT_TRUE(std::isnan(rep.bound_value));
}

TEST(SolveAndReport, BidiskWithinBound) {
  const CoronaInstance inst = random_instance(8, 1, 3, 2, 1);
  const BoundReport rep = solve_and_report(inst, 0, 2.0);
  EXPECT_TRUE(rep.evaluated);
  EXPECT_TRUE(rep.passed);
  EXPECT_NEAR(rep.bound_value, corona_bound(2.0, 1, inst.delta_sq, 2), 1e-12);
}

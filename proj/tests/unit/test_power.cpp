#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sfma/power.hpp"
#include "sfma/solve.hpp"
#include "sfma/testing/oracles.hpp"

using namespace sfma::power;
using sfma::pairing::UserTerminal;
using sfma::rate::InterferencePair;
using sfma::rate::InterferenceProfile;
using sfma::rate::Link;

namespace {

UserTerminal user(std::size_t id, double gain, double noise, double min_rate, std::int64_t frame = 0) {
  return {id, {gain, noise}, min_rate, frame};
}

Group group(double g1, double g2, double rho, double r1 = 0.0, double r2 = 0.0, double noise = 1.0) {
  return Group{user(0, g1, noise, r1), user(1, g2, noise, r2),
               InterferencePair::shared(InterferenceProfile::constant(rho))};
}

InterferenceProfile default_table() {
  return InterferenceProfile::table(sfma::rate::load_rho_table(std::string(SFMA_DATA_DIR) + "/rho_default.csv"));
}

double total_rate(const std::vector<Group>& groups, const PowerAllocation& a) {
  double s = 0.0;
  for (std::size_t k = 0; k < groups.size(); ++k) s += group_sum_rate(groups[k], a.group_totals[k]);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Extreme points

TEST(ExtremePointMinRate, ClosedFormExamples) {
  const ExtremePoint e = extreme_point_min_rate(group(1.0, 1.0, 0.0, 1.0, 1.0), Member::first, 1.0);
  ASSERT_TRUE(e.ok());
  EXPECT_DOUBLE_EQ(e.power, 2.0);

  const ExtremePoint z = extreme_point_min_rate(group(1.0, 1.0, 0.5, 0.0, 0.0), Member::second, 1.0);
  ASSERT_TRUE(z.ok());
  EXPECT_EQ(z.power, 0.0);

  // rho = 1, R = 2: 1/2 + 1/2 (1 - 4) < 0.
  const ExtremePoint bad = extreme_point_min_rate(group(1.0, 1.0, 1.0, 2.0, 2.0), Member::first, 1.0);
  EXPECT_EQ(bad.status, ExtremePoint::Status::infeasible);
}

TEST(ExtremePointMinRate, ClassicNomaReduction) {
  // rho = 1 is the conventional two-user case: p = n (2^R - 1) / (g (1/2 - (2^R - 1)/2)).
  for (double r : {0.2, 0.5, 0.9}) {
    const Group g = group(3e-10, 1e-11, 1.0, r, r, 4e-11);
    const double a = std::exp2(r) - 1.0;
    const double expect = 4e-11 * a / (3e-10 * (0.5 - 0.5 * a));
    EXPECT_NEAR(extreme_point_min_rate(g, Member::first, 1.0).power, expect, 1e-9 * expect);
  }
}

TEST(ExtremePointMinRate, ImplicitProfilesHitTheRate) {
  const Link l1{2e-12, 3.98e-11}, l2{7e-13, 3.98e-11};
  for (const auto& prof : {default_table(), InterferenceProfile::parametric({})}) {
    Group g{UserTerminal{0, l1, 1.0, 0}, UserTerminal{1, l2, 1.0, 0}, InterferencePair::shared(prof)};
    for (Member m : {Member::first, Member::second}) {
      const ExtremePoint e = extreme_point_min_rate(g, m, 100.0);
      ASSERT_TRUE(e.ok()) << e.message;
      const auto rates = sfma::rate::pair_rates(0.5 * e.power, 0.5 * e.power, g.profiles, l1, l2);
      const double r = m == Member::first ? rates.first : rates.second;
      EXPECT_NEAR(r, 1.0, 1e-6);
      EXPECT_GE(r, 1.0 - 1e-9);
    }
  }
}

TEST(ExtremePointStationary, Examples) {
  const Group g = group(1.0, 1.0, 0.3);
  // Water level above the slope at the bottom of the bracket.
  const double s0 = sum_rate_slope(g, 1e-6);
  EXPECT_EQ(extreme_point_stationary(g, 10.0 * s0, 1e-6, 10.0).status, StationaryPoint::Status::below_bracket);
  // Rate strictly increasing: no interior root at mu = 0.
  const StationaryPoint top = extreme_point_stationary(group(1.0, 1.0, 0.0), 0.0, 1e-6, 10.0);
  EXPECT_FALSE(top.found());
  EXPECT_EQ(top.status, StationaryPoint::Status::above_bracket);
  EXPECT_THROW(extreme_point_stationary(g, 0.1, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(extreme_point_stationary(g, 0.1, 2.0, 1.0), std::invalid_argument);
}

TEST(ExtremePointStationary, MatchesGridArgmax) {
  const Group g = group(2.0, 2.0, 0.3);
  const double mu = 0.2;
  const StationaryPoint sp = extreme_point_stationary(g, mu, 1e-6, 100.0);
  ASSERT_TRUE(sp.found());
  double best_p = 0.0, best_v = 0.0;
  const std::size_t n = 200000;
  for (std::size_t i = 1; i <= n; ++i) {
    const double p = 100.0 * static_cast<double>(i) / static_cast<double>(n);
    const double v = group_sum_rate(g, p) - mu * p;
    if (v > best_v) {
      best_v = v;
      best_p = p;
    }
  }
  EXPECT_NEAR(sp.power, best_p, 2.0 * 100.0 / static_cast<double>(n));
}

TEST(SumRateSlope, MatchesFiniteDifference) {
  const Link l1{2e-12, 3.98e-11}, l2{7e-13, 3.98e-11};
  for (const auto& prof : {InterferenceProfile::constant(0.4), InterferenceProfile::parametric({})}) {
    const Group g{UserTerminal{0, l1, 0.0, 0}, UserTerminal{1, l2, 0.0, 0}, InterferencePair::shared(prof)};
    for (double p : {1.0, 30.0, 700.0}) {
      const double h = 1e-5 * p;
      const double fd = (group_sum_rate(g, p + h) - group_sum_rate(g, p - h)) / (2.0 * h);
      EXPECT_NEAR(sum_rate_slope(g, p), fd, 1e-6 * std::fabs(fd) + 1e-12);
    }
  }
}

// ---------------------------------------------------------------------------
// Inter-group

TEST(InterGroup, SingleGroupTakesEverything) {
  const std::vector<Group> gs{group(1.0, 0.5, 0.0, 0.5, 0.5)};
  const PowerAllocation a = inter_group_allocate(gs, 20.0, 1e-9);
  ASSERT_TRUE(a.feasible());
  EXPECT_NEAR(a.group_totals[0], 20.0, 1e-9);
  EXPECT_NEAR(a.mu, sum_rate_slope(gs[0], 20.0), 1e-12);
}

TEST(InterGroup, IdenticalGroupsSplitEvenly) {
  const std::vector<Group> gs{group(1.0, 0.3, 0.2, 0.2, 0.2), group(1.0, 0.3, 0.2, 0.2, 0.2)};
  const PowerAllocation a = inter_group_allocate(gs, 10.0, 1e-9);
  ASSERT_TRUE(a.feasible());
  EXPECT_NEAR(a.group_totals[0], 5.0, 1e-6);
  EXPECT_NEAR(a.group_totals[1], 5.0, 1e-6);
}

TEST(InterGroup, InfeasibleWhenFloorsExceedBudget) {
  const std::vector<Group> gs{group(1.0, 1.0, 0.0, 3.0, 3.0), group(1.0, 1.0, 0.0, 3.0, 3.0)};
  const PowerAllocation a = inter_group_allocate(gs, 10.0, 1e-9);  // floors 14 W each
  EXPECT_FALSE(a.feasible());
}

TEST(InterGroup, UnreachableRateIsInfeasible) {
  const std::vector<Group> gs{group(1.0, 1.0, 1.0, 2.0, 2.0)};
  const PowerAllocation a = inter_group_allocate(gs, 10.0, 1e-9);
  EXPECT_FALSE(a.feasible());
  ASSERT_TRUE(a.failing_group.has_value());
  EXPECT_EQ(*a.failing_group, 0u);
}

TEST(InterGroup, BudgetSlackWhenRateStopsGrowing) {
  // rho rises from 0 to 1 around 1 W, so extra power only adds interference.
  const sfma::rate::LogisticRho rising{1.0, 0.0, 0.0, -2.0, 1.0};
  const Group g{user(0, 1e3, 1.0, 0.1), user(1, 1e3, 1.0, 0.1),
                InterferencePair::shared(InterferenceProfile::parametric(rising))};
  const std::vector<Group> gs{g};
  const PowerAllocation a = inter_group_allocate(gs, 1e4, 1e-5);
  ASSERT_TRUE(a.feasible());
  EXPECT_EQ(a.status, PowerAllocation::Status::budget_slack);
  EXPECT_LT(a.total(), 1e4);
  EXPECT_EQ(a.mu, 0.0);
  EXPECT_GT(group_sum_rate(g, a.total()), group_sum_rate(g, 1e4));
}

TEST(InterGroup, FloorsAreRespected) {
  // The weak group needs a lot of power for its minimum rate.
  const std::vector<Group> gs{group(10.0, 10.0, 0.2, 0.5, 0.5), group(0.05, 0.05, 0.2, 1.0, 1.0)};
  const PowerAllocation a = inter_group_allocate(gs, 100.0, 1e-9);
  ASSERT_TRUE(a.feasible());
  const double floor1 = extreme_point_min_rate(gs[1], Member::first, 1.0).power;
  EXPECT_GE(a.group_totals[1], floor1 * (1.0 - 1e-12));
  EXPECT_NEAR(a.total(), 100.0, 1e-6);
  const KktReport k = kkt_residuals(gs, a, 100.0);
  EXPECT_LT(k.max_normalized, 1e-4);
  EXPECT_GE(a.lambdas[1].first + a.lambdas[1].second, 0.0);
}

TEST(InterGroup, SimplexGridOracle) {
  std::mt19937_64 eng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 25; ++t) {
    const std::size_t K = 1 + static_cast<std::size_t>(t % 3);
    const double rho = u(eng);
    std::vector<Group> gs;
    for (std::size_t k = 0; k < K; ++k)
      gs.push_back(group(std::pow(10.0, -1.0 + 2.0 * u(eng)), std::pow(10.0, -1.0 + 2.0 * u(eng)), rho, 0.3 * u(eng),
                         0.3 * u(eng)));
    const double p_max = 10.0;
    const PowerAllocation a = inter_group_allocate(gs, p_max, 1e-9 * p_max);
    const auto grid = sfma::testing::simplex_grid_max(gs, p_max, 2000);
    if (!std::isfinite(grid.sum_rate)) {
      EXPECT_FALSE(a.feasible());
      continue;
    }
    ASSERT_TRUE(a.feasible()) << a.message;
    EXPECT_GE(total_rate(gs, a), grid.sum_rate - 1e-3);
    for (std::size_t k = 0; k < K; ++k) EXPECT_NEAR(a.group_totals[k], grid.totals[k], 2.0 * p_max / 2000.0);
    if (a.mu > 0.0) EXPECT_NEAR(a.total(), p_max, 1e-4 * p_max);
  }
}

// ---------------------------------------------------------------------------
// Intra-group

TEST(IntraGroup, SymmetricLinksSplitEvenly) {
  const Group g = group(0.7, 0.7, 0.0);
  const IntraSplit s = intra_group_allocate(g, 4.0, 1e-9);
  ASSERT_TRUE(s.feasible);
  EXPECT_NEAR(s.first, 2.0, 1e-6);
  EXPECT_DOUBLE_EQ(s.first + s.second, 4.0);
}

TEST(IntraGroup, InterferenceFreeIsWaterFilling) {
  std::mt19937_64 eng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double g1 = std::pow(10.0, -1.0 + 2.0 * u(eng)), g2 = std::pow(10.0, -1.0 + 2.0 * u(eng));
    const double p = 0.1 + 5.0 * u(eng);
    const IntraSplit s = intra_group_allocate(group(g1, g2, 0.0), p, 1e-10 * p);
    EXPECT_NEAR(s.first, sfma::testing::water_filling_first(p, 1.0 / g1, 1.0 / g2), 1e-6 * p);
  }
}

TEST(IntraGroup, InterferenceFreeCornerGoesToStrongerUser) {
  // |n1 - n2| >= p: the water level never reaches the weaker channel.
  const IntraSplit s = intra_group_allocate(group(4.0, 0.25, 0.0), 2.0, 1e-10);
  EXPECT_NEAR(s.first, 2.0, 1e-8);
  EXPECT_NEAR(s.second, 0.0, 1e-8);
}

TEST(IntraGroup, GridOracle) {
  std::mt19937_64 eng(55);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    const Group g = group(std::pow(10.0, -1.0 + 2.0 * u(eng)), std::pow(10.0, -1.0 + 2.0 * u(eng)), u(eng),
                          0.5 * u(eng), 0.5 * u(eng));
    const double p = 1.0 + 9.0 * u(eng);
    // Search width matched to the grid spacing.
    const double tol = p / (100000.0 - 1.0);
    const IntraSplit s = intra_group_allocate(g, p, tol);
    const auto grid = sfma::testing::split_grid_max(g, p, 100000);
    if (!std::isfinite(grid.sum_rate)) {
      EXPECT_FALSE(s.feasible);
      continue;
    }
    ASSERT_TRUE(s.feasible);
    EXPECT_NEAR(s.first, grid.first, 2.0 * tol);
    EXPECT_NEAR(s.sum_rate, grid.sum_rate, 1e-6);
  }
}

TEST(IntraGroup, ConcaveWithoutInterference) {
  EXPECT_EQ(split_concavity_violations(group(3.0, 0.2, 0.0), 5.0), 0u);
  // With full interference the split objective is convex; the search copes
  // because the endpoints are always candidates.
  EXPECT_GT(split_concavity_violations(group(3.0, 0.2, 1.0), 5.0), 0u);
  const Group g = group(3.0, 0.2, 1.0);
  const IntraSplit s = intra_group_allocate(g, 5.0, 1e-9);
  EXPECT_NEAR(s.sum_rate, sfma::testing::split_grid_max(g, 5.0).sum_rate, 1e-6);
}

// ---------------------------------------------------------------------------
// KKT residuals

TEST(Kkt, BudgetExcessIsReported) {
  const std::vector<Group> gs{group(1.0, 1.0, 0.0), group(1.0, 1.0, 0.0)};
  PowerAllocation a;
  a.group_totals = {6.0, 5.5};
  a.splits = {{3.0, 3.0}, {2.75, 2.75}};
  a.lambdas = {{0.0, 0.0}, {0.0, 0.0}};
  const KktReport k = kkt_residuals(gs, a, 10.0);
  EXPECT_DOUBLE_EQ(k.budget_excess, 1.5);
}

TEST(Kkt, ZeroLambdasHaveZeroSlackness) {
  const std::vector<Group> gs{group(1.0, 2.0, 0.3, 0.1, 0.1)};
  PowerAllocation a;
  a.group_totals = {4.0};
  a.splits = {{2.0, 2.0}};
  a.lambdas = {{0.0, 0.0}};
  const KktReport k = kkt_residuals(gs, a, 4.0);
  EXPECT_EQ(k.groups[0].slackness_first, 0.0);
  EXPECT_EQ(k.groups[0].slackness_second, 0.0);
  EXPECT_EQ(k.groups[0].min_rate_violation, 0.0);
}

TEST(Kkt, SolverAllocationsAreStationary) {
  std::mt19937_64 eng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t K = 1 + static_cast<std::size_t>(t % 3);
    std::vector<Group> gs;
    for (std::size_t k = 0; k < K; ++k)
      gs.push_back(group(std::pow(10.0, -1.0 + 2.0 * u(eng)), std::pow(10.0, -1.0 + 2.0 * u(eng)), u(eng), 0.4 * u(eng),
                         0.4 * u(eng)));
    const PowerAllocation a = inter_group_allocate(gs, 10.0, 1e-8);
    if (!a.feasible()) continue;
    const KktReport k = kkt_residuals(gs, a, 10.0);
    EXPECT_LT(k.max_normalized, 1e-4);
    EXPECT_GE(a.mu, 0.0);
    for (const auto& [l1, l2] : a.lambdas) {
      EXPECT_GE(l1, 0.0);
      EXPECT_GE(l2, 0.0);
    }
  }
}

// ---------------------------------------------------------------------------
// Pipeline

TEST(Solve, TwoUsersUseTheWholeBudget) {
  const std::vector<UserTerminal> users{user(0, 1e-10, 4e-11, 1.0, 2), user(1, 3e-11, 4e-11, 1.0, 3)};
  SolverConfig cfg;
  cfg.p_max_w = 10.0;
  cfg.profiles = InterferencePair::shared(InterferenceProfile::constant(0.2));
  const SolveResult r = solve(users, cfg);
  ASSERT_TRUE(r.feasible()) << r.message;
  ASSERT_EQ(r.pairing.pairs.size(), 1u);
  EXPECT_NEAR(r.allocation.total(), 10.0, 1e-8);
  const auto [p1, p2] = r.allocation.splits[0];
  EXPECT_NEAR(p1 + p2, 10.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.sum_rate, sfma::rate::pair_sum_rate(p1, p2, cfg.profiles, r.groups[0].first.link,
                                                          r.groups[0].second.link));
}

TEST(Solve, BeatsEqualSplitAndRespectsMinimumRates) {
  std::mt19937_64 eng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<UserTerminal> users;
  for (std::size_t i = 0; i < 10; ++i)
    users.push_back(user(i, std::pow(10.0, -12.0 + 3.0 * u(eng)), 3.98e-11, 1.0, static_cast<std::int64_t>(i % 3)));
  SolverConfig cfg;
  cfg.p_max_w = 1e4;
  cfg.profiles = InterferencePair::shared(default_table());
  const SolveResult r = solve(users, cfg);
  ASSERT_TRUE(r.feasible()) << r.message;

  double equal = 0.0;
  const double p_k = cfg.p_max_w / static_cast<double>(r.groups.size());
  for (std::size_t k = 0; k < r.groups.size(); ++k) {
    equal += group_sum_rate(r.groups[k], p_k);
    const auto [p1, p2] = r.allocation.splits[k];
    EXPECT_NEAR(p1 + p2, r.allocation.group_totals[k], 1e-12 * r.allocation.group_totals[k]);
    const auto rates = sfma::rate::pair_rates(p1, p2, cfg.profiles, r.groups[k].first.link, r.groups[k].second.link);
    EXPECT_GE(rates.first, 1.0 - 1e-6);
    EXPECT_GE(rates.second, 1.0 - 1e-6);
  }
  EXPECT_GT(r.sum_rate, equal);
  EXPECT_LE(r.allocation.total(), cfg.p_max_w * (1.0 + 1e-9));
}

TEST(Solve, DoublingBudgetDoesNotHurt) {
  std::mt19937_64 eng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<UserTerminal> users;
  for (std::size_t i = 0; i < 10; ++i)
    users.push_back(user(i, std::pow(10.0, -12.0 + 3.0 * u(eng)), 3.98e-11, 1.0, static_cast<std::int64_t>(i % 4)));
  SolverConfig cfg;
  cfg.profiles = InterferencePair::shared(InterferenceProfile::constant(0.3));
  double prev = 0.0;
  for (double p = 1e3; p <= 1.6e4; p *= 2.0) {
    cfg.p_max_w = p;
    const SolveResult r = solve(users, cfg);
    ASSERT_TRUE(r.feasible()) << r.message;
    EXPECT_GE(r.sum_rate, prev);
    prev = r.sum_rate;
  }
}

TEST(Solve, ReportsFailingStage) {
  const std::vector<UserTerminal> far{user(0, 1.0, 1.0, 0.0, 0), user(1, 1.0, 1.0, 0.0, 9)};
  SolverConfig cfg;
  cfg.p_max_w = 1.0;
  EXPECT_EQ(solve(far, cfg).failed_stage, SolveStage::pairing);

  const std::vector<UserTerminal> needy{user(0, 1.0, 1.0, 8.0), user(1, 1.0, 1.0, 8.0)};
  cfg.profiles = InterferencePair::shared(InterferenceProfile::constant(0.0));
  const SolveResult r = solve(needy, cfg);
  EXPECT_EQ(r.failed_stage, SolveStage::inter_group);
  EXPECT_FALSE(r.message.empty());
}

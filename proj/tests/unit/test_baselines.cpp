#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sfma/baselines.hpp"
#include "sfma/testing/oracles.hpp"

using namespace sfma::baselines;
using sfma::pairing::UserTerminal;

namespace {

std::vector<UserTerminal> with_gains(const std::vector<double>& gains, double noise = 1.0) {
  std::vector<UserTerminal> users;
  for (std::size_t i = 0; i < gains.size(); ++i) users.push_back({i, {gains[i], noise}, 0.0, 0});
  return users;
}

}  // namespace

TEST(Distinctive, SortAndFold) {
  const auto a = pair_distinctive(with_gains({4, 3, 2, 1}));
  EXPECT_EQ(a.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}, {1, 2}}));
  const auto b = pair_distinctive(with_gains({1, 3, 4, 2}));
  EXPECT_EQ(b.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{2, 0}, {1, 3}}));
}

TEST(Distinctive, EqualGainsKeepIdOrder) {
  const auto a = pair_distinctive(with_gains({1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(a.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 5}, {1, 4}, {2, 3}}));
}

TEST(Distinctive, MaximizesTotalSpread) {
  // Folding the sorted list maximizes the summed gain spread; check against
  // every perfect matching of 8 users.
  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> g(8);
    for (auto& x : g) x = u(eng);
    const auto users = with_gains(g);
    double fold = 0.0;
    for (const auto& [s, w] : pair_distinctive(users).pairs) {
      EXPECT_GE(g[s], g[w]);
      fold += g[s] - g[w];
    }
    double best = 0.0;
    sfma::testing::for_each_perfect_matching(8, [&](const sfma::testing::Matching& m) {
      double total = 0.0;
      for (const auto& [a, b] : m) total += std::fabs(g[a] - g[b]);
      best = std::max(best, total);
    });
    EXPECT_NEAR(fold, best, 1e-12);
  }
  EXPECT_THROW(pair_distinctive(with_gains({1, 2, 3})), std::invalid_argument);
}

TEST(Fnoma, Examples) {
  const auto users = with_gains({10, 1});
  const UserRates r = fnoma_pair_rates(users[0], users[1], 2.0, 0.8);
  EXPECT_NEAR(r.first, std::log2(1.0 + 0.4 * 10.0), 1e-14);
  EXPECT_NEAR(r.second, std::log2(1.0 + 1.6 / (0.4 + 1.0)), 1e-14);

  const UserRates deg = fnoma_pair_rates(users[0], users[1], 2.0, 1.0);
  EXPECT_EQ(deg.first, 0.0);

  const auto sym = with_gains({2, 2});
  const UserRates s = fnoma_pair_rates(sym[0], sym[1], 3.0, 0.5);
  EXPECT_DOUBLE_EQ(s.first, s.second);

  const auto pairs = pair_distinctive(users);
  EXPECT_NEAR(fnoma_sum_rate(users, pairs, 2.0, 0.8), r.first + r.second, 1e-14);
  EXPECT_THROW(fnoma_pair_rates(users[0], users[1], 2.0, 1.2), std::invalid_argument);
}

TEST(Fnoma, ReoptimizedEtaIsNoWorse) {
  std::mt19937_64 eng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const auto users = with_gains({std::pow(10.0, 3.0 * u(eng)), std::pow(10.0, 3.0 * u(eng))});
    const UserRates fixed = fnoma_pair_rates(users[0], users[1], 1.0, 0.8);
    double best = 0.0;
    for (int i = 1; i < 1000; ++i) {
      const UserRates x = fnoma_pair_rates(users[0], users[1], 1.0, i / 1000.0);
      best = std::max(best, x.first + x.second);
    }
    EXPECT_GE(best, fixed.first + fixed.second - 1e-12);
  }
}

TEST(Ojscc, Examples) {
  EXPECT_EQ(ojscc_user_rate(0.0, {1.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(ojscc_user_rate(3.0, {1.0, 1.0}), 1.0);
  const sfma::rate::Link l{0.3, 0.1};
  EXPECT_GT(ojscc_user_rate(2.0, l), ojscc_user_rate(1.0, l));

  const auto users = with_gains({3, 1, 7, 3});
  const auto pairs = pair_distinctive(users);
  // Two groups at 3 W each.
  const double expect = ojscc_user_rate(3.0, users[0].link) + ojscc_user_rate(3.0, users[1].link) +
                        ojscc_user_rate(3.0, users[2].link) + ojscc_user_rate(3.0, users[3].link);
  EXPECT_NEAR(ojscc_sum_rate(users, pairs, 6.0), expect, 1e-14);
}

TEST(Ofdma, Examples) {
  EXPECT_DOUBLE_EQ(ofdma_sum_rate(with_gains({3.0}), 1.0), 2.0);
  const auto eq = with_gains({2, 2, 2, 2});
  EXPECT_NEAR(ofdma_sum_rate(eq, 4.0), std::log2(1.0 + 4.0 * 2.0), 1e-14);

  // Ten users, per-user (1/M) log2(1 + P g / noise).
  std::vector<double> g;
  for (int i = 1; i <= 10; ++i) g.push_back(0.1 * i);
  double hand = 0.0;
  for (double x : g) hand += 0.1 * std::log2(1.0 + 5.0 * x / 0.5);
  EXPECT_NEAR(ofdma_sum_rate(with_gains(g, 0.5), 5.0), hand, 1e-13);
  EXPECT_THROW(ofdma_sum_rate({}, 1.0), std::invalid_argument);
}

TEST(Baselines, RatesNonNegative) {
  std::mt19937_64 eng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> g(12);
  for (auto& x : g) x = std::pow(10.0, -14.0 + 4.0 * u(eng));
  const auto users = with_gains(g, 4e-11);
  const auto pairs = pair_distinctive(users);
  for (double p : {0.0, 1.0, 1e4}) {
    EXPECT_GE(fnoma_sum_rate(users, pairs, p, 0.8), 0.0);
    EXPECT_GE(ojscc_sum_rate(users, pairs, p), 0.0);
    EXPECT_GE(ofdma_sum_rate(users, p), 0.0);
  }
  EXPECT_THROW((BaselineScheme{Scheme::fnoma, 1.0}.validate()), std::invalid_argument);
  EXPECT_STREQ(to_string(Scheme::ojscc), "ojscc");
}

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sfma/pairing.hpp"
#include "sfma/scalar_search.hpp"
#include "sfma/semantic_rate.hpp"

namespace sfma::power {

using pairing::UserTerminal;
using rate::InterferencePair;
using rate::Link;

/// Two paired users sharing one resource block. `eta_first`/`eta_second` are
/// the power fractions (p_{k,i} = eta_i p_k, summing to one) used while the
/// group total is being decided; the inter-group stage keeps them equal.
struct Group {
  UserTerminal first;
  UserTerminal second;
  InterferencePair profiles;
  double eta_first = 0.5;
  double eta_second = 0.5;

  void validate() const {
    if (!(eta_first > 0.0 && eta_first < 1.0) || !(eta_second > 0.0 && eta_second < 1.0))
      throw std::invalid_argument("group: power fractions must lie in (0, 1)");
    if (std::fabs(eta_first + eta_second - 1.0) > 1e-12)
      throw std::invalid_argument("group: power fractions must sum to one");
    rate::validate(first.link);
    rate::validate(second.link);
    if (first.min_rate < 0.0 || second.min_rate < 0.0)
      throw std::invalid_argument("group: minimum rates must be non-negative");
  }
};

enum class Member { first = 1, second = 2 };

// ---------------------------------------------------------------------------
// Per-group quantities as functions of the group total p at fixed fractions.

namespace detail {

struct MemberView {
  const Link& link;
  const rate::InterferenceProfile& profile;  // rho applied to the partner's power
  double eta_self;
  double eta_other;
  double min_rate;
};

inline MemberView view(const Group& g, Member m) {
  if (m == Member::first)
    return {g.first.link, g.profiles.on_first, g.eta_first, g.eta_second, g.first.min_rate};
  return {g.second.link, g.profiles.on_second, g.eta_second, g.eta_first, g.second.min_rate};
}

// SINR of a member at group total p and d SINR / dp.
inline std::pair<double, double> sinr_and_slope(const MemberView& v, double p) {
  const double rho = v.profile(p, v.link);
  const double drho = v.profile.derivative(p, v.link);
  const double a = v.eta_self * v.link.gain;
  const double b = v.eta_other * v.link.gain;
  const double den = rho * b * p + v.link.noise_w;
  const double sinr = a * p / den;
  const double slope = a * (v.link.noise_w - drho * b * p * p) / (den * den);
  return {sinr, slope};
}

// Min-rate constraint in the linear form used by the Lagrangian:
// G = (p_self + rho p_other) g + noise - 2^R (rho p_other g + noise) >= 0.
inline double constraint(const MemberView& v, double p) {
  const double rho = v.profile(p, v.link);
  const double g = v.link.gain;
  const double interference = rho * v.eta_other * p * g + v.link.noise_w;
  return v.eta_self * p * g + interference - std::exp2(v.min_rate) * interference;
}

inline double constraint_scale(const MemberView& v, double p) {
  const double rho = v.profile(p, v.link);
  const double g = v.link.gain;
  const double interference = rho * v.eta_other * p * g + v.link.noise_w;
  return v.eta_self * p * g + interference + std::exp2(v.min_rate) * interference;
}

// dG/dp = g [eta_self + (1 - 2^R)(eta_other rho + rho' p eta_other)].
inline double constraint_slope(const MemberView& v, double p) {
  const double rho = v.profile(p, v.link);
  const double drho = v.profile.derivative(p, v.link);
  return v.link.gain *
         (v.eta_self + (1.0 - std::exp2(v.min_rate)) * (v.eta_other * rho + drho * p * v.eta_other));
}

}  // namespace detail

/// Sum rate of the group at total p with the group's fixed fractions.
inline double group_sum_rate(const Group& g, double p) {
  return rate::pair_sum_rate(g.eta_first * p, g.eta_second * p, g.profiles, g.first.link,
                             g.second.link);
}

/// d(r1 + r2)/dp_k in bits/s/Hz per watt, including the rho' terms.
inline double sum_rate_slope(const Group& g, double p) {
  double total = 0.0;
  for (Member m : {Member::first, Member::second}) {
    const auto [sinr, slope] = detail::sinr_and_slope(detail::view(g, m), p);
    total += slope / ((1.0 + sinr) * std::log(2.0));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Extreme points.

struct ExtremePoint {
  enum class Status { ok, infeasible, no_convergence };
  Status status = Status::ok;
  double power = 0.0;
  std::size_t iterations = 0;
  std::string message;

  bool ok() const noexcept { return status == Status::ok; }
};

/// Smallest group total at which `which` meets its minimum rate under the
/// group's fractions:
///   p = noise (2^R - 1) / (g (eta_self + eta_other rho(p) (1 - 2^R))).
/// rho(p) makes this implicit; it is solved by damped fixed-point iteration
/// (beta = 0.5) with a bracketed bisection fallback.
inline ExtremePoint extreme_point_min_rate(const Group& group, Member which, double p_guess) {
  constexpr double kBeta = 0.5;
  constexpr std::size_t kMaxIter = 200;
  constexpr double kRelTol = 1e-8;
  constexpr double kPowerCap = 1e30;

  const auto v = detail::view(group, which);
  const double excess = std::exp2(v.min_rate) - 1.0;  // 2^R - 1
  if (excess == 0.0) return {ExtremePoint::Status::ok, 0.0, 0, {}};
  if (!(p_guess > 0.0)) throw std::invalid_argument("extreme_point_min_rate: guess must be positive");

  auto denominator = [&](double p) {
    return v.eta_self - v.eta_other * v.profile(p, v.link) * excess;
  };
  auto fixed_map = [&](double p) {
    return v.link.noise_w * excess / (v.link.gain * denominator(p));
  };

  if (v.profile.kind() == rate::InterferenceProfile::Kind::constant) {
    if (!(denominator(1.0) > 0.0))
      return {ExtremePoint::Status::infeasible, 0.0, 0,
              "minimum rate unreachable at any power under this interference factor"};
    return {ExtremePoint::Status::ok, fixed_map(1.0), 1, {}};
  }

  double p = p_guess;
  std::size_t it = 0;
  for (; it < kMaxIter; ++it) {
    if (!(denominator(p) > 0.0)) {
      p *= 2.0;
      if (p > kPowerCap) break;
      continue;
    }
    const double next = (1.0 - kBeta) * p + kBeta * fixed_map(p);
    if (std::fabs(next - p) <= kRelTol * next) return {ExtremePoint::Status::ok, next, it + 1, {}};
    p = next;
  }

  // Fallback: the constraint residual F(p) = p g denominator(p) - noise excess
  // is negative at p -> 0; bracket its first non-negative point and bisect.
  auto residual = [&](double q) { return q * v.link.gain * denominator(q) - v.link.noise_w * excess; };
  double hi = std::max(p_guess, 1e-30);
  while (residual(hi) < 0.0) {
    hi *= 2.0;
    if (hi > kPowerCap)
      return {ExtremePoint::Status::infeasible, 0.0, it,
              "minimum rate unreachable: interference factor never drops far enough"};
  }
  double lo = hi / 2.0;
  while (lo > 1e-300 && residual(lo) >= 0.0) lo /= 2.0;
  if (residual(lo) >= 0.0) return {ExtremePoint::Status::no_convergence, hi, it, "no sign change"};
  const double root = search::bisect(residual, lo, hi, 1e-14);
  // Land on the feasible side of the root.
  return {ExtremePoint::Status::ok, residual(root) >= 0.0 ? root : root * (1.0 + 1e-13), it, {}};
}

struct StationaryPoint {
  enum class Status { root, above_bracket, below_bracket };
  Status status = Status::below_bracket;
  double power = 0.0;

  bool found() const noexcept { return status == Status::root; }
};

/// Group total where the sum-rate slope equals mu. Scans the bracket on a
/// log grid for downward crossings of slope - mu, bisects each, and keeps the
/// candidate with the best r1 + r2 - mu p; the bracket ends stand in when the
/// slope stays above mu (wants more than `hi`) or below it (wants nothing).
inline StationaryPoint extreme_point_stationary(const Group& group, double mu, double lo, double hi,
                                                std::size_t scan_nodes = 48) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("extreme_point_stationary: invalid bracket");
  if (mu < 0.0) throw std::invalid_argument("extreme_point_stationary: mu must be non-negative");

  auto excess_slope = [&](double p) { return sum_rate_slope(group, p) - mu; };
  auto objective = [&](double p) { return group_sum_rate(group, p) - mu * p; };

  const double log_lo = std::log(lo);
  const double log_step = (std::log(hi) - log_lo) / static_cast<double>(scan_nodes - 1);
  auto node = [&](std::size_t i) {
    return i == 0 ? lo : (i + 1 == scan_nodes ? hi : std::exp(log_lo + log_step * static_cast<double>(i)));
  };

  StationaryPoint best{StationaryPoint::Status::below_bracket, 0.0};
  double best_value = 0.0;  // objective at p = 0
  double prev_p = node(0);
  double prev_s = excess_slope(prev_p);
  for (std::size_t i = 1; i < scan_nodes; ++i) {
    const double p = node(i);
    const double s = excess_slope(p);
    if (prev_s > 0.0 && s <= 0.0) {
      const double root = s == 0.0 ? p : search::bisect(excess_slope, prev_p, p);
      const double val = objective(root);
      if (val > best_value) {
        best = {StationaryPoint::Status::root, root};
        best_value = val;
      }
    }
    prev_p = p;
    prev_s = s;
  }
  if (prev_s > 0.0) {
    const double val = objective(hi);
    if (val > best_value) best = {StationaryPoint::Status::above_bracket, hi};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Allocation results.

struct PowerAllocation {
  enum class Status { ok, budget_slack, infeasible };
  Status status = Status::ok;
  std::vector<double> group_totals;
  std::vector<std::pair<double, double>> splits;
  double mu = 0.0;
  std::vector<std::pair<double, double>> lambdas;
  std::size_t iterations = 0;
  std::optional<std::size_t> failing_group;
  std::string message;

  bool feasible() const noexcept { return status != Status::infeasible; }
  double total() const { return std::accumulate(group_totals.begin(), group_totals.end(), 0.0); }
};

namespace detail {

struct Demand {
  std::vector<double> totals;
  std::vector<bool> at_floor;
  double sum = 0.0;
};

inline Demand demand_at(const std::vector<Group>& groups, const std::vector<double>& floors, double mu,
                        double bracket_lo, double bracket_hi) {
  Demand d;
  d.totals.resize(groups.size());
  d.at_floor.resize(groups.size());
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const StationaryPoint sp = extreme_point_stationary(groups[k], mu, bracket_lo, bracket_hi);
    const double p3 = sp.power;
    d.at_floor[k] = floors[k] >= p3;
    d.totals[k] = std::max(floors[k], p3);
    d.sum += d.totals[k];
  }
  return d;
}

}  // namespace detail

/// Inter-group allocation: each group's total is the largest of its two
/// min-rate points and its stationary point for the current water level mu;
/// mu is bisected until the totals exhaust `p_max`.
inline PowerAllocation inter_group_allocate(const std::vector<Group>& groups, double p_max, double tol) {
  if (groups.empty()) throw std::invalid_argument("inter_group_allocate: need at least one group");
  if (!(p_max > 0.0)) throw std::invalid_argument("inter_group_allocate: p_max must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("inter_group_allocate: tol must be positive");
  for (const Group& g : groups) g.validate();

  const std::size_t K = groups.size();
  PowerAllocation out;
  out.lambdas.assign(K, {0.0, 0.0});

  // Min-rate floors.
  std::vector<double> floors(K);
  std::vector<Member> binding(K, Member::first);
  const double guess = p_max / static_cast<double>(K);
  for (std::size_t k = 0; k < K; ++k) {
    const ExtremePoint e1 = extreme_point_min_rate(groups[k], Member::first, guess);
    const ExtremePoint e2 = extreme_point_min_rate(groups[k], Member::second, guess);
    for (const ExtremePoint* e : {&e1, &e2}) {
      if (!e->ok()) {
        out.status = PowerAllocation::Status::infeasible;
        out.failing_group = k;
        out.message = "group " + std::to_string(k) + ": " + e->message;
        return out;
      }
    }
    floors[k] = std::max(e1.power, e2.power);
    binding[k] = e1.power >= e2.power ? Member::first : Member::second;
  }
  const double floor_sum = std::accumulate(floors.begin(), floors.end(), 0.0);
  if (floor_sum > p_max + tol) {
    out.status = PowerAllocation::Status::infeasible;
    out.message = "minimum-rate powers need " + std::to_string(floor_sum) + " W, budget is " +
                  std::to_string(p_max) + " W";
    out.group_totals = floors;
    return out;
  }

  const double bracket_lo = 1e-6 * p_max;
  const double bracket_hi = p_max;
  auto demand = [&](double mu) { return detail::demand_at(groups, floors, mu, bracket_lo, bracket_hi); };

  detail::Demand chosen;
  double mu = 0.0;
  detail::Demand at_zero = demand(0.0);
  if (at_zero.sum <= p_max) {
    // Sum-rate slopes vanish before the budget is spent.
    chosen = std::move(at_zero);
    if (p_max - chosen.sum > tol) {
      out.status = PowerAllocation::Status::budget_slack;
    } else {
      // Budget exhausted with mu = 0 only when every free group sits at the
      // bracket top; the price is the smallest remaining slope.
      mu = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < K; ++k)
        if (!chosen.at_floor[k]) mu = std::min(mu, sum_rate_slope(groups[k], chosen.totals[k]));
      if (!std::isfinite(mu)) mu = 0.0;
    }
  } else if (floor_sum >= p_max - tol) {
    chosen = detail::Demand{floors, std::vector<bool>(K, true), floor_sum};
    for (std::size_t k = 0; k < K; ++k) mu = std::max(mu, sum_rate_slope(groups[k], floors[k]));
  } else {
    double mu_lo = 0.0;
    double mu_hi = 0.0;
    for (const Group& g : groups) mu_hi = std::max(mu_hi, sum_rate_slope(g, 1e-3 * guess));
    mu_hi = std::max(mu_hi, 1e-300);
    detail::Demand d_lo = std::move(at_zero);
    detail::Demand d_hi = demand(mu_hi);
    while (d_hi.sum >= p_max) {
      mu_lo = mu_hi;
      d_lo = std::move(d_hi);
      mu_hi *= 2.0;
      d_hi = demand(mu_hi);
      if (++out.iterations > 2000) throw std::logic_error("inter_group_allocate: cannot bracket mu");
    }
    // Invariant: sum(mu_lo) >= p_max > sum(mu_hi).
    for (std::size_t it = 0; it < 200; ++it, ++out.iterations) {
      const double mid = 0.5 * (mu_lo + mu_hi);
      if (mu_hi - mu_lo <= 1e-14 * mu_hi || mid == mu_lo || mid == mu_hi) break;
      detail::Demand d_mid = demand(mid);
      if (d_mid.sum >= p_max) {
        mu_lo = mid;
        d_lo = std::move(d_mid);
      } else {
        mu_hi = mid;
        d_hi = std::move(d_mid);
      }
    }
    mu = mu_lo;
    chosen = d_lo;
    if (d_lo.sum - p_max > tol) {
      // Demand jumps across mu*: blend the two sides to hit the budget.
      const double theta = (p_max - d_hi.sum) / (d_lo.sum - d_hi.sum);
      chosen.sum = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        chosen.totals[k] = d_hi.totals[k] + theta * (d_lo.totals[k] - d_hi.totals[k]);
        chosen.at_floor[k] = d_lo.at_floor[k] && d_hi.at_floor[k];
        chosen.sum += chosen.totals[k];
      }
      mu = 0.5 * (mu_lo + mu_hi);
    }
  }

  out.mu = mu;
  out.group_totals = chosen.totals;
  out.splits.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double p = chosen.totals[k];
    out.splits[k] = {groups[k].eta_first * p, groups[k].eta_second * p};
    // Binding min-rate constraint carries the gap between mu and the slope.
    if (chosen.at_floor[k] && floors[k] > 0.0 && p >= floors[k] * (1.0 - 1e-9)) {
      const auto v = detail::view(groups[k], binding[k]);
      const double c = detail::constraint_slope(v, p);
      const double lambda = c > 0.0 ? std::max(0.0, (mu - sum_rate_slope(groups[k], p)) / c) : 0.0;
      (binding[k] == Member::first ? out.lambdas[k].first : out.lambdas[k].second) = lambda;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Intra-group split.

struct IntraSplit {
  double first = 0.0;
  double second = 0.0;
  double sum_rate = 0.0;
  bool feasible = true;
};

/// Range of p_{k,1} over which both members meet their minimum rates with rho
/// frozen at the group total. Empty (lo > hi) when no split works.
inline std::pair<double, double> feasible_split_range(const Group& g, double p_k) {
  const double rho1 = g.profiles.on_first(p_k, g.first.link);
  const double rho2 = g.profiles.on_second(p_k, g.second.link);
  const double a1 = std::exp2(g.first.min_rate) - 1.0;
  const double a2 = std::exp2(g.second.min_rate) - 1.0;
  const double g1 = g.first.link.gain, g2 = g.second.link.gain;
  const double n1 = g.first.link.noise_w, n2 = g.second.link.noise_w;
  // x g1 >= a1 (rho1 (p - x) g1 + n1)  <=>  x >= a1 (rho1 p g1 + n1) / ((1 + a1 rho1) g1)
  const double lo = a1 * (rho1 * p_k * g1 + n1) / ((1.0 + a1 * rho1) * g1);
  const double hi = p_k - a2 * (rho2 * p_k * g2 + n2) / ((1.0 + a2 * rho2) * g2);
  return {std::max(lo, 0.0), std::min(hi, p_k)};
}

/// Sum rate of a group as a function of p_{k,1} with the total fixed at p_k;
/// rho is evaluated at p_k so only the rate terms depend on the split.
inline auto split_objective(const Group& g, double p_k) {
  const double rho1 = g.profiles.on_first(p_k, g.first.link);
  const double rho2 = g.profiles.on_second(p_k, g.second.link);
  return [rho1, rho2, p_k, l1 = g.first.link, l2 = g.second.link](double x) {
    return rate::user_rate(x, p_k - x, rho1, l1) + rate::user_rate(p_k - x, x, rho2, l2);
  };
}

/// Best split of p_k between the two members. The search is restricted to
/// the min-rate feasible range (all of [0, p_k] when both minimum rates are
/// zero) and runs a coarse scan followed by golden-section refinement.
inline IntraSplit intra_group_allocate(const Group& g, double p_k, double tol) {
  if (!(p_k > 0.0)) throw std::invalid_argument("intra_group_allocate: p_k must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("intra_group_allocate: tol must be positive");
  const auto f = split_objective(g, p_k);
  auto [lo, hi] = feasible_split_range(g, p_k);
  if (lo > hi) {
    const double x = g.eta_first * p_k;
    return {x, p_k - x, f(x), false};
  }
  search::Maximum best = search::scan_then_golden_max(f, lo, hi, tol);
  const double even = std::clamp(0.5 * p_k, lo, hi);
  if (f(even) > best.value) best = {even, f(even)};
  return {best.x, p_k - best.x, best.value, true};
}

/// Midpoint-concavity check of the split objective on `samples` random-free
/// triples spread over [0, p_k]; returns the number of violations.
inline std::size_t split_concavity_violations(const Group& g, double p_k, std::size_t samples = 64,
                                              double rel_tol = 1e-12) {
  const auto f = split_objective(g, p_k);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t j = i + 2; j <= samples; j += 2) {
      const double a = p_k * static_cast<double>(i) / static_cast<double>(samples);
      const double b = p_k * static_cast<double>(j) / static_cast<double>(samples);
      const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
      if (fm < 0.5 * (fa + fb) - rel_tol * (std::fabs(fa) + std::fabs(fb) + 1.0)) ++bad;
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// KKT residuals of the inter-group problem at the allocation's fractions.

struct GroupResidual {
  double stationarity = 0.0;       // |dL/dp_k|
  double slackness_first = 0.0;    // |lambda_1 G_1|
  double slackness_second = 0.0;   // |lambda_2 G_2|
  double min_rate_violation = 0.0; // max(0, -G_i), worst member
  double stationarity_normalized = 0.0;
  double slackness_normalized = 0.0;
  double min_rate_normalized = 0.0;
};

struct KktReport {
  std::vector<GroupResidual> groups;
  double budget_slackness = 0.0;   // |mu (P_max - sum p)|
  double budget_excess = 0.0;      // max(0, sum p - P_max)
  double negative_power = 0.0;     // max(0, -min p)
  double dual_sign = 0.0;          // max(0, -mu, -lambda)
  double budget_slackness_normalized = 0.0;
  double max_raw = 0.0;
  double max_normalized = 0.0;
};

inline KktReport kkt_residuals(const std::vector<Group>& groups, const PowerAllocation& alloc,
                               double p_max) {
  if (alloc.group_totals.size() != groups.size())
    throw std::invalid_argument("kkt_residuals: allocation does not match the groups");
  std::vector<std::pair<double, double>> lambdas = alloc.lambdas;
  lambdas.resize(groups.size(), {0.0, 0.0});

  KktReport rep;
  const double sum = alloc.total();
  const double mu = alloc.mu;
  rep.budget_excess = std::max(0.0, sum - p_max);
  rep.budget_slackness = std::fabs(mu * (p_max - sum));
  rep.budget_slackness_normalized = mu > 0.0 ? std::fabs(p_max - sum) / p_max : 0.0;
  rep.dual_sign = std::max(0.0, -mu);

  double max_raw = std::max({rep.budget_excess, rep.budget_slackness});
  double max_norm = std::max(rep.budget_slackness_normalized, rep.budget_excess / p_max);

  for (std::size_t k = 0; k < groups.size(); ++k) {
    const Group& g = groups[k];
    const double p = alloc.group_totals[k];
    rep.negative_power = std::max(rep.negative_power, -p);
    const auto [l1, l2] = lambdas[k];
    rep.dual_sign = std::max({rep.dual_sign, -l1, -l2});

    const auto v1 = detail::view(g, Member::first);
    const auto v2 = detail::view(g, Member::second);
    GroupResidual r;
    const double slope = sum_rate_slope(g, p);
    const double c1 = detail::constraint_slope(v1, p);
    const double c2 = detail::constraint_slope(v2, p);
    const double grad = slope + l1 * c1 + l2 * c2 - mu;
    r.stationarity = std::fabs(grad);
    const double grad_scale = std::max({std::fabs(slope), std::fabs(mu), std::fabs(l1 * c1),
                                        std::fabs(l2 * c2), std::numeric_limits<double>::min()});
    r.stationarity_normalized = r.stationarity / grad_scale;

    const double g1 = detail::constraint(v1, p), g2 = detail::constraint(v2, p);
    const double s1 = detail::constraint_scale(v1, p), s2 = detail::constraint_scale(v2, p);
    r.slackness_first = std::fabs(l1 * g1);
    r.slackness_second = std::fabs(l2 * g2);
    r.slackness_normalized = std::max(l1 > 0.0 ? std::fabs(g1) / s1 : 0.0,
                                      l2 > 0.0 ? std::fabs(g2) / s2 : 0.0);
    r.min_rate_violation = std::max({0.0, -g1, -g2});
    r.min_rate_normalized = std::max({0.0, -g1 / s1, -g2 / s2});

    max_raw = std::max({max_raw, r.stationarity, r.slackness_first, r.slackness_second,
                        r.min_rate_violation});
    max_norm = std::max({max_norm, r.stationarity_normalized, r.slackness_normalized,
                         r.min_rate_normalized});
    rep.groups.push_back(r);
  }
  max_raw = std::max({max_raw, rep.negative_power, rep.dual_sign});
  max_norm = std::max({max_norm, rep.negative_power / p_max, rep.dual_sign});
  rep.max_raw = max_raw;
  rep.max_normalized = max_norm;
  return rep;
}

}  // namespace sfma::power

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sfma/semantic_rate.hpp"

namespace sfma::pairing {

using rate::InterferencePair;
using rate::InterferenceProfile;
using rate::Link;

struct UserTerminal {
  std::size_t id = 0;
  Link link;
  double min_rate = 0.0;         // bits/s/Hz
  std::int64_t frame_time = 0;  // index of the requested frame
};

struct PairingAssignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::int64_t> gaps;
  /// Users the matching could not place in a gap-feasible pair.
  std::vector<std::size_t> unmatched;
  std::size_t proposals = 0;

  bool feasible() const noexcept { return unmatched.empty(); }
};

inline std::int64_t temporal_gap(const UserTerminal& u, const UserTerminal& v) noexcept {
  return u.frame_time > v.frame_time ? u.frame_time - v.frame_time : v.frame_time - u.frame_time;
}

inline double preference_value(const UserTerminal& u, const UserTerminal& v, double p_u, double p_v,
                               const InterferencePair& profiles, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("preference_value: alpha must be non-negative");
  return rate::pair_sum_rate(p_u, p_v, profiles, u.link, v.link) -
         alpha * static_cast<double>(temporal_gap(u, v));
}

inline double preference_value(const UserTerminal& u, const UserTerminal& v, double p_u, double p_v,
                               const InterferenceProfile& profile, double alpha) {
  return preference_value(u, v, p_u, p_v, InterferencePair::shared(profile), alpha);
}

/// Symmetric matrix of preference values under a fixed per-user power.
/// V(i, j) is evaluated with i in the first slot for i < j and mirrored.
class PreferenceMatrix {
 public:
  PreferenceMatrix(const std::vector<UserTerminal>& users, double per_user_power_w,
                   const InterferencePair& profiles, double alpha)
      : n_(users.size()), v_(n_ * n_, -std::numeric_limits<double>::infinity()) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double val =
            preference_value(users[i], users[j], per_user_power_w, per_user_power_w, profiles, alpha);
        v_[i * n_ + j] = val;
        v_[j * n_ + i] = val;
      }
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> v_;
};

using PreferenceLists = std::vector<std::vector<std::size_t>>;

namespace detail {

inline void check_ids(const std::vector<UserTerminal>& users) {
  for (std::size_t i = 0; i < users.size(); ++i)
    if (users[i].id != i)
      throw std::invalid_argument("pairing: user ids must be dense and equal to their position");
}

inline PreferenceLists lists_from(const PreferenceMatrix& v) {
  const std::size_t n = v.size();
  PreferenceLists lists(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& l = lists[i];
    l.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) l.push_back(j);
    std::sort(l.begin(), l.end(), [&](std::size_t a, std::size_t b) {
      if (v(i, a) != v(i, b)) return v(i, a) > v(i, b);
      return a < b;
    });
  }
  return lists;
}

}  // namespace detail

/// Every other user, by descending preference value; ties go to the lower id.
inline PreferenceLists build_preference_lists(const std::vector<UserTerminal>& users,
                                              double per_user_power_w,
                                              const InterferencePair& profiles, double alpha) {
  if (users.size() < 2) throw std::invalid_argument("build_preference_lists: need at least 2 users");
  detail::check_ids(users);
  return detail::lists_from(PreferenceMatrix(users, per_user_power_w, profiles, alpha));
}

/// Proposal-based roommates matching on a symmetric preference matrix.
///
/// The lowest-id active user proposes to the next entry of its list that it
/// strictly prefers to its current partner. The receiver accepts when it is
/// free or when the proposer beats its current partner (V_ij > V_jl), and
/// only if the temporal gap is within `delta_max`. Accepting frees both
/// previous partners, who restart from the top of their lists. A user is
/// active while some candidate above its current partner is still untried.
///
/// Each acceptance raises the sorted vector of matched preference values
/// lexicographically, so the dynamic terminates; the result has no pair
/// (i, j) with gap <= delta_max that both would strictly prefer.
inline PairingAssignment stable_pairing(const std::vector<UserTerminal>& users,
                                        const PreferenceMatrix& v, std::int64_t delta_max) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t n = users.size();
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("pair_users: user count must be even and >= 2");
  if (delta_max < 0) throw std::invalid_argument("pair_users: delta_max must be non-negative");
  detail::check_ids(users);

  const PreferenceLists lists = detail::lists_from(v);
  // rank[i][j]: position of j in i's list.
  std::vector<std::size_t> rank(n * n, kNone);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < lists[i].size(); ++r) rank[i * n + lists[i][r]] = r;

  std::vector<std::size_t> partner(n, kNone);
  std::vector<std::size_t> next(n, 0);

  auto current_value = [&](std::size_t i) {
    return partner[i] == kNone ? -std::numeric_limits<double>::infinity() : v(i, partner[i]);
  };
  auto active = [&](std::size_t i) {
    return next[i] < lists[i].size() && v(i, lists[i][next[i]]) > current_value(i);
  };
  auto release = [&](std::size_t i) {
    if (i == kNone) return;
    partner[i] = kNone;
    next[i] = 0;
  };

  PairingAssignment out;
  const std::size_t proposal_budget = n * n * n;
  for (;;) {
    std::size_t i = 0;
    while (i < n && !active(i)) ++i;
    if (i == n) break;
    if (++out.proposals > proposal_budget)
      throw std::logic_error("pair_users: proposal budget exhausted");

    const std::size_t j = lists[i][next[i]++];
    if (temporal_gap(users[i], users[j]) > delta_max) continue;
    if (partner[j] != kNone && !(v(i, j) > current_value(j))) continue;
    release(partner[i]);
    release(partner[j]);
    partner[i] = j;
    partner[j] = i;
    // j still owes proposals to anyone it ranks above i.
    next[j] = std::min(next[j], rank[j * n + i]);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (partner[i] == kNone) {
      out.unmatched.push_back(i);
    } else if (i < partner[i]) {
      out.pairs.emplace_back(i, partner[i]);
      out.gaps.push_back(temporal_gap(users[i], users[partner[i]]));
    }
  }
  return out;
}

/// Pairs users under a fixed per-user power (the equal split of an equal
/// group share of the budget).
inline PairingAssignment pair_users(const std::vector<UserTerminal>& users, double per_user_power_w,
                                    const InterferencePair& profiles, double alpha,
                                    std::int64_t delta_max) {
  if (users.size() < 2 || users.size() % 2 != 0)
    throw std::invalid_argument("pair_users: user count must be even and >= 2");
  return stable_pairing(users, PreferenceMatrix(users, per_user_power_w, profiles, alpha), delta_max);
}

inline PairingAssignment pair_users(const std::vector<UserTerminal>& users, double per_user_power_w,
                                    const InterferenceProfile& profile, double alpha,
                                    std::int64_t delta_max) {
  return pair_users(users, per_user_power_w, InterferencePair::shared(profile), alpha, delta_max);
}

}  // namespace sfma::pairing

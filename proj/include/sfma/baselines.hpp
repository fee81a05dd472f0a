#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfma/pairing.hpp"
#include "sfma/semantic_rate.hpp"

namespace sfma::baselines {

using pairing::PairingAssignment;
using pairing::UserTerminal;

enum class Scheme { sfma, fnoma, ojscc, ofdma };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::sfma: return "sfma";
    case Scheme::fnoma: return "fnoma";
    case Scheme::ojscc: return "ojscc";
    case Scheme::ofdma: return "ofdma";
  }
  return "?";
}

struct BaselineScheme {
  Scheme kind = Scheme::fnoma;
  double fnoma_eta = 0.8;  // power fraction of the weak user

  void validate() const {
    if (!(fnoma_eta > 0.0 && fnoma_eta < 1.0))
      throw std::invalid_argument("F-NOMA power fraction must lie in (0, 1)");
  }
};

/// Strongest with weakest, second strongest with second weakest, and so on.
/// Pairs are reported as (stronger, weaker); equal gains keep id order.
inline PairingAssignment pair_distinctive(const std::vector<UserTerminal>& users) {
  if (users.size() < 2 || users.size() % 2 != 0)
    throw std::invalid_argument("pair_distinctive: user count must be even and >= 2");
  std::vector<std::size_t> order(users.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return users[a].link.gain > users[b].link.gain;
  });
  PairingAssignment out;
  for (std::size_t i = 0, j = order.size() - 1; i < j; ++i, --j) {
    const auto& s = users[order[i]];
    const auto& w = users[order[j]];
    out.pairs.emplace_back(s.id, w.id);
    out.gaps.push_back(pairing::temporal_gap(s, w));
  }
  return out;
}

struct UserRates {
  double first = 0.0;
  double second = 0.0;
};

/// Two-user NOMA with fixed fractions: the weak user gets `eta_weak` of p,
/// decodes treating the strong user's signal as interference; the strictly
/// stronger user cancels the weak signal first. With equal gains neither
/// side cancels.
inline UserRates fnoma_pair_rates(const UserTerminal& u, const UserTerminal& v, double p,
                                  double eta_weak) {
  if (!(eta_weak >= 0.0 && eta_weak <= 1.0))
    throw std::invalid_argument("fnoma: weak-user fraction must lie in [0, 1]");
  const bool u_strong = u.link.gain >= v.link.gain;
  const UserTerminal& strong = u_strong ? u : v;
  const UserTerminal& weak = u_strong ? v : u;
  const double p_weak = eta_weak * p;
  const double p_strong = (1.0 - eta_weak) * p;
  const bool sic = strong.link.gain > weak.link.gain;
  const double r_strong = std::log2(
      1.0 + (sic ? rate::sinr_conventional(p_strong, 0.0, strong.link)
                 : rate::sinr_conventional(p_strong, p_weak, strong.link)));
  const double r_weak = std::log2(1.0 + rate::sinr_conventional(p_weak, p_strong, weak.link));
  return u_strong ? UserRates{r_strong, r_weak} : UserRates{r_weak, r_strong};
}

inline double fnoma_sum_rate(const std::vector<UserTerminal>& users, const PairingAssignment& pairs,
                             double p_max, double eta_weak) {
  if (pairs.pairs.empty()) return 0.0;
  const double p_k = p_max / static_cast<double>(pairs.pairs.size());
  double total = 0.0;
  for (const auto& [a, b] : pairs.pairs) {
    const UserRates r = fnoma_pair_rates(users.at(a), users.at(b), p_k, eta_weak);
    total += r.first + r.second;
  }
  return total;
}

/// Half the band and half the group power per member; the noise in a half
/// band is halved too, so each member sees p_k g / noise.
inline double ojscc_user_rate(double p_k, const rate::Link& link) {
  return 0.5 * std::log2(1.0 + (0.5 * p_k) * link.gain / (0.5 * link.noise_w));
}

inline double ojscc_sum_rate(const std::vector<UserTerminal>& users, const PairingAssignment& pairs,
                             double p_max) {
  if (pairs.pairs.empty()) return 0.0;
  const double p_k = p_max / static_cast<double>(pairs.pairs.size());
  double total = 0.0;
  for (const auto& [a, b] : pairs.pairs)
    total += ojscc_user_rate(p_k, users.at(a).link) + ojscc_user_rate(p_k, users.at(b).link);
  return total;
}

/// Every user gets 1/M of the band and of the power.
inline double ofdma_sum_rate(const std::vector<UserTerminal>& users, double p_max) {
  if (users.empty()) throw std::invalid_argument("ofdma: need at least one user");
  const double m = static_cast<double>(users.size());
  double total = 0.0;
  for (const auto& u : users)
    total += std::log2(1.0 + (p_max / m) * u.link.gain / (u.link.noise_w / m)) / m;
  return total;
}

}  // namespace sfma::baselines

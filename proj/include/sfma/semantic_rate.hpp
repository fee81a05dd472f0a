#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sfma/interference.hpp"

namespace sfma::rate {

/// Classic SINR with the partner's full power as interference.
inline double sinr_conventional(double p_self, double p_other, const Link& link) noexcept {
  return p_self * link.gain / (p_other * link.gain + link.noise_w);
}

/// SINR with the partner's interference scaled by the semantic factor rho.
inline double sinr_semantic(double p_self, double p_other, double rho_val,
                            const Link& link) noexcept {
  return p_self * link.gain / (rho_val * p_other * link.gain + link.noise_w);
}

/// Achievable rate in bits/s/Hz.
inline double user_rate(double p_self, double p_other, double rho_val, const Link& link) noexcept {
  return std::log2(1.0 + sinr_semantic(p_self, p_other, rho_val, link));
}

struct CalibratedRho {
  double value = 0.0;
  bool clamped = false;
};

/// Inverts the distortion-based SINR p g / mse against the semantic SINR
/// p g / (rho p_other g + noise), i.e. rho = (mse - noise) / (p_other g).
/// The signal power cancels, so `p_self` only documents the operating point.
inline CalibratedRho calibrate_rho(double /*p_self*/, double p_other, const Link& link,
                                   double mse) {
  const double interference = p_other * link.gain;
  if (!(interference > 0.0))
    throw std::invalid_argument("calibrate_rho: partner power times gain must be positive");
  if (!(mse > 0.0)) throw std::invalid_argument("calibrate_rho: mse must be positive");
  const double raw = (mse - link.noise_w) / interference;
  const double v = std::clamp(raw, 0.0, 1.0);
  return {v, v != raw};
}

/// Rates of both members of a group and their sum.
struct PairRates {
  double first = 0.0;
  double second = 0.0;
  double sum() const noexcept { return first + second; }
};

inline PairRates pair_rates(double p1, double p2, const InterferencePair& profiles,
                            const Link& link1, const Link& link2) {
  if (p1 < 0.0 || p2 < 0.0) throw std::invalid_argument("pair rates: powers must be non-negative");
  const double total = p1 + p2;
  const double rho21 = profiles.on_first(total, link1);
  const double rho12 = profiles.on_second(total, link2);
  return {user_rate(p1, p2, rho21, link1), user_rate(p2, p1, rho12, link2)};
}

inline double pair_sum_rate(double p1, double p2, const InterferencePair& profiles,
                            const Link& link1, const Link& link2) {
  return pair_rates(p1, p2, profiles, link1, link2).sum();
}

inline double pair_sum_rate(double p1, double p2, const InterferenceProfile& profile,
                            const Link& link1, const Link& link2) {
  return pair_sum_rate(p1, p2, InterferencePair::shared(profile), link1, link2);
}

}  // namespace sfma::rate

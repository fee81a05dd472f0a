#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "sfma/rng.hpp"

namespace sfma::channel {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point& a, const Point& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Base station plus user positions, in meters. Users lie inside the square
/// of side `area_side_m` centered on the base station.
struct Topology {
  Point bs_position;
  std::vector<Point> users;
  double area_side_m = 0.0;
};

/// Per-user linear power gain |h|^2 and noise power (W).
struct ChannelRealization {
  std::vector<double> gains;
  std::vector<double> noise_powers_w;
};

inline constexpr double kMinPathLossDistanceM = 1.0;

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) noexcept { return 10.0 * std::log10(v); }

/// Uniform placement of `n` users over the square area around a BS at the
/// origin. Deterministic for a fixed seed.
inline Topology place_users(std::size_t n, double area_side_m, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("place_users: user count must be even and >= 2");
  if (!(area_side_m > 0.0))
    throw std::invalid_argument("place_users: area side must be positive");

  Topology t;
  t.area_side_m = area_side_m;
  t.users.reserve(n);
  Engine eng = make_stream(seed, "placement");
  std::uniform_real_distribution<double> coord(-area_side_m / 2.0, area_side_m / 2.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = coord(eng);
    const double y = coord(eng);
    t.users.push_back({t.bs_position.x + x, t.bs_position.y + y});
  }
  return t;
}

/// L(d) = 37 + 30 log10(d) dB, with d clamped below at 1 m.
inline double path_loss_db(double distance_m) noexcept {
  const double d = std::max(distance_m, kMinPathLossDistanceM);
  return 37.0 + 30.0 * std::log10(d);
}

struct ChannelOptions {
  double shadow_sigma_db = 4.0;
  double noise_dbw = -104.0;
  /// Unit-mean exponential (Rayleigh power) multiplier on every gain.
  bool rayleigh_fading = false;
};

inline ChannelRealization draw_channel(const Topology& topology, const ChannelOptions& opts,
                                       std::uint64_t seed) {
  if (!(opts.shadow_sigma_db >= 0.0))
    throw std::invalid_argument("draw_channel: shadowing sigma must be non-negative");

  ChannelRealization ch;
  const std::size_t n = topology.users.size();
  ch.gains.reserve(n);
  ch.noise_powers_w.assign(n, db_to_linear(opts.noise_dbw));

  Engine shadow_eng = make_stream(seed, "shadowing");
  Engine fading_eng = make_stream(seed, "fading");
  std::normal_distribution<double> shadow(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0);

  for (const Point& u : topology.users) {
    const double s = opts.shadow_sigma_db * shadow(shadow_eng);
    double g = db_to_linear(-(path_loss_db(distance(u, topology.bs_position)) + s));
    if (opts.rayleigh_fading) g *= fading(fading_eng);
    ch.gains.push_back(g);
  }
  return ch;
}

inline ChannelRealization draw_channel(const Topology& topology, double shadow_sigma_db,
                                       double noise_dbw, std::uint64_t seed) {
  return draw_channel(topology, ChannelOptions{shadow_sigma_db, noise_dbw, false}, seed);
}

/// 10 log10(p / noise); -inf when p == 0.
inline double snr_db(double power_w, double noise_w) {
  if (!(noise_w > 0.0)) throw std::invalid_argument("snr_db: noise power must be positive");
  if (power_w < 0.0) throw std::invalid_argument("snr_db: power must be non-negative");
  if (power_w == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(power_w / noise_w);
}

}  // namespace sfma::channel

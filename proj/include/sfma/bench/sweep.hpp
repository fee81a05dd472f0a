#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <random>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "sfma/baselines.hpp"
#include "sfma/bench/config.hpp"
#include "sfma/channel.hpp"
#include "sfma/rng.hpp"
#include "sfma/solve.hpp"

namespace sfma::bench {

using baselines::Scheme;
using pairing::UserTerminal;

inline constexpr std::array<Scheme, 4> kSchemes{Scheme::sfma, Scheme::fnoma, Scheme::ojscc, Scheme::ofdma};

struct CellSummary {
  std::string scheme;
  std::size_t users = 0;
  double p_max_dbw = 0.0;
  double mean_sum_rate = 0.0;  // over feasible drops; NaN when there are none
  double std_sum_rate = 0.0;   // sample standard deviation
  std::size_t drops = 0;       // attempted
  std::size_t infeasible = 0;

  bool operator==(const CellSummary&) const = default;
};

struct DropRecord {
  std::string scheme;
  std::size_t users = 0;
  double p_max_dbw = 0.0;
  std::size_t drop = 0;
  std::uint64_t seed = 0;
  bool feasible = true;
  double sum_rate = 0.0;
};

struct RunReport {
  std::vector<CellSummary> cells;  // sorted by (scheme, users, p_max_dbw)
  std::vector<DropRecord> records;

  const CellSummary* find(std::string_view scheme, std::size_t users, double p_max_dbw) const {
    for (const auto& c : cells)
      if (c.scheme == scheme && c.users == users && c.p_max_dbw == p_max_dbw) return &c;
    return nullptr;
  }
};

inline std::uint64_t drop_seed(std::uint64_t root, std::size_t users, std::size_t p_index, std::size_t drop) {
  return derive_seed(root, {static_cast<std::uint64_t>(users), static_cast<std::uint64_t>(p_index),
                            static_cast<std::uint64_t>(drop)});
}

/// Users of one drop: placement, channel, and requested frame indices all
/// derived from `seed`.
inline std::vector<UserTerminal> make_users(std::size_t n, const ScenarioConfig& cfg, std::uint64_t seed) {
  const channel::Topology topo = channel::place_users(n, cfg.area_side_m, seed);
  const channel::ChannelRealization ch = channel::draw_channel(topo, cfg.channel, seed);
  Engine frames = make_stream(seed, "frames");
  std::uniform_int_distribution<std::int64_t> frame(0, cfg.frame_span - 1);
  std::vector<UserTerminal> users(n);
  for (std::size_t i = 0; i < n; ++i)
    users[i] = {i, {ch.gains[i], ch.noise_powers_w[i]}, cfg.min_rate, frame(frames)};
  return users;
}

struct DropOutcome {
  std::array<double, kSchemes.size()> sum_rate{};
  std::array<bool, kSchemes.size()> feasible{};
};

inline DropOutcome evaluate_drop(const std::vector<UserTerminal>& users, const ScenarioConfig& cfg,
                                 const rate::InterferencePair& profiles, double p_max_w) {
  DropOutcome out;
  power::SolverConfig sc;
  sc.p_max_w = p_max_w;
  sc.alpha = cfg.alpha;
  sc.delta_max = cfg.delta_max;
  sc.profiles = profiles;
  const power::SolveResult r = power::solve(users, sc);
  out.feasible[0] = r.feasible();
  out.sum_rate[0] = r.feasible() ? r.sum_rate : 0.0;

  const auto pairs = baselines::pair_distinctive(users);
  out.sum_rate[1] = baselines::fnoma_sum_rate(users, pairs, p_max_w, cfg.fnoma_eta);
  out.sum_rate[2] = baselines::ojscc_sum_rate(users, pairs, p_max_w);
  out.sum_rate[3] = baselines::ofdma_sum_rate(users, p_max_w);
  out.feasible[1] = out.feasible[2] = out.feasible[3] = true;
  return out;
}

struct SweepOptions {
  std::size_t threads = 0;  // 0: take the config value, then hardware concurrency
  bool keep_records = false;
};

inline std::size_t worker_count(std::size_t requested, std::size_t tasks) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(n, tasks));
}

inline RunReport run_sweep(const ScenarioConfig& cfg, const SweepOptions& opts = {}) {
  cfg.validate();
  const rate::InterferencePair profiles = cfg.profiles();

  struct Task {
    std::size_t m_index, p_index, drop;
  };
  std::vector<Task> tasks;
  tasks.reserve(cfg.user_counts.size() * cfg.p_max_dbw.size() * cfg.drops);
  for (std::size_t mi = 0; mi < cfg.user_counts.size(); ++mi)
    for (std::size_t pi = 0; pi < cfg.p_max_dbw.size(); ++pi)
      for (std::size_t d = 0; d < cfg.drops; ++d) tasks.push_back({mi, pi, d});

  std::vector<DropOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        const Task& task = tasks[t];
        const std::size_t m = cfg.user_counts[task.m_index];
        const std::uint64_t seed = drop_seed(cfg.root_seed, m, task.p_index, task.drop);
        const auto users = make_users(m, cfg, seed);
        outcomes[t] = evaluate_drop(users, cfg, profiles, channel::db_to_linear(cfg.p_max_dbw[task.p_index]));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };

  const std::size_t n_workers = worker_count(opts.threads ? opts.threads : cfg.threads, tasks.size());
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  RunReport report;
  for (std::size_t s = 0; s < kSchemes.size(); ++s) {
    for (std::size_t mi = 0; mi < cfg.user_counts.size(); ++mi) {
      for (std::size_t pi = 0; pi < cfg.p_max_dbw.size(); ++pi) {
        CellSummary cell;
        cell.scheme = baselines::to_string(kSchemes[s]);
        cell.users = cfg.user_counts[mi];
        cell.p_max_dbw = cfg.p_max_dbw[pi];
        cell.drops = cfg.drops;
        const std::size_t base = (mi * cfg.p_max_dbw.size() + pi) * cfg.drops;
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t d = 0; d < cfg.drops; ++d) {
          const DropOutcome& o = outcomes[base + d];
          if (opts.keep_records)
            report.records.push_back({cell.scheme, cell.users, cell.p_max_dbw, d,
                                      drop_seed(cfg.root_seed, cell.users, pi, d), o.feasible[s], o.sum_rate[s]});
          if (!o.feasible[s]) {
            ++cell.infeasible;
            continue;
          }
          sum += o.sum_rate[s];
          ++n;
        }
        cell.mean_sum_rate = n ? sum / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
        double ss = 0.0;
        for (std::size_t d = 0; d < cfg.drops; ++d) {
          const DropOutcome& o = outcomes[base + d];
          if (o.feasible[s]) ss += (o.sum_rate[s] - cell.mean_sum_rate) * (o.sum_rate[s] - cell.mean_sum_rate);
        }
        cell.std_sum_rate = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        report.cells.push_back(cell);
      }
    }
  }
  auto key = [](const CellSummary& c) { return std::tie(c.scheme, c.users, c.p_max_dbw); };
  std::stable_sort(report.cells.begin(), report.cells.end(),
                   [&](const CellSummary& a, const CellSummary& b) { return key(a) < key(b); });
  return report;
}

/// Relative improvement of scheme `a` over scheme `b` in one cell.
inline double improvement(const RunReport& r, std::string_view a, std::string_view b, std::size_t users,
                          double p_max_dbw) {
  const CellSummary* ca = r.find(a, users, p_max_dbw);
  const CellSummary* cb = r.find(b, users, p_max_dbw);
  if (!ca || !cb) return std::numeric_limits<double>::quiet_NaN();
  return ca->mean_sum_rate / cb->mean_sum_rate - 1.0;
}

}  // namespace sfma::bench

// sfma: pairing, power allocation and Monte Carlo sweeps from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfma/sfma.hpp"
#include "sfma/testing/oracles.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

using sfma::bench::ConfigError;
using sfma::bench::ScenarioConfig;

int run_sweep_cmd(const std::string& config_path, const std::string& output_override, std::size_t threads) {
  ScenarioConfig cfg = sfma::bench::load_config(config_path);
  if (!output_override.empty()) cfg.output = output_override;
  sfma::bench::SweepOptions opts;
  opts.threads = threads;
  opts.keep_records = !cfg.records_output.empty();
  // Surface table problems as configuration errors before any work starts.
  (void)cfg.profiles();

  const auto report = sfma::bench::run_sweep(cfg, opts);
  sfma::bench::emit_csv(report, cfg.output);
  if (opts.keep_records) sfma::bench::emit_records_csv(report, cfg.records_output);

  std::printf("wrote %zu cells to %s\n", report.cells.size(), cfg.output.c_str());
  std::printf("%6s %9s %10s %10s %10s %10s  %s\n", "users", "p_dbw", "sfma", "fnoma", "ojscc", "ofdma",
              "sfma gain vs fnoma/ojscc/ofdma");
  for (std::size_t m : cfg.user_counts)
    for (double p : cfg.p_max_dbw) {
      auto mean = [&](const char* s) { return report.find(s, m, p)->mean_sum_rate; };
      auto gain = [&](const char* s) { return 100.0 * sfma::bench::improvement(report, "sfma", s, m, p); };
      const auto* cell = report.find("sfma", m, p);
      std::printf("%6zu %9g %10.4f %10.4f %10.4f %10.4f  %+.1f%% %+.1f%% %+.1f%%", m, p, mean("sfma"),
                  mean("fnoma"), mean("ojscc"), mean("ofdma"), gain("fnoma"), gain("ojscc"), gain("ofdma"));
      if (cell->infeasible) std::printf("  (%zu/%zu sfma drops infeasible)", cell->infeasible, cell->drops);
      std::printf("\n");
    }
  return 0;
}

struct SolveArgs {
  std::string config_path;
  std::size_t users = 10;
  std::uint64_t seed = 1;
  double p_max_dbw = 40.0;
  std::optional<double> alpha, min_rate, rho_constant;
  std::optional<std::int64_t> delta_max, frame_span;
};

int run_solve_cmd(const SolveArgs& a) {
  ScenarioConfig cfg = a.config_path.empty() ? ScenarioConfig{} : sfma::bench::load_config(a.config_path);
  if (a.alpha) cfg.alpha = *a.alpha;
  if (a.min_rate) cfg.min_rate = *a.min_rate;
  if (a.delta_max) cfg.delta_max = *a.delta_max;
  if (a.frame_span) cfg.frame_span = *a.frame_span;
  if (a.rho_constant) {
    cfg.rho.kind = sfma::bench::RhoSpec::Kind::constant;
    cfg.rho.constant_value = *a.rho_constant;
    cfg.rho_second.reset();
  }
  if (a.users < 2 || a.users % 2 != 0) throw ConfigError("--users must be even and >= 2");
  cfg.user_counts = {a.users};
  cfg.validate();

  const auto users = sfma::bench::make_users(a.users, cfg, a.seed);
  sfma::power::SolverConfig sc;
  sc.p_max_w = sfma::channel::db_to_linear(a.p_max_dbw);
  sc.alpha = cfg.alpha;
  sc.delta_max = cfg.delta_max;
  sc.profiles = cfg.profiles();
  const auto r = sfma::power::solve(users, sc);

  std::printf("users %zu  seed %llu  p_max %.6g W (%.4g dBW)\n", a.users, static_cast<unsigned long long>(a.seed),
              sc.p_max_w, a.p_max_dbw);
  std::printf("%4s %14s %10s %6s\n", "user", "gain", "snr_db", "frame");
  for (const auto& u : users)
    std::printf("%4zu %14.6e %10.3f %6lld\n", u.id, u.link.gain,
                sfma::channel::snr_db(sc.p_max_w / static_cast<double>(a.users) * u.link.gain, u.link.noise_w),
                static_cast<long long>(u.frame_time));

  std::printf("\npairing: %zu pair(s), %zu proposal(s)\n", r.pairing.pairs.size(), r.pairing.proposals);
  for (std::size_t k = 0; k < r.pairing.pairs.size(); ++k)
    std::printf("  (%zu, %zu) gap %lld\n", r.pairing.pairs[k].first, r.pairing.pairs[k].second,
                static_cast<long long>(r.pairing.gaps[k]));
  if (!r.feasible()) {
    std::printf("\ninfeasible at %s stage: %s\n", sfma::power::to_string(r.failed_stage), r.message.c_str());
    return kExitInfeasible;
  }

  std::printf("\nallocation: total %.9g W of %.9g W, mu %.6e\n", r.allocation.total(), sc.p_max_w, r.allocation.mu);
  std::printf("%5s %14s %14s %14s %9s %9s\n", "group", "p_k", "p_k1", "p_k2", "r1", "r2");
  for (std::size_t k = 0; k < r.groups.size(); ++k) {
    const auto& g = r.groups[k];
    const auto [p1, p2] = r.allocation.splits[k];
    const auto rates = sfma::rate::pair_rates(p1, p2, g.profiles, g.first.link, g.second.link);
    std::printf("%5zu %14.6e %14.6e %14.6e %9.4f %9.4f\n", k, r.allocation.group_totals[k], p1, p2, rates.first,
                rates.second);
  }
  std::printf("sum rate %.9g bits/s/Hz\n", r.sum_rate);

  const auto kkt = sfma::power::kkt_residuals(r.groups, r.allocation, sc.p_max_w);
  std::printf("\nKKT residuals (inter-group, equal split)\n");
  std::printf("  max raw %.3e  max normalized %.3e\n", kkt.max_raw, kkt.max_normalized);
  std::printf("  budget slackness %.3e  budget excess %.3e  dual sign %.3e\n", kkt.budget_slackness,
              kkt.budget_excess, kkt.dual_sign);
  for (std::size_t k = 0; k < kkt.groups.size(); ++k)
    std::printf("  group %zu: stationarity %.3e  slackness %.3e/%.3e  min-rate violation %.3e\n", k,
                kkt.groups[k].stationarity, kkt.groups[k].slackness_first, kkt.groups[k].slackness_second,
                kkt.groups[k].min_rate_violation);
  return 0;
}

// Input columns: group_power_dbw,snr_db,noise_w,mse. One row per grid cell;
// the operating point is the equal split at the given received SNR.
int run_calibrate_cmd(const std::string& path, const std::string& output) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || sfma::rate::detail::trim(line) != "group_power_dbw,snr_db,noise_w,mse")
    throw ConfigError(path + ":1: expected header group_power_dbw,snr_db,noise_w,mse");

  std::map<std::pair<double, double>, double> cells;
  std::set<double> powers, snrs;
  std::size_t lineno = 1, clamped = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = sfma::rate::detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const auto f = sfma::rate::detail::split_csv_line(line);
    if (f.size() != 4) throw ConfigError(where + ": expected 4 fields");
    double v[4];
    try {
      for (int i = 0; i < 4; ++i) v[i] = sfma::rate::detail::parse_double(f[i], where);
    } catch (const std::runtime_error& e) {
      throw ConfigError(e.what());
    }
    const double p_half = 0.5 * sfma::channel::db_to_linear(v[0]);
    const sfma::rate::Link link{sfma::channel::db_to_linear(v[1]) * v[2] / p_half, v[2]};
    sfma::rate::CalibratedRho rho;
    try {
      sfma::rate::validate(link);
      rho = sfma::rate::calibrate_rho(p_half, p_half, link, v[3]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
    clamped += rho.clamped;
    if (!cells.emplace(std::make_pair(v[0], v[1]), rho.value).second)
      throw ConfigError(where + ": duplicate grid cell");
    powers.insert(v[0]);
    snrs.insert(v[1]);
  }
  if (cells.size() != powers.size() * snrs.size() || cells.empty())
    throw ConfigError(path + ": rows must cover a full power x snr grid");

  sfma::rate::RhoTable t;
  t.power_axis_dbw.assign(powers.begin(), powers.end());
  t.snr_axis_db.assign(snrs.begin(), snrs.end());
  for (double p : powers)
    for (double s : snrs) t.values.push_back(cells.at({p, s}));
  if (output.empty() || output == "-") {
    sfma::rate::write_rho_table(t, std::cout);
  } else {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot open '" + output + "' for writing");
    sfma::rate::write_rho_table(t, out);
  }
  std::fprintf(stderr, "%zu cell(s), %zu clamped to [0, 1]\n", cells.size(), clamped);
  return 0;
}

// Small-instance oracle checks; prints one line per check.
int run_verify_cmd(std::uint64_t seed, std::size_t instances) {
  using namespace sfma;
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_users = [&](std::size_t n, double min_rate) {
    std::vector<pairing::UserTerminal> users(n);
    for (std::size_t i = 0; i < n; ++i)
      users[i] = {i, {channel::db_to_linear(-130.0 + 40.0 * unit(eng)), 4e-11}, min_rate,
                  static_cast<std::int64_t>(6.0 * unit(eng))};
    return users;
  };
  const auto profiles = rate::InterferencePair::shared(rate::InterferenceProfile::constant(0.3));
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    all_ok = all_ok && ok;
    std::printf("%-22s %s  %s\n", name, ok ? "ok  " : "FAIL", detail.c_str());
  };

  {
    std::size_t bad = 0;
    for (std::size_t t = 0; t < instances; ++t) {
      const auto users = random_users(4 + 2 * (t % 4), 0.0);
      const pairing::PreferenceMatrix v(users, 1.0, profiles, 0.1);
      const auto a = pairing::stable_pairing(users, v, 4);
      auto stable = testing::stable_perfect_matchings(users, v, 4);
      if (a.feasible()) {
        auto m = a.pairs;
        std::sort(m.begin(), m.end());
        if (std::find(stable.begin(), stable.end(), m) == stable.end()) ++bad;
      } else if (!testing::blocking_pairs(users, v, 4, a.pairs).empty()) {
        ++bad;
      }
    }
    report("pairing stability", bad == 0, std::to_string(bad) + " of " + std::to_string(instances) + " bad");
  }
  {
    double worst = 0.0;
    for (std::size_t t = 0; t < instances; ++t) {
      const auto users = random_users(2 + 2 * (t % 3), 0.5);
      std::vector<power::Group> groups;
      for (std::size_t i = 0; i < users.size(); i += 2) groups.push_back({users[i], users[i + 1], profiles});
      const double p_max = 10.0;
      const auto alloc = power::inter_group_allocate(groups, p_max, 1e-9 * p_max);
      const auto grid = testing::simplex_grid_max(groups, p_max, 400);
      if (!alloc.feasible()) {
        if (std::isfinite(grid.sum_rate)) worst = std::max(worst, grid.sum_rate);
        continue;
      }
      double got = 0.0;
      for (std::size_t k = 0; k < groups.size(); ++k) got += power::group_sum_rate(groups[k], alloc.group_totals[k]);
      worst = std::max(worst, grid.sum_rate - got);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "grid excess %.3e bits/s/Hz", worst);
    report("inter-group vs grid", worst <= 1e-3, buf);
  }
  {
    double worst = 0.0;
    for (std::size_t t = 0; t < instances; ++t) {
      const auto users = random_users(2, 0.5);
      const power::Group g{users[0], users[1], profiles};
      const double p_k = 1.0 + 9.0 * unit(eng);
      const auto s = power::intra_group_allocate(g, p_k, 1e-9 * p_k);
      const auto grid = testing::split_grid_max(g, p_k, 20001);
      if (!s.feasible) continue;
      worst = std::max(worst, grid.sum_rate - s.sum_rate);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "grid excess %.3e bits/s/Hz", worst);
    report("intra-group vs grid", worst <= 1e-6, buf);
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SFMA downlink pairing, power allocation and Monte Carlo sweeps"};
  app.require_subcommand(1);

  std::string config_path, output;
  std::size_t threads = 0;
  auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo sweep and write the summary CSV");
  sweep->add_option("--config", config_path, "scenario file")->required();
  sweep->add_option("--output", output, "override the output path");
  sweep->add_option("--threads", threads, "worker threads (0: config value or all cores)");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "solve one seeded instance");
  solve->add_option("--users", sa.users, "user count (even)");
  solve->add_option("--seed", sa.seed, "drop seed");
  solve->add_option("--p-max-dbw", sa.p_max_dbw, "BS power budget in dBW");
  solve->add_option("--config", sa.config_path, "scenario file for the remaining parameters");
  solve->add_option("--alpha", sa.alpha, "gap weight");
  solve->add_option("--delta-max", sa.delta_max, "max temporal gap");
  solve->add_option("--min-rate", sa.min_rate, "per-user minimum rate");
  solve->add_option("--frame-span", sa.frame_span, "frame indices drawn from [0, span)");
  solve->add_option("--rho-constant", sa.rho_constant, "use a constant rho instead of the table");

  std::string mse_csv, table_out;
  auto* calibrate = app.add_subcommand("calibrate", "build a rho table from measured distortion");
  calibrate->add_option("--mse-csv", mse_csv, "rows group_power_dbw,snr_db,noise_w,mse")->required();
  calibrate->add_option("--output", table_out, "table path, '-' for stdout");

  std::uint64_t verify_seed = 1;
  std::size_t verify_instances = 50;
  auto* verify = app.add_subcommand("verify", "check the solvers against brute-force oracles");
  verify->add_option("--seed", verify_seed);
  verify->add_option("--instances", verify_instances);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sweep) return run_sweep_cmd(config_path, output, threads);
    if (*solve) return run_solve_cmd(sa);
    if (*calibrate) return run_calibrate_cmd(mse_csv, table_out);
    if (*verify) return run_verify_cmd(verify_seed, verify_instances);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

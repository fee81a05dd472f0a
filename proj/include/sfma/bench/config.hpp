#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfma/baselines.hpp"
#include "sfma/channel.hpp"
#include "sfma/interference.hpp"

#ifndef SFMA_DATA_DIR
#define SFMA_DATA_DIR "data"
#endif

namespace sfma::bench {

/// Raised for malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string default_rho_table_path() { return std::string(SFMA_DATA_DIR) + "/rho_default.csv"; }

/// How to build an interference profile.
struct RhoSpec {
  enum class Kind { constant, table, parametric };
  Kind kind = Kind::table;
  double constant_value = 1.0;
  std::string table_path = "default";
  rate::LogisticRho logistic;

  rate::InterferenceProfile build() const {
    switch (kind) {
      case Kind::constant:
        return rate::InterferenceProfile::constant(constant_value);
      case Kind::table:
        return rate::InterferenceProfile::table(
            rate::load_rho_table(table_path == "default" ? default_rho_table_path() : table_path));
      case Kind::parametric:
        return rate::InterferenceProfile::parametric(logistic);
    }
    throw ConfigError("unknown rho profile kind");
  }
};

struct ScenarioConfig {
  std::vector<std::size_t> user_counts{10, 20, 30, 40, 50, 60};
  std::vector<double> p_max_dbw{30.0, 35.0, 40.0, 45.0, 50.0};
  double alpha = 0.1;
  std::int64_t delta_max = 4;
  double min_rate = 1.0;
  RhoSpec rho;
  std::optional<RhoSpec> rho_second;  // distinct rho_12 when set
  double fnoma_eta = 0.8;
  std::size_t drops = 100;
  std::uint64_t root_seed = 1;
  std::string output = "sweep.csv";
  std::string records_output;  // per-drop CSV, empty to skip
  double area_side_m = 500.0;
  channel::ChannelOptions channel;
  std::int64_t frame_span = 6;  // frame indices drawn from [0, frame_span)
  std::size_t threads = 0;      // 0: hardware concurrency

  void validate() const {
    if (user_counts.empty()) throw ConfigError("users: at least one user count is required");
    for (std::size_t m : user_counts)
      if (m < 2 || m % 2 != 0) throw ConfigError("users: every count must be even and >= 2");
    if (p_max_dbw.empty()) throw ConfigError("p_max_dbw: at least one value is required");
    if (drops < 1) throw ConfigError("drops must be >= 1");
    if (delta_max < 0) throw ConfigError("delta_max must be >= 0");
    if (!(alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
    if (!(min_rate >= 0.0)) throw ConfigError("min_rate must be >= 0");
    if (!(fnoma_eta > 0.0 && fnoma_eta < 1.0)) throw ConfigError("fnoma_eta must lie in (0, 1)");
    if (!(area_side_m > 0.0)) throw ConfigError("area_side_m must be > 0");
    if (!(channel.shadow_sigma_db >= 0.0)) throw ConfigError("shadow_sigma_db must be >= 0");
    if (frame_span < 1) throw ConfigError("frame_span must be >= 1");
  }

  rate::InterferencePair profiles() const {
    try {
      rate::InterferenceProfile first = rho.build();
      if (!rho_second) return rate::InterferencePair::shared(first);
      return {first, rho_second->build()};
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("rho profile: ") + e.what());
    }
  }
};

// ---------------------------------------------------------------------------
// Flat "key = value" format. '#' starts a comment; lists are comma separated.
//
//   users            = 10, 20, 30          even counts
//   p_max_dbw        = 30, 40              BS budgets in dBW
//   alpha            = 0.1                 rate-per-frame weight of the gap
//   delta_max        = 4                   max temporal gap (frames)
//   min_rate         = 1                   bits/s/Hz per user
//   rho_profile      = table | constant | parametric
//   rho_table        = default | <path>    relative to the config file
//   rho_constant     = 0.3
//   rho_logistic     = rho_max, a, b, c, p_ref_w
//   rho_second_*     = same keys for a distinct rho_12 profile
//   fnoma_eta        = 0.8
//   drops            = 500
//   seed             = 1
//   output           = sweep.csv
//   records_output   = drops.csv
//   area_side_m      = 500
//   shadow_sigma_db  = 4
//   noise_dbw        = -104
//   rayleigh_fading  = false
//   frame_span       = 6
//   threads          = 0

namespace detail {

inline std::string trim(const std::string& s) { return rate::detail::trim(s); }

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(v);
  while (std::getline(is, item, ',')) out.push_back(trim(item));
  return out;
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    return rate::detail::parse_double(v, key);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

inline std::int64_t to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + v + "' as an integer");
  }
}

inline std::uint64_t to_uint(const std::string& key, const std::string& v) {
  const std::int64_t x = to_int(key, v);
  if (x < 0) throw ConfigError(key + ": must be non-negative");
  return static_cast<std::uint64_t>(x);
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

inline void apply_rho_key(RhoSpec& spec, const std::string& suffix, const std::string& key,
                          const std::string& value, const std::filesystem::path& base_dir) {
  if (suffix == "profile") {
    if (value == "constant") spec.kind = RhoSpec::Kind::constant;
    else if (value == "table") spec.kind = RhoSpec::Kind::table;
    else if (value == "parametric") spec.kind = RhoSpec::Kind::parametric;
    else throw ConfigError(key + ": expected constant, table or parametric");
  } else if (suffix == "table") {
    if (value == "default") spec.table_path = value;
    else {
      std::filesystem::path p(value);
      spec.table_path = (p.is_absolute() ? p : base_dir / p).string();
    }
  } else if (suffix == "constant") {
    spec.constant_value = to_double(key, value);
  } else if (suffix == "logistic") {
    const auto items = split_list(value);
    if (items.size() != 5) throw ConfigError(key + ": expected rho_max, a, b, c, p_ref_w");
    spec.logistic = {to_double(key, items[0]), to_double(key, items[1]), to_double(key, items[2]),
                     to_double(key, items[3]), to_double(key, items[4])};
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

}  // namespace detail

inline ScenarioConfig parse_config(std::istream& in, const std::string& source = "<config>",
                                   const std::filesystem::path& base_dir = {}) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(where + "empty key or value");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");

    try {
      if (key == "users") {
        cfg.user_counts.clear();
        for (const auto& item : detail::split_list(value))
          cfg.user_counts.push_back(static_cast<std::size_t>(detail::to_uint(key, item)));
      } else if (key == "p_max_dbw") {
        cfg.p_max_dbw.clear();
        for (const auto& item : detail::split_list(value)) cfg.p_max_dbw.push_back(detail::to_double(key, item));
      } else if (key == "alpha") {
        cfg.alpha = detail::to_double(key, value);
      } else if (key == "delta_max") {
        cfg.delta_max = detail::to_int(key, value);
      } else if (key == "min_rate") {
        cfg.min_rate = detail::to_double(key, value);
      } else if (key.rfind("rho_second_", 0) == 0) {
        if (!cfg.rho_second) cfg.rho_second = RhoSpec{};
        detail::apply_rho_key(*cfg.rho_second, key.substr(11), key, value, base_dir);
      } else if (key.rfind("rho_", 0) == 0) {
        detail::apply_rho_key(cfg.rho, key.substr(4), key, value, base_dir);
      } else if (key == "fnoma_eta") {
        cfg.fnoma_eta = detail::to_double(key, value);
      } else if (key == "drops") {
        cfg.drops = static_cast<std::size_t>(detail::to_uint(key, value));
      } else if (key == "seed") {
        cfg.root_seed = detail::to_uint(key, value);
      } else if (key == "output") {
        cfg.output = value;
      } else if (key == "records_output") {
        cfg.records_output = value;
      } else if (key == "area_side_m") {
        cfg.area_side_m = detail::to_double(key, value);
      } else if (key == "shadow_sigma_db") {
        cfg.channel.shadow_sigma_db = detail::to_double(key, value);
      } else if (key == "noise_dbw") {
        cfg.channel.noise_dbw = detail::to_double(key, value);
      } else if (key == "rayleigh_fading") {
        cfg.channel.rayleigh_fading = detail::to_bool(key, value);
      } else if (key == "frame_span") {
        cfg.frame_span = detail::to_int(key, value);
      } else if (key == "threads") {
        cfg.threads = static_cast<std::size_t>(detail::to_uint(key, value));
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path, std::filesystem::path(path).parent_path());
}

}  // namespace sfma::bench

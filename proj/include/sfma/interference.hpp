#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sfma::rate {

/// Receiver side of one downlink: linear power gain |h|^2 and noise power (W).
struct Link {
  double gain = 1.0;
  double noise_w = 1.0;
};

inline void validate(const Link& link) {
  if (!(link.gain > 0.0) || !std::isfinite(link.gain))
    throw std::invalid_argument("link gain must be positive and finite");
  if (!(link.noise_w > 0.0) || !std::isfinite(link.noise_w))
    throw std::invalid_argument("link noise power must be positive and finite");
}

/// Received SNR in dB when the group power is split evenly between the two
/// members. This is the coordinate the interference profiles are keyed on.
inline double equal_split_snr_db(double group_power_w, const Link& link) noexcept {
  const double p = 0.5 * group_power_w * link.gain;
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(p / link.noise_w);
}

// ---------------------------------------------------------------------------
// Table profile: rho sampled on a (group power dBW, SNR dB) grid.

struct RhoTable {
  std::vector<double> power_axis_dbw;  // rows
  std::vector<double> snr_axis_db;     // columns
  std::vector<double> values;          // row-major, rows x columns

  std::size_t rows() const noexcept { return power_axis_dbw.size(); }
  std::size_t cols() const noexcept { return snr_axis_db.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }

  void validate() const {
    if (power_axis_dbw.empty() || snr_axis_db.empty())
      throw std::invalid_argument("rho table: axes must be non-empty");
    if (values.size() != rows() * cols())
      throw std::invalid_argument("rho table: body is not rectangular");
    auto strictly_increasing = [](const std::vector<double>& a) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a[i])) return false;
        if (i > 0 && !(a[i] > a[i - 1])) return false;
      }
      return true;
    };
    if (!strictly_increasing(power_axis_dbw))
      throw std::invalid_argument("rho table: power axis must be strictly increasing");
    if (!strictly_increasing(snr_axis_db))
      throw std::invalid_argument("rho table: SNR axis must be strictly increasing");
    for (double v : values)
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("rho table: values must lie in [0, 1]");
  }

  /// Bilinear interpolation, clamped to the grid edges.
  double interpolate(double power_dbw, double snr_db) const {
    auto locate = [](const std::vector<double>& axis, double x, std::size_t& i, double& t) {
      if (axis.size() == 1 || !(x > axis.front())) {
        i = 0;
        t = 0.0;
        return;
      }
      if (x >= axis.back()) {
        i = axis.size() - 2;
        t = 1.0;
        return;
      }
      auto it = std::upper_bound(axis.begin(), axis.end(), x);
      i = static_cast<std::size_t>(it - axis.begin()) - 1;
      t = (x - axis[i]) / (axis[i + 1] - axis[i]);
    };
    std::size_t r = 0, c = 0;
    double tr = 0.0, tc = 0.0;
    locate(power_axis_dbw, power_dbw, r, tr);
    locate(snr_axis_db, snr_db, c, tc);
    const std::size_t r1 = rows() == 1 ? r : r + 1;
    const std::size_t c1 = cols() == 1 ? c : c + 1;
    const double v00 = at(r, c), v01 = at(r, c1), v10 = at(r1, c), v11 = at(r1, c1);
    const double v0 = v00 + tc * (v01 - v00);
    const double v1 = v10 + tc * (v11 - v10);
    return v0 + tr * (v1 - v0);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s, const std::string& where) {
  if (s.empty()) throw std::runtime_error(where + ": empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw std::runtime_error(where + ": cannot parse '" + s + "' as a number");
  return v;
}

}  // namespace detail

/// Parses the rho-table CSV layout: the first row holds the SNR axis (dB)
/// after one corner cell, every following row is a group power (dBW)
/// followed by one rho value per SNR column. Blank lines and lines starting
/// with '#' are ignored.
inline RhoTable parse_rho_table(std::istream& in, const std::string& source = "<stream>") {
  RhoTable t;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto cells = detail::split_csv_line(trimmed);
    const std::string where = source + ":" + std::to_string(lineno);
    if (!header_seen) {
      if (cells.size() < 2) throw std::runtime_error(where + ": header needs at least one SNR value");
      for (std::size_t i = 1; i < cells.size(); ++i)
        t.snr_axis_db.push_back(detail::parse_double(cells[i], where));
      header_seen = true;
      continue;
    }
    if (cells.size() != t.snr_axis_db.size() + 1)
      throw std::runtime_error(where + ": expected " + std::to_string(t.snr_axis_db.size() + 1) +
                               " fields, found " + std::to_string(cells.size()));
    t.power_axis_dbw.push_back(detail::parse_double(cells[0], where));
    for (std::size_t i = 1; i < cells.size(); ++i)
      t.values.push_back(detail::parse_double(cells[i], where));
  }
  if (!header_seen) throw std::runtime_error(source + ": empty rho table");
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
  return t;
}

inline RhoTable load_rho_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rho table '" + path + "'");
  return parse_rho_table(in, path);
}

inline void write_rho_table(const RhoTable& t, std::ostream& out) {
  t.validate();
  out << std::setprecision(10);
  out << "power_dbw\\snr_db";
  for (double s : t.snr_axis_db) out << ',' << s;
  out << '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    out << t.power_axis_dbw[r];
    for (std::size_t c = 0; c < t.cols(); ++c) out << ',' << t.at(r, c);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Parametric profile: rho = rho_max / (1 + exp(a (snr_db - b) + c 10 log10(p / p_ref))).

struct LogisticRho {
  double rho_max = 0.95;
  double snr_slope_per_db = 0.25;  // a
  double snr_midpoint_db = 5.0;    // b
  double power_slope_per_db = 0.02;  // c
  double reference_power_w = 100.0;  // p_ref

  void validate() const {
    if (!(rho_max >= 0.0 && rho_max <= 1.0))
      throw std::invalid_argument("logistic rho: rho_max must lie in [0, 1]");
    if (!(reference_power_w > 0.0))
      throw std::invalid_argument("logistic rho: reference power must be positive");
    if (!std::isfinite(snr_slope_per_db) || !std::isfinite(snr_midpoint_db) ||
        !std::isfinite(power_slope_per_db))
      throw std::invalid_argument("logistic rho: coefficients must be finite");
  }
};

/// Semantic interference factor as a function of the group power and the
/// receiver's link. Every evaluation lies in [0, 1].
class InterferenceProfile {
 public:
  enum class Kind { constant, table, parametric };

  InterferenceProfile() : InterferenceProfile(constant(1.0)) {}

  static InterferenceProfile constant(double value) {
    if (!(value >= 0.0 && value <= 1.0))
      throw std::invalid_argument("constant rho must lie in [0, 1]");
    return InterferenceProfile(Constant{value});
  }
  static InterferenceProfile table(RhoTable t) {
    t.validate();
    return InterferenceProfile(std::make_shared<const RhoTable>(std::move(t)));
  }
  static InterferenceProfile parametric(const LogisticRho& p) {
    p.validate();
    return InterferenceProfile(p);
  }

  Kind kind() const noexcept { return static_cast<Kind>(model_.index()); }
  double constant_value() const { return std::get<Constant>(model_).value; }
  const RhoTable& table_data() const { return *std::get<TablePtr>(model_); }
  const LogisticRho& parametric_params() const { return std::get<LogisticRho>(model_); }

  double operator()(double group_power_w, const Link& link) const {
    double v = 0.0;
    switch (kind()) {
      case Kind::constant:
        v = constant_value();
        break;
      case Kind::table: {
        const double pdbw = group_power_w > 0.0
                                ? 10.0 * std::log10(group_power_w)
                                : -std::numeric_limits<double>::infinity();
        v = table_data().interpolate(pdbw, equal_split_snr_db(group_power_w, link));
        break;
      }
      case Kind::parametric:
        v = parametric_params().rho_max * logistic(group_power_w, link);
        break;
    }
    return std::clamp(v, 0.0, 1.0);
  }

  /// d rho / d group_power, per watt.
  double derivative(double group_power_w, const Link& link) const {
    switch (kind()) {
      case Kind::constant:
        return 0.0;
      case Kind::parametric: {
        const auto& m = parametric_params();
        const double p = std::max(group_power_w, kPowerFloor);
        const double s = logistic(p, link);
        const double dz_dp = (m.snr_slope_per_db + m.power_slope_per_db) * 10.0 / (p * std::log(10.0));
        return -m.rho_max * s * (1.0 - s) * dz_dp;
      }
      case Kind::table: {
        const double p = group_power_w;
        const double h = std::max(1e-9, 1e-4 * p);
        if (p - h > 0.0) return ((*this)(p + h, link) - (*this)(p - h, link)) / (2.0 * h);
        return ((*this)(p + h, link) - (*this)(p, link)) / h;
      }
    }
    return 0.0;
  }

 private:
  struct Constant {
    double value;
  };
  using TablePtr = std::shared_ptr<const RhoTable>;
  using Model = std::variant<Constant, TablePtr, LogisticRho>;

  static constexpr double kPowerFloor = 1e-300;

  explicit InterferenceProfile(Model m) : model_(std::move(m)) {}

  // 1 / (1 + e^z) with z the logistic exponent.
  double logistic(double group_power_w, const Link& link) const {
    const auto& m = parametric_params();
    const double p = std::max(group_power_w, kPowerFloor);
    const double snr = equal_split_snr_db(p, link);
    const double z = m.snr_slope_per_db * (snr - m.snr_midpoint_db) +
                     m.power_slope_per_db * 10.0 * std::log10(p / m.reference_power_w);
    if (z > 700.0) return 0.0;
    return 1.0 / (1.0 + std::exp(z));
  }

  Model model_;
};

/// rho for the two receivers of a group: `on_first` scales user 2's power in
/// user 1's SINR (rho_21), `on_second` scales user 1's power in user 2's
/// SINR (rho_12).
struct InterferencePair {
  InterferenceProfile on_first;
  InterferenceProfile on_second;

  static InterferencePair shared(const InterferenceProfile& p) { return {p, p}; }
};

inline double rho(const InterferenceProfile& profile, double group_power_w, const Link& link) {
  if (group_power_w < 0.0) throw std::invalid_argument("rho: group power must be non-negative");
  return profile(group_power_w, link);
}

inline double rho_derivative(const InterferenceProfile& profile, double group_power_w,
                             const Link& link) {
  return profile.derivative(group_power_w, link);
}

}  // namespace sfma::rate

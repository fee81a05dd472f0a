#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfma/bench/sweep.hpp"
#include "sfma/interference.hpp"

namespace sfma::bench {

inline constexpr const char* kSummaryHeader =
    "scheme,users,p_max_dbw,mean_sum_rate,std_sum_rate,drops,infeasible";
inline constexpr const char* kRecordHeader = "scheme,users,p_max_dbw,drop,seed,feasible,sum_rate";

inline std::string format_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline void write_csv(const RunReport& report, std::ostream& out) {
  out << kSummaryHeader << '\n';
  for (const auto& c : report.cells)
    out << c.scheme << ',' << c.users << ',' << format_g9(c.p_max_dbw) << ',' << format_g9(c.mean_sum_rate) << ','
        << format_g9(c.std_sum_rate) << ',' << c.drops << ',' << c.infeasible << '\n';
}

inline void write_records_csv(const RunReport& report, std::ostream& out) {
  out << kRecordHeader << '\n';
  for (const auto& r : report.records)
    out << r.scheme << ',' << r.users << ',' << format_g9(r.p_max_dbw) << ',' << r.drop << ',' << r.seed << ','
        << (r.feasible ? 1 : 0) << ',' << format_g9(r.sum_rate) << '\n';
}

namespace detail {

template <class Writer>
void write_file(const std::string& path, Writer&& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  w(out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline std::size_t parse_count(const std::string& s, const std::string& where) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size() || s.empty() || s[0] == '-')
    throw std::runtime_error(where + ": expected a count, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline void emit_csv(const RunReport& report, const std::string& path) {
  detail::write_file(path, [&](std::ostream& o) { write_csv(report, o); });
}

inline void emit_records_csv(const RunReport& report, const std::string& path) {
  detail::write_file(path, [&](std::ostream& o) { write_records_csv(report, o); });
}

/// Reads back the summary format written by write_csv.
inline std::vector<CellSummary> parse_csv(std::istream& in, const std::string& source = "<csv>") {
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader)
    throw std::runtime_error(source + ":1: unexpected header");
  std::vector<CellSummary> cells;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto f = rate::detail::split_csv_line(line);
    if (f.size() != 7) throw std::runtime_error(where + ": expected 7 fields");
    CellSummary c;
    c.scheme = f[0];
    c.users = detail::parse_count(f[1], where);
    c.p_max_dbw = rate::detail::parse_double(f[2], where);
    c.mean_sum_rate = rate::detail::parse_double(f[3], where);
    c.std_sum_rate = rate::detail::parse_double(f[4], where);
    c.drops = detail::parse_count(f[5], where);
    c.infeasible = detail::parse_count(f[6], where);
    cells.push_back(c);
  }
  return cells;
}

}  // namespace sfma::bench

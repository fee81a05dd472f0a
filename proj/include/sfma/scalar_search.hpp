#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace sfma::search {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [a, b], stopping
/// once the bracket is narrower than `width`.
template <class F>
Maximum golden_section_max(F&& f, double a, double b, double width, std::size_t max_iter = 400) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (std::size_t it = 0; it < max_iter && (b - a) > width; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

/// Grid scan followed by golden-section refinement around the best node, so
/// a few local bumps do not trap the search. Endpoints are always candidates.
template <class F>
Maximum scan_then_golden_max(F&& f, double a, double b, double width, std::size_t nodes = 64) {
  if (!(b > a)) return {a, f(a)};
  Maximum best{a, f(a)};
  std::size_t best_i = 0;
  const double step = (b - a) / static_cast<double>(nodes - 1);
  for (std::size_t i = 1; i < nodes; ++i) {
    const double x = i + 1 == nodes ? b : a + step * static_cast<double>(i);
    const double v = f(x);
    if (v > best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  const double lo = best_i == 0 ? a : a + step * static_cast<double>(best_i - 1);
  const double hi = best_i + 1 >= nodes ? b : a + step * static_cast<double>(best_i + 1);
  const Maximum refined = golden_section_max(f, lo, hi, width);
  return refined.value >= best.value ? refined : best;
}

/// Bisection for a sign change of g on [lo, hi]; requires g(lo) and g(hi)
/// of opposite sign (or zero). Returns the midpoint of the final bracket.
template <class G>
double bisect(G&& g, double lo, double hi, double rel_width = 1e-13, std::size_t max_iter = 200) {
  double g_lo = g(lo);
  for (std::size_t it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_width * std::fabs(mid)) break;
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sfma::search

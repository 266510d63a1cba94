#pragma once

// Independent reference computations for the tests. Nothing here calls the library's
// spectral machinery: everything works from closed forms and plain quadrature.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// 8-point Gauss-Legendre on `panels` equal panels of [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 64) {
  static constexpr std::array<double, 4> x = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                              0.9602898564975363};
  static constexpr std::array<double, 4> w = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                              0.1012285362903763};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (std::size_t i = 0; i < x.size(); ++i) total += w[i] * half * (f(mid - half * x[i]) + f(mid + half * x[i]));
  }
  return total;
}

/// Integral over [0, 2pi] of |f| given every sign change (or kink) of f in `breaks`.
inline double integrate_abs(const std::function<double(double)>& f, std::vector<double> breaks, int panels = 64) {
  breaks.push_back(0.0);
  breaks.push_back(two_pi);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) total += integrate([&](double t) { return std::abs(f(t)); }, breaks[i], breaks[i + 1], panels);
  }
  return total;
}

/// Locates all sign changes of f on [0, 2pi) by dense sampling and bisection.
inline std::vector<double> roots(const std::function<double(double)>& f, int samples = 1 << 14) {
  std::vector<double> r;
  const double h = two_pi / samples;
  for (int k = 0; k < samples; ++k) {
    double a = k * h;
    double b = a + h;
    double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) {
      r.push_back(a);
      continue;
    }
    if ((fa < 0.0) == (fb < 0.0) || fb == 0.0) continue;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    r.push_back(0.5 * (a + b));
  }
  return r;
}

/// Brute-force max |f| on a dense grid followed by golden refinement.
struct Peak {
  double value;
  double location;
};
inline Peak max_abs(const std::function<double(double)>& f, int samples = 1 << 18) {
  const double h = two_pi / samples;
  int best = 0;
  double bv = -1.0;
  for (int k = 0; k < samples; ++k) {
    const double v = std::abs(f(k * h));
    if (v > bv * (1.0 + 1e-13)) {
      bv = v;
      best = k;
    }
  }
  double lo = (best - 1) * h;
  double hi = (best + 1) * h;
  auto g = [&](double t) { return std::abs(f(t)); };
  const double phi = 0.6180339887498949;
  for (int it = 0; it < 120; ++it) {
    const double x1 = hi - phi * (hi - lo);
    const double x2 = lo + phi * (hi - lo);
    if (g(x1) < g(x2)) {
      lo = x1;
    } else {
      hi = x2;
    }
  }
  const double t = 0.5 * (lo + hi);
  return {std::max(g(t), bv), t};
}

/// Closed-form Poisson kernel sum_j q^|j| e^{ijt}.
inline double poisson(double q, double t) { return (1.0 - q * q) / (1.0 - 2.0 * q * std::cos(t) + q * q); }

/// Sawtooth (pi - t)/2 on (0, 2pi).
inline double sawtooth(double t) {
  double u = std::fmod(t, two_pi);
  if (u < 0.0) u += two_pi;
  return u == 0.0 ? 0.0 : 0.5 * (pi - u);
}

/// 8 sum_{k odd} (-1)^{(k-1)/2} c_k / k, summed directly (c_k = q^{ks} for Poisson).
inline double alternating_odd_series(const std::function<double(int)>& c, int terms = 200000) {
  double v = 0.0;
  for (int k = 1; k < 2 * terms; k += 2) v += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * c(k) / k;
  return 8.0 * v;
}

/// Plain trapezoid convolution of two analytic functions at one point, on `m` nodes.
inline double convolve_at(const std::function<double(double)>& f, const std::function<double(double)>& g, double tau,
                          int m = 4096) {
  const double h = two_pi / m;
  double acc = 0.0;
  for (int k = 0; k < m; ++k) acc += f(tau - k * h) * g(k * h);
  return acc * h;
}

}  // namespace oracle

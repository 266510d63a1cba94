#include "optconv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "optconv/error.hpp"

namespace optconv {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_below_nyquist(const GridFunction& f, int j, const char* what) {
  const auto nyquist = static_cast<long long>(f.size() / 2);
  if (std::llabs(static_cast<long long>(j)) >= nyquist) {
    throw RangeError(std::string(what) + ": index " + std::to_string(j) +
                     " outside the Nyquist range of a " + std::to_string(f.size()) + "-point grid");
  }
}

// Integral over [0, len] of |linear interpolant between fa and fb|.
double abs_linear_integral(double fa, double fb, double len) {
  if ((fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0)) {
    return 0.5 * len * (fa * fa + fb * fb) / (std::abs(fa) + std::abs(fb));
  }
  return 0.5 * len * (std::abs(fa) + std::abs(fb));
}

double golden_maximize(const GridFunction::Evaluator& g, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double g1 = g(x1);
  double g2 = g(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + kInvPhi * (hi - lo);
      g2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - kInvPhi * (hi - lo);
      g1 = g(x1);
    }
  }
  return g1 >= g2 ? x1 : x2;
}

}  // namespace

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circular_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

GridFunction::GridFunction(std::vector<double> samples, std::vector<double> jumps, Evaluator evaluator)
    : samples_(std::move(samples)), jumps_(std::move(jumps)), evaluator_(std::move(evaluator)) {
  if (samples_.size() < 16 || !is_power_of_two(samples_.size())) {
    throw ArgumentError("GridFunction: sample count must be a power of two >= 16, got " +
                        std::to_string(samples_.size()));
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw ArgumentError("GridFunction: non-finite sample");
  }
  for (double j : jumps_) {
    if (!(j >= 0.0 && j < kTwoPi)) throw ArgumentError("GridFunction: jump angle outside [0, 2pi)");
  }
  std::sort(jumps_.begin(), jumps_.end());
  if (std::adjacent_find(jumps_.begin(), jumps_.end()) != jumps_.end()) {
    throw ArgumentError("GridFunction: duplicate jump angle");
  }
}

GridFunction GridFunction::sample(const std::function<double(double)>& f, std::size_t n,
                                  std::vector<double> jumps, bool keep_evaluator) {
  std::vector<double> values(n);
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = f(h * static_cast<double>(k));
  return GridFunction(std::move(values), std::move(jumps), keep_evaluator ? Evaluator(f) : Evaluator{});
}

GridFunction GridFunction::scaled(double factor) const {
  std::vector<double> values(samples_);
  for (double& v : values) v *= factor;
  Evaluator e;
  if (evaluator_) e = [inner = evaluator_, factor](double t) { return factor * inner(t); };
  return GridFunction(std::move(values), jumps_, std::move(e));
}

TrigPoly::TrigPoly(int order) : a0_(0.0) {
  if (order < 0) throw ArgumentError("TrigPoly: negative order");
  a_.assign(static_cast<std::size_t>(order), 0.0);
  b_.assign(static_cast<std::size_t>(order), 0.0);
}

TrigPoly::TrigPoly(double a0, std::vector<double> a, std::vector<double> b)
    : a0_(a0), a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) throw ArgumentError("TrigPoly: cosine and sine lists differ in length");
}

TrigPoly TrigPoly::from_complex(std::span<const Complex> c) {
  if (c.empty()) return TrigPoly(0);
  const std::size_t d = c.size() - 1;
  std::vector<double> a(d), b(d);
  for (std::size_t j = 1; j <= d; ++j) {
    a[j - 1] = 2.0 * c[j].real();
    b[j - 1] = -2.0 * c[j].imag();
  }
  return TrigPoly(2.0 * c[0].real(), std::move(a), std::move(b));
}

Complex TrigPoly::coeff(int j) const {
  if (j == 0) return {0.5 * a0_, 0.0};
  const int m = std::abs(j);
  if (m > order()) return {0.0, 0.0};
  const Complex c{0.5 * a_[m - 1], -0.5 * b_[m - 1]};
  return j > 0 ? c : std::conj(c);
}

double TrigPoly::operator()(double t) const {
  double v = 0.5 * a0_;
  for (std::size_t j = 0; j < a_.size(); ++j) {
    const double x = static_cast<double>(j + 1) * t;
    v += a_[j] * std::cos(x) + b_[j] * std::sin(x);
  }
  return v;
}

std::vector<double> TrigPoly::sample(std::size_t n) const {
  if (static_cast<std::size_t>(order()) >= n / 2) {
    throw RangeError("TrigPoly::sample: order " + std::to_string(order()) + " not below Nyquist of " +
                     std::to_string(n) + " points");
  }
  if (order() <= 16) {
    std::vector<double> v(n);
    const double h = kTwoPi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = (*this)(h * static_cast<double>(k));
    return v;
  }
  std::vector<Complex> c(static_cast<std::size_t>(order()) + 1);
  for (int j = 0; j <= order(); ++j) c[static_cast<std::size_t>(j)] = coeff(j);
  return detail::synthesize(c, n);
}

GridFunction TrigPoly::to_grid(std::size_t n) const {
  return GridFunction(sample(n), {}, [p = *this](double t) { return p(t); });
}

Complex fourier_coeff(const GridFunction& f, int j) {
  require_below_nyquist(f, j, "fourier_coeff");
  const std::size_t n = f.size();
  const std::size_t m = static_cast<std::size_t>(std::llabs(static_cast<long long>(j)));
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    // exact integer reduction of j*k mod N keeps the phase accurate for large N
    const double phase = kTwoPi * static_cast<double>((m * k) % n) / static_cast<double>(n);
    re += f[k] * std::cos(phase);
    im -= f[k] * std::sin(phase);
  }
  const double inv = 1.0 / static_cast<double>(n);
  const Complex c{re * inv, im * inv};
  return j >= 0 ? c : std::conj(c);
}

std::vector<Complex> fourier_coeffs(const GridFunction& f, int max_order) {
  if (max_order < 0) throw RangeError("fourier_coeffs: negative order");
  require_below_nyquist(f, max_order, "fourier_coeffs");
  auto all = detail::forward_coeffs(f.samples());
  all.resize(static_cast<std::size_t>(max_order) + 1);
  return all;
}

double eval_trigpoly(const TrigPoly& p, double t) { return p(t); }

TrigPoly project(const GridFunction& f, int d) {
  if (d < 0) throw RangeError("project: negative order");
  require_below_nyquist(f, d, "project");
  const auto c = fourier_coeffs(f, d);
  return TrigPoly::from_complex(c);
}

double norm_L1(const GridFunction& f) {
  const std::size_t n = f.size();
  const double h = f.spacing();
  const auto& jumps = f.jumps();

  if (jumps.empty()) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += abs_linear_integral(f[k], f[(k + 1) % n], h);
    return total;
  }

  // Pieces between consecutive jumps, one-sided limits by linear extrapolation.
  const double eps = 1e-9 * h;
  double total = 0.0;
  const std::size_t m = jumps.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double left = jumps[i];
    const double right = (i + 1 < m) ? jumps[i + 1] : jumps[0] + kTwoPi;
    const auto first = static_cast<long long>(std::ceil((left + eps) / h));
    const auto last = static_cast<long long>(std::floor((right - eps) / h));
    if (last < first) continue;
    auto value = [&](long long u) {
      const auto idx = static_cast<std::size_t>(((u % static_cast<long long>(n)) + static_cast<long long>(n)) %
                                                static_cast<long long>(n));
      return f[idx];
    };
    const double t_first = h * static_cast<double>(first);
    const double t_last = h * static_cast<double>(last);
    double f_left = value(first);
    double f_right = value(last);
    if (last > first) {
      f_left += (value(first) - value(first + 1)) * (t_first - left) / h;
      f_right += (value(last) - value(last - 1)) * (right - t_last) / h;
    }
    total += abs_linear_integral(f_left, value(first), t_first - left);
    for (long long u = first; u < last; ++u) total += abs_linear_integral(value(u), value(u + 1), h);
    total += abs_linear_integral(value(last), f_right, right - t_last);
  }
  return total;
}

namespace {

// Refined (location, value) of the maximum of sign*f near grid index k.
std::pair<double, double> refine_peak(const GridFunction& f, std::size_t k, double sign) {
  const std::size_t n = f.size();
  const double h = f.spacing();
  const double t0 = f.node(k);
  const double ym = sign * f[(k + n - 1) % n];
  const double y0 = sign * f[k];
  const double yp = sign * f[(k + 1) % n];

  if (f.has_evaluator()) {
    const auto& eval = f.evaluator();
    auto g = [&](double t) { return sign * eval(t); };
    const double t = golden_maximize(g, t0 - h, t0 + h);
    const double v = g(t);
    const double v0 = g(t0);
    return v >= v0 ? std::pair{t, v} : std::pair{t0, v0};
  }
  const double denom = ym - 2.0 * y0 + yp;
  if (denom < 0.0) {
    const double offset = std::clamp(0.5 * (ym - yp) / denom, -1.0, 1.0);
    return {t0 + offset * h, y0 - 0.25 * (ym - yp) * offset};
  }
  return {t0, y0};
}

}  // namespace

Extremum norm_C(const GridFunction& f) {
  const std::size_t n = f.size();
  double top = f[0];
  double bottom = f[0];
  for (std::size_t k = 1; k < n; ++k) {
    top = std::max(top, f[k]);
    bottom = std::min(bottom, f[k]);
  }
  const bool positive = top >= -bottom * (1.0 - 1e-9);
  const double sign = positive ? 1.0 : -1.0;
  const double peak = positive ? top : -bottom;
  if (peak == 0.0) return {0.0, 0.0, 0.0};

  // Refine every grid peak that could tie with the highest one after refinement.
  std::vector<std::pair<double, double>> candidates;
  for (std::size_t k = 0; k < n; ++k) {
    const double y = sign * f[k];
    if (y < peak * (1.0 - 1e-6)) continue;
    if (y < sign * f[(k + n - 1) % n] || y < sign * f[(k + 1) % n]) continue;
    const auto [t, v] = refine_peak(f, k, sign);
    candidates.emplace_back(wrap_angle(t), v);
  }
  double best = candidates.front().second;
  for (const auto& c : candidates) best = std::max(best, c.second);
  // ties (relative 1e-12) go to the smallest angle
  double t_best = kTwoPi;
  for (const auto& [t, v] : candidates) {
    if (v >= best * (1.0 - 1e-12) && t < t_best) t_best = t;
  }
  return {std::abs(best), t_best, sign * best};
}

}  // namespace optconv

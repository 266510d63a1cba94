#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace optconv {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Complex = std::complex<double>;

/// Reduces an angle to [0, 2pi).
double wrap_angle(double t);

/// Distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

/**
 * A 2pi-periodic real function sampled at t_k = 2*pi*k/N.
 *
 * N is a power of two and at least 16. Jump annotations mark points where the
 * represented function is discontinuous; quadrature splits there. An optional
 * evaluator gives exact pointwise values (used to refine extrema off the grid).
 */
class GridFunction {
 public:
  using Evaluator = std::function<double(double)>;

  explicit GridFunction(std::vector<double> samples, std::vector<double> jumps = {},
                        Evaluator evaluator = {});

  /// Samples `f` on an N-point grid. With `keep_evaluator`, `f` is retained for refinement.
  static GridFunction sample(const std::function<double(double)>& f, std::size_t n,
                             std::vector<double> jumps = {}, bool keep_evaluator = false);

  std::size_t size() const { return samples_.size(); }
  std::span<const double> samples() const { return samples_; }
  double operator[](std::size_t k) const { return samples_[k]; }
  const std::vector<double>& jumps() const { return jumps_; }

  double spacing() const { return kTwoPi / static_cast<double>(samples_.size()); }
  double node(std::size_t k) const { return spacing() * static_cast<double>(k); }

  bool has_evaluator() const { return static_cast<bool>(evaluator_); }
  const Evaluator& evaluator() const { return evaluator_; }

  /// Pointwise scaling; jumps and a scaled evaluator are carried along.
  GridFunction scaled(double factor) const;

 private:
  std::vector<double> samples_;
  std::vector<double> jumps_;
  Evaluator evaluator_;
};

/**
 * Trigonometric polynomial of order <= d:
 *   p(t) = a0/2 + sum_{j=1..d} (a_j cos jt + b_j sin jt).
 * The constant term is a0/2, so the mean value of p is a0/2.
 */
class TrigPoly {
 public:
  /// The zero polynomial of the given order.
  explicit TrigPoly(int order = 0);
  TrigPoly(double a0, std::vector<double> a, std::vector<double> b);

  /// Builds a polynomial from complex coefficients c_0..c_d (c_{-j} = conj(c_j) implied).
  static TrigPoly from_complex(std::span<const Complex> c);

  int order() const { return static_cast<int>(a_.size()); }
  double a0() const { return a0_; }
  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }

  /// c_j = (a_j - i b_j)/2 for j >= 0, conjugate for j < 0, zero beyond the order.
  Complex coeff(int j) const;
  double operator()(double t) const;

  /// Values on the N-point grid (FFT synthesis for large orders).
  std::vector<double> sample(std::size_t n) const;
  GridFunction to_grid(std::size_t n) const;

 private:
  double a0_;
  std::vector<double> a_;
  std::vector<double> b_;
};

/// c_j of a grid function by the periodic rectangle rule. Requires |j| < N/2.
Complex fourier_coeff(const GridFunction& f, int j);

/// c_0..c_max_order by FFT. Requires max_order < N/2.
std::vector<Complex> fourier_coeffs(const GridFunction& f, int max_order);

double eval_trigpoly(const TrigPoly& p, double t);

/// Order-d Fourier partial sum. Requires d < N/2.
TrigPoly project(const GridFunction& f, int d);

/// Integral of |f| over one period: split at jumps and linear-interpolated zero crossings,
/// trapezoid rule on each smooth piece.
double norm_L1(const GridFunction& f);

struct Extremum {
  double value = 0.0;    ///< max |f|
  double argmax = 0.0;   ///< location in [0, 2pi)
  double signed_value = 0.0;
};

/**
 * max |f| with its location.
 *
 * When the positive maximum and the negative minimum tie in magnitude (relative
 * 1e-9) the positive one wins; among equal grid values the smallest angle wins.
 * Grid maxima are refined by a parabola through the neighbouring samples, or by
 * golden-section search on the evaluator when one is attached.
 */
Extremum norm_C(const GridFunction& f);

}  // namespace optconv

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optconv/spectral.hpp"

namespace optconv {

enum class KernelFamily { poisson, gauss, bernoulli };

/**
 * Analytic 2pi-periodic kernel with closed-form Fourier coefficients.
 *
 *   poisson(q):        c_j = q^|j|,            0 < q < 1
 *   gauss(tau):        c_j = exp(-tau j^2),    tau > 0
 *   bernoulli(r, beta): c_0 = beta, c_j = (-i)^r / (2 j^r)  (j != 0), r >= 1, beta != 0
 *
 * bernoulli(r, beta) is beta + B_r with B_r(t) = sum_{k>=1} cos(kt - r pi/2) / k^r;
 * r = 1 is the sawtooth (pi - t)/2 with a jump at 0.
 */
class Kernel {
 public:
  static Kernel poisson(double q);
  static Kernel gauss(double tau);
  static Kernel bernoulli(int r, double beta = 1.0 / kTwoPi);

  /// Parses `poisson:q=0.5`, `gauss:tau=0.1`, `bernoulli:r=1,beta=0.159155`.
  static Kernel parse(std::string_view spec);

  KernelFamily family() const { return family_; }
  double q() const { return param_; }
  double tau() const { return param_; }
  int r() const { return order_; }
  double beta() const { return param_; }

  /// Canonical mini-syntax form (round-trips through parse).
  std::string to_string() const;

  Complex coeff(int j) const;
  /// |c_j|, cheaper than coeff() for tail estimates.
  double coeff_abs(int j) const;
  /// Pointwise value; at a jump, the mean of the one-sided limits.
  double operator()(double t) const;
  std::vector<double> jumps() const;

  /// Smallest order J with |c_j| <= rel_tol * |c_0| for all j >= J, if finite.
  std::optional<int> effective_order(double rel_tol) const;

  bool operator==(const Kernel&) const = default;

 private:
  Kernel(KernelFamily f, double param, int order) : family_(f), param_(param), order_(order) {}
  KernelFamily family_;
  double param_;
  int order_;
};

Complex kernel_coeff(const Kernel& k, int j);
double kernel_eval(const Kernel& k, double t);

/// Mean-zero periodic Bernoulli function B_r(t) = sum_{k>=1} cos(kt - r pi/2)/k^r for r >= 0
/// (B_0 = -1/2 off the origin). For r = 1 the value at t = 0 is 0, the mean of the limits.
double bernoulli_function(int r, double t);

/// The square wave sign(sin st) on an N-point grid, jumps at m*pi/s. Requires grid >= 4s.
GridFunction phi_s(int s, std::size_t grid);

/// c_j of sign(sin st): -2i/(pi k) at j = ks for odd k > 0, conjugate for j < 0, else 0.
Complex phi_s_coeff(int s, int j);

/// Relative threshold at which analytic series are truncated.
inline constexpr double kTailThreshold = 1e-14;

}  // namespace optconv

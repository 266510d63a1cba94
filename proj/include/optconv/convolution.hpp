#pragma once

#include <variant>
#include <vector>

#include "optconv/kernels.hpp"
#include "optconv/spectral.hpp"

namespace optconv {

using Operand = std::variant<Kernel, GridFunction>;

/// Ordered factors of an n-fold convolution x_1 * ... * x_n.
struct ConvSpec {
  std::vector<Operand> factors;
};

/**
 * Order-`out_order` partial sum of the convolution, from
 *   c_j(g_1 * ... * g_n) = (2 pi)^{n-1} c_j(g_1) ... c_j(g_n).
 * Grid operands contribute rectangle-rule coefficients and must share one grid.
 */
TrigPoly convolve_spectral(const ConvSpec& spec, int out_order);

/// Direct O(N^2) trapezoid discretisation of int f(tau - t) g(t) dt at every grid node.
/// Test oracle only; N is capped at kDirectConvolutionMaxGrid.
GridFunction convolve_direct(const GridFunction& f, const GridFunction& g);

inline constexpr std::size_t kDirectConvolutionMaxGrid = 4096;

/// c_j(K_1 * ... * K_n) from the analytic coefficient oracles.
Complex kernel_conv_coeff(const std::vector<Kernel>& kernels, int j);

/**
 * Real periodic function given by a finite list of Fourier terms,
 *   f(t) = mean + 2 Re sum_k c_k e^{i j_k t}.
 */
class SeriesFunction {
 public:
  struct Term {
    int j;
    Complex c;
  };
  SeriesFunction(double mean, std::vector<Term> terms) : mean_(mean), terms_(std::move(terms)) {}

  double operator()(double t) const;
  double mean() const { return mean_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  double mean_;
  std::vector<Term> terms_;
};

/**
 * The kernel convolution K_1 * ... * K_n as a pointwise-evaluable function.
 *
 * Chains with at least one poisson or gauss factor are summed from their
 * coefficient series (truncated at kTailThreshold). Chains made only of
 * Bernoulli factors reduce to A * B_R + C with R = sum r_l, which is evaluated
 * in closed form.
 */
class KernelChain {
 public:
  explicit KernelChain(std::vector<Kernel> kernels);

  const std::vector<Kernel>& kernels() const { return kernels_; }
  std::size_t size() const { return kernels_.size(); }

  Complex coeff(int j) const { return kernel_conv_coeff(kernels_, j); }
  double coeff_abs(int j) const;

  /// d-th derivative of the chain (d = -1 gives the mean-free antiderivative), d in [-1, 2].
  double derivative(double t, int d) const;
  double operator()(double t) const { return derivative(t, 0); }

  /// True when the series path is used (a smooth factor is present).
  bool has_smooth_factor() const { return smooth_; }
  /// Total Bernoulli order R of the chain.
  int bernoulli_order() const { return bernoulli_order_; }
  std::vector<double> jumps() const;

  /// Samples of the chain on an N-point grid with its jump annotations.
  GridFunction to_grid(std::size_t n) const;

  /// Truncated coefficient series of the d-th derivative restricted to indices j = k*stride,
  /// with c_j multiplied by `weight(j)`; used by the series paths.
  template <typename Weight>
  SeriesFunction series(int d, int stride, Weight weight, double mean) const;

 private:
  std::vector<Kernel> kernels_;
  bool smooth_ = false;
  int bernoulli_order_ = 0;
  double closed_scale_ = 0.0;
  double closed_mean_ = 0.0;
};

Complex ipow(Complex base, int e);

template <typename Weight>
SeriesFunction KernelChain::series(int d, int stride, Weight weight, double mean) const {
  std::vector<SeriesFunction::Term> terms;
  double magnitude = std::abs(mean);
  for (int j = stride; j < 50'000'000; j += stride) {
    const Complex w = weight(j);
    if (w == Complex{}) continue;
    const double bound = coeff_abs(j) * std::abs(w) * std::pow(static_cast<double>(j), d);
    if (bound < kTailThreshold * magnitude) break;
    magnitude += bound;
    const Complex c = coeff(j) * w * ipow(Complex{0.0, static_cast<double>(j)}, d);
    terms.push_back({j, c});
  }
  return SeriesFunction(mean, std::move(terms));
}

}  // namespace optconv

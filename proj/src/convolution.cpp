#include "optconv/convolution.hpp"

#include <cmath>
#include <string>

#include "optconv/error.hpp"

namespace optconv {
namespace {

std::size_t common_grid(const ConvSpec& spec) {
  std::size_t n = 0;
  for (const auto& op : spec.factors) {
    if (const auto* g = std::get_if<GridFunction>(&op)) {
      if (n != 0 && g->size() != n) throw ArgumentError("convolution: grid operands have different sizes");
      n = g->size();
    }
  }
  return n;
}

}  // namespace

Complex ipow(Complex base, int e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  Complex r{1.0, 0.0};
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

TrigPoly convolve_spectral(const ConvSpec& spec, int out_order) {
  if (spec.factors.empty()) throw ArgumentError("convolve_spectral: no factors");
  if (out_order < 0) throw RangeError("convolve_spectral: negative order");
  const std::size_t n = common_grid(spec);
  if (n != 0 && static_cast<std::size_t>(out_order) >= n / 2) {
    throw RangeError("convolve_spectral: order " + std::to_string(out_order) + " not below Nyquist");
  }

  std::vector<Complex> c(static_cast<std::size_t>(out_order) + 1,
                         Complex{std::pow(kTwoPi, static_cast<double>(spec.factors.size()) - 1.0), 0.0});
  for (const auto& op : spec.factors) {
    if (const auto* k = std::get_if<Kernel>(&op)) {
      for (int j = 0; j <= out_order; ++j) c[static_cast<std::size_t>(j)] *= k->coeff(j);
    } else {
      const auto g = fourier_coeffs(std::get<GridFunction>(op), out_order);
      for (std::size_t j = 0; j < c.size(); ++j) c[j] *= g[j];
    }
  }
  return TrigPoly::from_complex(c);
}

GridFunction convolve_direct(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size()) throw ArgumentError("convolve_direct: grids differ in size");
  const std::size_t n = f.size();
  if (n > kDirectConvolutionMaxGrid) {
    throw RangeError("convolve_direct: grid of " + std::to_string(n) + " points above the oracle cap");
  }
  const double h = f.spacing();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += f[(i + n - k) % n] * g[k];
    out[i] = h * acc;
  }
  return GridFunction(std::move(out));
}

Complex kernel_conv_coeff(const std::vector<Kernel>& kernels, int j) {
  if (kernels.empty()) throw ArgumentError("kernel_conv_coeff: empty kernel list");
  Complex c{std::pow(kTwoPi, static_cast<double>(kernels.size()) - 1.0), 0.0};
  for (const auto& k : kernels) c *= k.coeff(j);
  return c;
}

double SeriesFunction::operator()(double t) const {
  double v = 0.0;
  for (const auto& term : terms_) {
    const double x = static_cast<double>(term.j) * t;
    v += term.c.real() * std::cos(x) - term.c.imag() * std::sin(x);
  }
  return mean_ + 2.0 * v;
}

KernelChain::KernelChain(std::vector<Kernel> kernels) : kernels_(std::move(kernels)) {
  if (kernels_.empty()) throw ArgumentError("KernelChain: empty kernel list");
  int bernoulli_count = 0;
  double beta_product = 1.0;
  for (const auto& k : kernels_) {
    if (k.family() == KernelFamily::bernoulli) {
      bernoulli_order_ += k.r();
      beta_product *= k.beta();
      ++bernoulli_count;
    } else {
      smooth_ = true;
    }
  }
  if (!smooth_) {
    // for j != 0 the product of m Bernoulli coefficients is 2^{1-m} c_j(B_R)
    const double lead = std::pow(kTwoPi, static_cast<double>(kernels_.size()) - 1.0);
    closed_scale_ = lead * std::pow(2.0, 1.0 - bernoulli_count);
    closed_mean_ = lead * beta_product;
  }
}

double KernelChain::coeff_abs(int j) const {
  double c = std::pow(kTwoPi, static_cast<double>(kernels_.size()) - 1.0);
  for (const auto& k : kernels_) c *= k.coeff_abs(j);
  return c;
}

double KernelChain::derivative(double t, int d) const {
  if (d < -1 || d > 2) throw ArgumentError("KernelChain::derivative: order must be in [-1, 2]");
  if (!smooth_) {
    if (bernoulli_order_ - d < 0) throw ArgumentError("KernelChain::derivative: not a function at this order");
    return closed_scale_ * bernoulli_function(bernoulli_order_ - d, t) + (d == 0 ? closed_mean_ : 0.0);
  }
  const double mean = d == 0 ? coeff(0).real() : 0.0;
  // the truncation point depends only on magnitudes, so evaluation is a plain series sum
  double v = 0.0;
  double magnitude = std::abs(mean);
  for (int j = 1; j < 50'000'000; ++j) {
    const double bound = coeff_abs(j) * std::pow(static_cast<double>(j), d);
    if (bound < kTailThreshold * magnitude) break;
    magnitude += bound;
    const Complex c = coeff(j) * ipow(Complex{0.0, static_cast<double>(j)}, d);
    const double x = static_cast<double>(j) * t;
    v += c.real() * std::cos(x) - c.imag() * std::sin(x);
  }
  return mean + 2.0 * v;
}

std::vector<double> KernelChain::jumps() const {
  if (!smooth_ && bernoulli_order_ == 1) return {0.0};
  return {};
}

GridFunction KernelChain::to_grid(std::size_t n) const {
  if (!smooth_) {
    return GridFunction::sample([this](double t) { return derivative(t, 0); }, n, jumps());
  }
  const auto s = series(0, 1, [](int) { return Complex{1.0, 0.0}; }, coeff(0).real());
  if (!s.terms().empty() && static_cast<std::size_t>(s.terms().back().j) < n / 2) {
    std::vector<Complex> c(static_cast<std::size_t>(s.terms().back().j) + 1);
    c[0] = s.mean();
    for (const auto& term : s.terms()) c[static_cast<std::size_t>(term.j)] = term.c;
    return TrigPoly::from_complex(c).to_grid(n);
  }
  return GridFunction::sample(s, n, jumps());
}

}  // namespace optconv

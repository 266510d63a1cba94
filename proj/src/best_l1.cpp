#include "optconv/best_l1.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "optconv/error.hpp"

namespace optconv {
namespace {

SeriesFunction phi_series(const KernelChain& chain, int s, int d) {
  // c_j(K * phi_s) = 2 pi c_j(K) c_j(phi_s)
  return chain.series(d, s, [s](int j) { return kTwoPi * phi_s_coeff(s, j); }, 0.0);
}

// d-th derivative of K_conv * phi_s for a chain without smooth factors
double closed_conv_phi_derivative(const KernelChain& chain, int s, double tau, int d) {
  double v = 0.0;
  for (int m = 0; m < 2 * s; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    v += sign * chain.derivative(tau - kPi * m / s, d - 1);
  }
  return 2.0 * v;
}

}  // namespace

double conv_with_phi_by_antiderivative(const KernelChain& chain, int s, double tau) {
  double v = 0.0;
  for (int m = 0; m < 2 * s; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    v += sign * chain.derivative(tau - kPi * m / s, -1);
  }
  return 2.0 * v;
}

GridFunction conv_with_phi(const std::vector<Kernel>& kernels, int s, std::size_t grid) {
  if (s < 1) throw ArgumentError("conv_with_phi: s must be positive");
  if (grid < 4 * static_cast<std::size_t>(s)) throw RangeError("conv_with_phi: grid too coarse for s");
  KernelChain chain(kernels);
  if (chain.has_smooth_factor()) {
    return GridFunction::sample(phi_series(chain, s, 0), grid, {}, true);
  }
  auto f = [chain, s](double t) { return conv_with_phi_by_antiderivative(chain, s, t); };
  return GridFunction::sample(f, grid, {}, true);
}

ExtremalData find_sigma(const GridFunction& conv_phi, int s) {
  const auto ext = norm_C(conv_phi);
  if (ext.value == 0.0) throw DegenerateInputError("find_sigma: identically zero input");
  return ExtremalData{s, ext.argmax, conv_phi, ext.value};
}

ExtremalData extremal_data(const std::vector<Kernel>& kernels, int s, std::size_t grid) {
  KernelChain chain(kernels);
  auto ext = find_sigma(conv_with_phi(kernels, s, grid), s);

  // Newton polish on F'(sigma) = 0 needs F'' to be a function: a smooth factor or R >= 2.
  const bool twice_differentiable = chain.has_smooth_factor() || chain.bernoulli_order() >= 2;
  if (!twice_differentiable) return ext;

  std::function<double(double)> d1, d2;
  if (chain.has_smooth_factor()) {
    d1 = phi_series(chain, s, 1);
    d2 = phi_series(chain, s, 2);
  } else {
    d1 = [chain, s](double t) { return closed_conv_phi_derivative(chain, s, t, 1); };
    d2 = [chain, s](double t) { return closed_conv_phi_derivative(chain, s, t, 2); };
  }
  const auto& f = ext.conv_phi.evaluator();
  const double h = ext.conv_phi.spacing();
  const double start = ext.sigma;
  double t = start;
  for (int it = 0; it < 50; ++it) {
    const double curvature = d2(t);
    if (curvature == 0.0) break;
    const double step = d1(t) / curvature;
    t -= step;
    if (std::abs(t - start) > h) return ext;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(t))) break;
  }
  const double value = std::abs(f(t));
  if (value >= ext.max_abs * (1.0 - 1e-15)) {
    ext.sigma = wrap_angle(t);
    ext.max_abs = std::max(value, ext.max_abs);
  }
  return ext;
}

std::vector<double> node_set(double sigma, int s, const std::vector<double>& jumps) {
  if (s < 1) throw ArgumentError("node_set: s must be positive");
  for (double j : jumps) {
    if (circular_distance(j, 0.0) > kNodeJumpTolerance) {
      throw UnsupportedKernelError("node_set: only a discontinuity at 0 is supported");
    }
  }
  std::vector<double> nodes;
  int dropped = 0;
  for (int m = 0; m < 2 * s; ++m) {
    const double t = wrap_angle(sigma + kPi * m / s);
    bool at_jump = false;
    for (double j : jumps) at_jump = at_jump || circular_distance(t, j) <= kNodeJumpTolerance;
    if (at_jump) {
      ++dropped;
    } else {
      nodes.push_back(t);
    }
  }
  if (dropped > 1) throw UnsupportedKernelError("node_set: more than one node falls on a jump");
  return nodes;
}

Interpolant build_interpolant(const std::vector<Kernel>& kernels, const ExtremalData& ext) {
  KernelChain chain(kernels);
  const int s = ext.s;
  const auto nodes = node_set(ext.sigma, s, chain.jumps());

  // unknowns: a0, a_1..a_{s-1}, b_1..b_{s-1}; basis 1/2, cos jt, sin jt
  const auto rows = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Index cols = 2 * s - 1;
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double t = nodes[static_cast<std::size_t>(r)];
    design(r, 0) = 0.5;
    for (int j = 1; j < s; ++j) {
      design(r, j) = std::cos(j * t);
      design(r, s - 1 + j) = std::sin(j * t);
    }
    rhs(r) = chain(t);
  }
  const Eigen::VectorXd x = design.colPivHouseholderQr().solve(rhs);

  std::vector<double> a(static_cast<std::size_t>(s - 1)), b(static_cast<std::size_t>(s - 1));
  for (int j = 1; j < s; ++j) {
    a[static_cast<std::size_t>(j - 1)] = x(j);
    b[static_cast<std::size_t>(j - 1)] = x(s - 1 + j);
  }
  TrigPoly poly(x(0), std::move(a), std::move(b));

  double residual = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) residual = std::max(residual, std::abs(rhs(static_cast<Eigen::Index>(i)) - poly(nodes[i])));

  const GridFunction kernel_grid = chain.to_grid(ext.conv_phi.size());
  const double kernel_sup = norm_C(kernel_grid).value;
  const double tolerance = kInterpolationTolerance * (1.0 + kernel_sup);
  if (!(residual <= tolerance)) {
    std::ostringstream os;
    os.precision(6);
    os << "build_interpolant: node residual " << residual << " exceeds " << tolerance
       << " (sigma = " << ext.sigma << ", s = " << s << ")";
    throw InconsistentInterpolationError(os.str());
  }

  std::vector<double> diff(kernel_grid.samples().begin(), kernel_grid.samples().end());
  const auto p = poly.sample(diff.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= p[k];
  const double l1 = norm_L1(GridFunction(std::move(diff), kernel_grid.jumps()));

  return Interpolant{std::move(poly), nodes, residual, l1};
}

double optimal_error(const std::vector<Kernel>& kernels, int s, std::size_t grid) {
  if (s < 1) throw ArgumentError("optimal_error: s must be positive");
  return extremal_data(kernels, s, grid).max_abs;
}

}  // namespace optconv

#pragma once

#include <vector>

#include "optconv/convolution.hpp"
#include "optconv/kernels.hpp"
#include "optconv/spectral.hpp"

namespace optconv {

inline constexpr std::size_t kDefaultGrid = 16384;

/// Extremal point sigma of K_conv * phi_s and the sup-norm there.
struct ExtremalData {
  int s = 1;
  double sigma = 0.0;
  GridFunction conv_phi;
  double max_abs = 0.0;
};

/// Trigonometric polynomial of order s-1 interpolating K_conv at sigma + m*pi/s.
struct Interpolant {
  TrigPoly poly;
  std::vector<double> nodes;
  double node_residual = 0.0;
  double l1_error = 0.0;
};

/**
 * K_1 * ... * K_n * phi_s on an N-point grid, with an exact evaluator attached.
 *
 * Only j = ks with k odd contribute; chains with a smooth factor are summed from
 * the truncated coefficient series, pure Bernoulli chains use
 *   (K * phi_s)(tau) = 2 sum_{m=0}^{2s-1} (-1)^m G(tau - m pi/s),
 * where G is the mean-free antiderivative of the chain.
 */
GridFunction conv_with_phi(const std::vector<Kernel>& kernels, int s, std::size_t grid = kDefaultGrid);

/// Same function through the antiderivative identity for any chain; an independent route
/// used to cross-check the series path.
double conv_with_phi_by_antiderivative(const KernelChain& chain, int s, double tau);

/// Location of the absolute extremum of |conv_phi| (positive maximum preferred on ties,
/// then the smallest angle). Throws DegenerateInputError for identically zero input.
ExtremalData find_sigma(const GridFunction& conv_phi, int s = 1);

/// conv_with_phi + find_sigma, with sigma polished by Newton's method on the analytic
/// derivative whenever the chain makes K_conv * phi_s twice differentiable.
ExtremalData extremal_data(const std::vector<Kernel>& kernels, int s, std::size_t grid = kDefaultGrid);

/// Nodes sigma + m pi/s (mod 2pi), m = 0..2s-1, minus any node within 1e-9 of a jump.
/// Only a jump at 0 is supported, and at most one node may be dropped.
std::vector<double> node_set(double sigma, int s, const std::vector<double>& jumps);

inline constexpr double kNodeJumpTolerance = 1e-9;
inline constexpr double kInterpolationTolerance = 1e-7;

/**
 * Least-squares trigonometric polynomial of order s-1 through K_conv at the node set.
 * Throws InconsistentInterpolationError when the node residual exceeds
 * 1e-7 * (1 + ||K_conv||_C).
 */
Interpolant build_interpolant(const std::vector<Kernel>& kernels, const ExtremalData& ext);

/// ||K_conv * phi_s||_C.
double optimal_error(const std::vector<Kernel>& kernels, int s, std::size_t grid = kDefaultGrid);

}  // namespace optconv

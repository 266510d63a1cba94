#pragma once

#include <vector>

#include "optconv/best_l1.hpp"
#include "optconv/kernels.hpp"
#include "optconv/spectral.hpp"

namespace optconv {

/// Fourier information (a_0..a_{s-1}, b_1..b_{s-1}) of one factor: 2s-1 numbers.
struct InfoVector {
  int s = 1;
  std::vector<double> a;
  std::vector<double> b;

  /// c_j = (a_j - i b_j)/2 for |j| <= s-1.
  Complex coeff(int j) const;
};

/// alpha_j for j = -(s-1)..s-1.
class MultiplierSet {
 public:
  MultiplierSet(int s, std::vector<Complex> nonnegative);

  int s() const { return s_; }
  /// alpha_j; alpha_{-j} = conj(alpha_j).
  Complex alpha(int j) const;

  /// Copy with `delta` added to the real part of every alpha_j (a test hook).
  MultiplierSet perturbed(double delta) const;

 private:
  int s_;
  std::vector<Complex> values_;  // alpha_0..alpha_{s-1}
};

/// Everything the optimal method needs for one (kernels, s) configuration.
struct RecoveryPlan {
  std::vector<Kernel> kernels;
  int s = 1;
  std::size_t grid = kDefaultGrid;
  ExtremalData extremal;
  Interpolant interpolant;
  MultiplierSet multipliers;
  double bound = 0.0;
};

/// sigma, P_{s,sigma}(K_1 * ... * K_n), the multipliers and the error bound.
RecoveryPlan plan_recovery(const std::vector<Kernel>& kernels, int s, std::size_t grid = kDefaultGrid);

InfoVector extract_info(const GridFunction& x, int s);

/// alpha_j = c_j(P_{s,sigma}(K_1 * ... * K_n)) / (c_j(K_1) ... c_j(K_n)).
MultiplierSet multipliers(const std::vector<Kernel>& kernels, int s, std::size_t grid = kDefaultGrid);
MultiplierSet multipliers(const std::vector<Kernel>& kernels, const Interpolant& interpolant, int s);

/// Phi*(t) = sum_{|j|<=s-1} alpha_j c_j(x_1)...c_j(x_n) e^{ijt}.
TrigPoly recover(const std::vector<InfoVector>& infos, const MultiplierSet& mult);

/// ||K_1 * ... * K_n * phi_s||_C, the optimal recovery error for n(2s-1) coefficients.
double theoretical_bound(const std::vector<Kernel>& kernels, int s, std::size_t grid = kDefaultGrid);

struct ResidualResult {
  double residual = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

/// Highest order kept when forming x_l = K_l * psi_l and the true convolution.
inline constexpr int kReferenceOrderCap = 4096;

/// x_l = K_l * psi_l as grid functions (spectral, order min(N/2 - 1, 4096) with tail gate).
std::vector<GridFunction> form_factors(const std::vector<GridFunction>& psis, const std::vector<Kernel>& kernels);

/// Phi* applied to the information of x_l = K_l * psi_l.
TrigPoly recover_from_psis(const std::vector<GridFunction>& psis, const RecoveryPlan& plan);

/**
 * ||x_1 * ... * x_n - Phi*(T*(x_1), ..., T*(x_n))||_L1 for x_l = K_l * psi_l, against the bound.
 * Each psi_l must satisfy ||psi_l||_L1 <= 1 + 1e-9.
 */
ResidualResult residual_error(const std::vector<GridFunction>& psis, const RecoveryPlan& plan);
ResidualResult residual_error(const std::vector<GridFunction>& psis, const RecoveryPlan& plan,
                              const MultiplierSet& mult);
ResidualResult residual_error(const std::vector<GridFunction>& psis, const std::vector<Kernel>& kernels, int s);

}  // namespace optconv

#include "optconv/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "optconv/convolution.hpp"
#include "optconv/error.hpp"

namespace optconv {
namespace {

constexpr double kUnitBallSlack = 1e-9;
// Orders beyond which every catalog coefficient product is below double resolution.
constexpr double kFactorTailTolerance = 1e-18;

std::size_t check_grids(const std::vector<GridFunction>& psis) {
  if (psis.empty()) throw ArgumentError("need at least one factor");
  const std::size_t n = psis.front().size();
  for (const auto& p : psis) {
    if (p.size() != n) throw ArgumentError("factors live on grids of different sizes");
  }
  return n;
}

int reference_order(std::size_t grid, const Kernel& k) {
  int order = std::min(static_cast<int>(grid / 2) - 1, kReferenceOrderCap);
  if (const auto eff = k.effective_order(kFactorTailTolerance)) order = std::min(order, std::max(*eff, 1));
  return order;
}

}  // namespace

Complex InfoVector::coeff(int j) const {
  const int m = std::abs(j);
  if (m >= s) throw RangeError("InfoVector::coeff: index beyond the collected information");
  if (m == 0) return {0.5 * a[0], 0.0};
  const Complex c{0.5 * a[static_cast<std::size_t>(m)], -0.5 * b[static_cast<std::size_t>(m - 1)]};
  return j > 0 ? c : std::conj(c);
}

MultiplierSet::MultiplierSet(int s, std::vector<Complex> nonnegative) : s_(s), values_(std::move(nonnegative)) {
  if (s < 1 || values_.size() != static_cast<std::size_t>(s)) {
    throw ArgumentError("MultiplierSet: need alpha_0..alpha_{s-1}");
  }
}

Complex MultiplierSet::alpha(int j) const {
  const int m = std::abs(j);
  if (m >= s_) throw RangeError("MultiplierSet::alpha: |j| must be below s");
  const Complex v = values_[static_cast<std::size_t>(m)];
  return j >= 0 ? v : std::conj(v);
}

MultiplierSet MultiplierSet::perturbed(double delta) const {
  auto v = values_;
  for (auto& x : v) x += delta;
  return MultiplierSet(s_, std::move(v));
}

InfoVector extract_info(const GridFunction& x, int s) {
  if (s < 1) throw ArgumentError("extract_info: s must be positive");
  if (static_cast<std::size_t>(s - 1) >= x.size() / 2) {
    throw RangeError("extract_info: s = " + std::to_string(s) + " too large for the grid");
  }
  InfoVector info;
  info.s = s;
  info.a.resize(static_cast<std::size_t>(s));
  info.b.resize(static_cast<std::size_t>(s - 1));
  for (int j = 0; j < s; ++j) {
    const Complex c = fourier_coeff(x, j);
    info.a[static_cast<std::size_t>(j)] = 2.0 * c.real();
    if (j > 0) info.b[static_cast<std::size_t>(j - 1)] = -2.0 * c.imag();
  }
  return info;
}

MultiplierSet multipliers(const std::vector<Kernel>& kernels, const Interpolant& interpolant, int s) {
  std::vector<Complex> alpha(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) {
    Complex denom{1.0, 0.0};
    for (const auto& k : kernels) denom *= k.coeff(j);
    if (denom == Complex{}) throw ArgumentError("multipliers: vanishing kernel coefficient");
    alpha[static_cast<std::size_t>(j)] = interpolant.poly.coeff(j) / denom;
  }
  return MultiplierSet(s, std::move(alpha));
}

MultiplierSet multipliers(const std::vector<Kernel>& kernels, int s, std::size_t grid) {
  return plan_recovery(kernels, s, grid).multipliers;
}

RecoveryPlan plan_recovery(const std::vector<Kernel>& kernels, int s, std::size_t grid) {
  if (kernels.empty()) throw ArgumentError("plan_recovery: empty kernel list");
  if (s < 1) throw ArgumentError("plan_recovery: s must be positive");
  auto ext = extremal_data(kernels, s, grid);
  auto interp = build_interpolant(kernels, ext);
  auto mult = multipliers(kernels, interp, s);
  const double bound = ext.max_abs;
  return RecoveryPlan{kernels, s, grid, std::move(ext), std::move(interp), std::move(mult), bound};
}

TrigPoly recover(const std::vector<InfoVector>& infos, const MultiplierSet& mult) {
  if (infos.empty()) throw ArgumentError("recover: no information vectors");
  const int s = mult.s();
  for (const auto& info : infos) {
    if (info.s != s) throw ArgumentError("recover: information and multipliers disagree on s");
  }
  std::vector<Complex> c(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) {
    Complex v = mult.alpha(j);
    for (const auto& info : infos) v *= info.coeff(j);
    c[static_cast<std::size_t>(j)] = v;
  }
  return TrigPoly::from_complex(c);
}

double theoretical_bound(const std::vector<Kernel>& kernels, int s, std::size_t grid) {
  return optimal_error(kernels, s, grid);
}

std::vector<GridFunction> form_factors(const std::vector<GridFunction>& psis, const std::vector<Kernel>& kernels) {
  if (psis.size() != kernels.size()) throw ArgumentError("need one psi per kernel");
  const std::size_t n = check_grids(psis);
  std::vector<GridFunction> xs;
  xs.reserve(psis.size());
  for (std::size_t l = 0; l < psis.size(); ++l) {
    const int order = reference_order(n, kernels[l]);
    const TrigPoly x = convolve_spectral(ConvSpec{{kernels[l], psis[l]}}, order);
    xs.emplace_back(x.sample(n));
  }
  return xs;
}

TrigPoly recover_from_psis(const std::vector<GridFunction>& psis, const RecoveryPlan& plan) {
  const auto xs = form_factors(psis, plan.kernels);
  std::vector<InfoVector> infos;
  for (const auto& x : xs) infos.push_back(extract_info(x, plan.s));
  return recover(infos, plan.multipliers);
}

ResidualResult residual_error(const std::vector<GridFunction>& psis, const RecoveryPlan& plan,
                              const MultiplierSet& mult) {
  if (psis.size() != plan.kernels.size()) throw ArgumentError("residual_error: need one psi per kernel");
  const std::size_t n = check_grids(psis);
  for (const auto& p : psis) {
    const double norm = norm_L1(p);
    if (norm > 1.0 + kUnitBallSlack) {
      throw PreconditionError("residual_error: psi outside the unit ball of L1 (norm " + std::to_string(norm) + ")");
    }
  }

  const auto xs = form_factors(psis, plan.kernels);
  std::vector<InfoVector> infos;
  for (const auto& x : xs) infos.push_back(extract_info(x, plan.s));
  const TrigPoly approx = recover(infos, mult);

  // true convolution from the factors' spectra: (2 pi)^{n-1} prod c_j(x_l)
  int order = std::min(static_cast<int>(n / 2) - 1, kReferenceOrderCap);
  int chain_order = 0;
  bool finite = false;
  for (const auto& k : plan.kernels) {
    if (const auto eff = k.effective_order(kFactorTailTolerance)) {
      chain_order = finite ? std::min(chain_order, *eff) : *eff;
      finite = true;
    }
  }
  if (finite) order = std::min(order, std::max(chain_order, plan.s));

  std::vector<Complex> truth(static_cast<std::size_t>(order) + 1,
                             Complex{std::pow(kTwoPi, static_cast<double>(xs.size()) - 1.0), 0.0});
  for (const auto& x : xs) {
    const auto c = fourier_coeffs(x, order);
    for (std::size_t j = 0; j < truth.size(); ++j) truth[j] *= c[j];
  }
  for (int j = 0; j < plan.s && j <= order; ++j) truth[static_cast<std::size_t>(j)] -= approx.coeff(j);

  const double residual = norm_L1(GridFunction(detail::synthesize(truth, n)));
  const double ratio = plan.bound > 0.0 ? residual / plan.bound : 0.0;
  return {residual, plan.bound, ratio};
}

ResidualResult residual_error(const std::vector<GridFunction>& psis, const RecoveryPlan& plan) {
  return residual_error(psis, plan, plan.multipliers);
}

ResidualResult residual_error(const std::vector<GridFunction>& psis, const std::vector<Kernel>& kernels, int s) {
  const std::size_t n = check_grids(psis);
  return residual_error(psis, plan_recovery(kernels, s, n));
}

}  // namespace optconv

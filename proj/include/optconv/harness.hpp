#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "optconv/kernels.hpp"
#include "optconv/recovery.hpp"
#include "optconv/spectral.hpp"

namespace optconv {

/// Generator description for inputs psi in the unit ball of L1.
struct PsiSpec {
  enum class Kind { box, random_trig, random_atoms, constant };
  Kind kind = Kind::constant;
  double center = 0.0;
  double width = kTwoPi;
  int order = 0;
  int count = 1;
  std::uint64_t seed = 0;

  static PsiSpec box(double center, double width) { return {Kind::box, center, width, 0, 1, 0}; }
  static PsiSpec random_trig(int order, std::uint64_t seed) { return {Kind::random_trig, 0.0, 0.0, order, 1, seed}; }
  static PsiSpec random_atoms(int count, std::uint64_t seed) { return {Kind::random_atoms, 0.0, 0.0, 0, count, seed}; }
  static PsiSpec constant() { return {}; }

  /// `constant`, `box:center=0,width=0.1`, `trig:order=5,seed=7`, `atoms:count=3,seed=2`.
  static PsiSpec parse(const std::string& text);
  std::string to_string() const;
};

/**
 * Grid function with ||psi||_L1 <= 1 (normalised to exactly 1 except the zero function).
 *
 * A box holds the value 1/w on [center - w/2, center + w/2]; each sample carries the
 * fraction of its cell [t_k - h/2, t_k + h/2] covered by the box, so the rectangle
 * rule and the L1 norm both integrate to 1.
 */
GridFunction gen_psi(const PsiSpec& spec, std::size_t grid);

struct SharpnessPoint {
  double width = 0.0;
  double ratio = 0.0;
  double center = 0.0;
};

/// Ratios residual/bound with every psi_l a box of the given widths (largest first).
std::vector<SharpnessPoint> sharpness_experiment(const RecoveryPlan& plan, const std::vector<double>& widths);
std::vector<SharpnessPoint> sharpness_experiment(const std::vector<Kernel>& kernels, int s,
                                                 const std::vector<double>& widths,
                                                 std::size_t grid = kDefaultGrid);

/// Cyclic count of sign alternations among samples with |f| > band. Always even.
int sign_changes(const GridFunction& f, double band);

struct CvdReport {
  int trials = 0;
  int passes = 0;
  int failures = 0;
  int degenerate = 0;  ///< trials where K * phi vanished on the grid (counted as failures too)
};

using CoefficientOracle = std::function<Complex(int)>;

/// Checks nu(K * phi) <= nu(phi) for random trigonometric polynomials phi of order <= 8.
CvdReport cvd_check(const CoefficientOracle& kernel, int trials, std::uint64_t seed, std::size_t grid = 4096);
CvdReport cvd_check(const Kernel& kernel, int trials, std::uint64_t seed, std::size_t grid = 4096);
/// Kernel given by samples; coefficients by the rectangle rule.
CvdReport cvd_check(const GridFunction& kernel, int trials, std::uint64_t seed, std::size_t grid = 4096);

struct TrialResult {
  std::uint64_t seed = 0;
  double residual = 0.0;
  double ratio = 0.0;
};

struct RecoveryReport {
  std::vector<std::string> kernels;
  int n = 0;
  int s = 0;
  std::size_t grid = 0;
  double sigma = 0.0;
  double bound = 0.0;
  std::vector<std::pair<int, Complex>> alpha;
  std::vector<TrialResult> trials;
  double max_ratio = 0.0;
  int violations = 0;
};

inline constexpr double kViolationSlack = 1e-6;

/// Trial psi-tuple for a given per-trial seed: mixes boxes, random trig polynomials,
/// random atoms and constants.
std::vector<PsiSpec> trial_psi_specs(std::uint64_t trial_seed, std::size_t n_factors);

/// Report skeleton (kernels, sigma, bound, alpha) for a plan.
RecoveryReport make_report(const RecoveryPlan& plan, const MultiplierSet& mult);

/**
 * n_trials independent psi-tuples (trial i uses seed + i), residual_error on each.
 * Results do not depend on `threads`. `perturb_alpha` shifts every multiplier (test hook).
 */
RecoveryReport run_certification(const RecoveryPlan& plan, int n_trials, std::uint64_t seed, int threads = 1,
                                 double perturb_alpha = 0.0);
RecoveryReport run_certification(const std::vector<Kernel>& kernels, int s, int n_trials, std::uint64_t seed,
                                 std::size_t grid = kDefaultGrid, int threads = 1);

}  // namespace optconv

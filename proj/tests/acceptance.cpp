// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "optconv/best_l1.hpp"
#include "optconv/cli.hpp"
#include "optconv/convolution.hpp"
#include "optconv/error.hpp"
#include "optconv/harness.hpp"
#include "optconv/recovery.hpp"

using namespace optconv;

namespace {

struct Chain {
  std::string name;
  std::vector<Kernel> kernels;
};

std::vector<Chain> single_chains() {
  return {{"poisson(0.3)", {Kernel::poisson(0.3)}},
          {"poisson(0.5)", {Kernel::poisson(0.5)}},
          {"poisson(0.7)", {Kernel::poisson(0.7)}},
          {"gauss(0.05)", {Kernel::gauss(0.05)}},
          {"gauss(0.2)", {Kernel::gauss(0.2)}},
          {"bernoulli(1)", {Kernel::bernoulli(1, 1.0 / kTwoPi)}}};
}

std::vector<Chain> catalog() {
  auto chains = single_chains();
  chains.push_back({"poisson(0.5)^2", {Kernel::poisson(0.5), Kernel::poisson(0.5)}});
  chains.push_back({"poisson(0.5)*gauss(0.1)", {Kernel::poisson(0.5), Kernel::gauss(0.1)}});
  chains.push_back({"bernoulli(1)*poisson(0.5)", {Kernel::bernoulli(1, 1.0 / kTwoPi), Kernel::poisson(0.5)}});
  return chains;
}

int worker_count() { return static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency()))); }

GridFunction random_band(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  const int order = std::uniform_int_distribution<int>(0, 8)(rng);
  std::vector<double> a(order), b(order);
  for (int j = 0; j < order; ++j) {
    a[j] = normal(rng);
    b[j] = normal(rng);
  }
  return TrigPoly(normal(rng), a, b).to_grid(n);
}

double max_gap(const TrigPoly& p, const TrigPoly& q, int points = 2048) {
  double gap = 0.0;
  for (int k = 0; k < points; ++k) {
    const double t = kTwoPi * k / points;
    gap = std::max(gap, std::abs(p(t) - q(t)));
  }
  return gap;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string num9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct Verdict {
  bool pass;
  std::string detail;
};

Verdict multiplier_identity() {
  std::mt19937_64 rng(101);
  const std::size_t n = 1024;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int factors = trial % 2 == 0 ? 2 : 3;
    std::vector<GridFunction> fs;
    for (int l = 0; l < factors; ++l) fs.push_back(random_band(rng, n));
    ConvSpec spec;
    for (const auto& f : fs) spec.factors.push_back(f);
    const auto spectral = convolve_spectral(spec, 8);
    GridFunction direct = convolve_direct(fs[0], fs[1]);
    for (int l = 2; l < factors; ++l) direct = convolve_direct(direct, fs[l]);
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(spectral(direct.node(k)) - direct[k]));
  }
  return {worst <= 1e-8, "max pointwise gap " + num(worst)};
}

Verdict best_l1_consistency() {
  double worst = 0.0;
  for (const auto& chain : single_chains()) {
    for (int s = 1; s <= 4; ++s) {
      const auto ext = extremal_data(chain.kernels, s);
      const auto it = build_interpolant(chain.kernels, ext);
      worst = std::max(worst, std::abs(it.l1_error - ext.max_abs) / ext.max_abs);
    }
  }
  return {worst <= 1e-5, "max relative gap " + num(worst)};
}

Verdict closed_forms() {
  const double a = theoretical_bound({Kernel::poisson(0.5)}, 1);
  const double b = theoretical_bound({Kernel::bernoulli(1)}, 1);
  const double c = theoretical_bound({Kernel::bernoulli(1)}, 2);
  const double d = theoretical_bound({Kernel::poisson(0.5), Kernel::poisson(0.5)}, 1);
  const bool ok = std::abs(a - 8 * std::atan(0.5)) <= 1e-6 && std::abs(b - kPi * kPi / 2) <= 1e-6 &&
                  std::abs(c - kPi * kPi / 4) <= 1e-6 && std::abs(d - kTwoPi * 8 * std::atan(0.25)) <= 1e-5;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g %.12g", a, b, c, d);
  return {ok, buf};
}

Verdict exactness() {
  const std::size_t grid = 4096;
  const std::vector<std::vector<Kernel>> by_n{{Kernel::poisson(0.5)},
                                              {Kernel::poisson(0.5), Kernel::gauss(0.1)},
                                              {Kernel::bernoulli(1), Kernel::poisson(0.7), Kernel::gauss(0.2)}};
  std::vector<std::vector<RecoveryPlan>> plans(3);
  for (int n = 0; n < 3; ++n)
    for (int s = 1; s <= 3; ++s) plans[n].push_back(plan_recovery(by_n[n], s, grid));

  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(trial % 3);
    const auto& plan = plans[n][(trial / 3) % 3];
    std::vector<GridFunction> psis;
    for (const auto& spec : trial_psi_specs(500 + trial, n + 1)) psis.push_back(gen_psi(spec, grid));
    const auto phi = recover_from_psis(psis, plan);
    ConvSpec spec;
    spec.factors.push_back(plan.interpolant.poly.to_grid(grid));
    for (const auto& p : psis) spec.factors.push_back(p);
    const auto ref = convolve_spectral(spec, plan.s - 1);
    worst = std::max(worst, max_gap(phi, ref, 512) / std::max(1.0, plan.bound));
  }
  return {worst <= 1e-9, "max scaled gap " + num(worst)};
}

Verdict upper_bound() {
  int violations = 0;
  double top = 0.0;
  for (const auto& chain : catalog()) {
    for (int s = 1; s <= 3; ++s) {
      const auto plan = plan_recovery(chain.kernels, s);
      const auto report = run_certification(plan, 200, 1, worker_count());
      violations += report.violations;
      top = std::max(top, report.max_ratio);
    }
  }
  return {violations == 0, std::to_string(violations) + " violations, max ratio " + num9(top)};
}

Verdict sharpness() {
  std::vector<double> widths;
  for (int e = 6; e <= 10; ++e) widths.push_back(kTwoPi / std::pow(2.0, e));
  const std::vector<std::pair<std::vector<Kernel>, double>> cases{
      {{Kernel::poisson(0.3)}, 0.999},
      {{Kernel::poisson(0.5)}, 0.999},
      {{Kernel::poisson(0.7)}, 0.999},
      {{Kernel::poisson(0.5), Kernel::poisson(0.5)}, 0.99}};
  bool ok = true;
  double lowest_final = 1.0;
  for (const auto& [ks, gate] : cases) {
    const auto pts = sharpness_experiment(ks, 1, widths);
    for (std::size_t i = 1; i < pts.size(); ++i) ok = ok && pts[i].ratio >= pts[i - 1].ratio - 1e-3;
    ok = ok && pts.back().ratio >= gate && pts.back().ratio <= 1.0 + kViolationSlack;
    lowest_final = std::min(lowest_final, pts.back().ratio);
  }
  return {ok, "lowest final ratio " + num9(lowest_final)};
}

Verdict interpolation_gate() {
  bool within = true;
  double worst = 0.0;
  int tripped = 0;
  for (const auto& chain : catalog()) {
    const double sup = norm_C(KernelChain(chain.kernels).to_grid(kDefaultGrid)).value;
    for (int s = 1; s <= 4; ++s) {
      auto ext = extremal_data(chain.kernels, s);
      const auto it = build_interpolant(chain.kernels, ext);
      const double scaled = it.node_residual / (1 + sup);
      worst = std::max(worst, scaled);
      within = within && scaled <= kInterpolationTolerance;
      ext.sigma = wrap_angle(ext.sigma + 0.05);
      try {
        build_interpolant(chain.kernels, ext);
      } catch (const InconsistentInterpolationError&) {
        ++tripped;
      }
    }
  }
  return {within && tripped > 0,
          "max scaled residual " + num(worst) + ", perturbed sigma tripped " + std::to_string(tripped) + " configurations"};
}

Verdict cvd_screen() {
  bool ok = true;
  for (const auto& k : {Kernel::poisson(0.3), Kernel::poisson(0.5), Kernel::poisson(0.7), Kernel::gauss(0.05),
                        Kernel::gauss(0.1), Kernel::gauss(0.2)}) {
    ok = ok && cvd_check(k, 100, 1).passes == 100;
  }
  const auto cos3 = GridFunction::sample([](double t) { return std::cos(3 * t); }, 4096);
  const auto bad = cvd_check(cos3, 100, 1);
  ok = ok && bad.failures > 0;
  return {ok, "cos 3t double: " + std::to_string(bad.failures) + " failures"};
}

Verdict information_sufficiency() {
  std::mt19937_64 rng(211);
  std::normal_distribution<double> normal;
  const std::size_t grid = 4096;
  double worst = 0.0;
  for (const auto& chain : catalog()) {
    for (int s = 1; s <= 3; ++s) {
      const auto mult = multipliers(chain.kernels, s, grid);
      std::vector<GridFunction> xs;
      for (std::size_t l = 0; l < chain.kernels.size(); ++l) xs.push_back(random_band(rng, grid));
      std::vector<InfoVector> infos;
      for (const auto& x : xs) infos.push_back(extract_info(x, s));
      const auto base = recover(infos, mult);
      for (std::size_t l = 0; l < xs.size(); ++l) {
        std::vector<double> a(s + 12, 0.0), b(s + 12, 0.0);
        for (int j = s - 1; j < s + 12; ++j) {
          a[j] = 3.0 * normal(rng);
          b[j] = 3.0 * normal(rng);
        }
        const auto bump = TrigPoly(0.0, a, b).sample(grid);
        std::vector<double> moved(xs[l].samples().begin(), xs[l].samples().end());
        for (std::size_t k = 0; k < grid; ++k) moved[k] += bump[k];
        auto changed = infos;
        changed[l] = extract_info(GridFunction(moved), s);
        worst = std::max(worst, max_gap(recover(changed, mult), base, 256));
      }
    }
  }
  return {worst <= 1e-12, "max change " + num(worst)};
}

Verdict determinism() {
  const std::vector<std::string> base{"certify", "--kernel", "poisson:q=0.5", "--kernel", "gauss:tau=0.1", "--s", "2",
                                      "--trials", "64", "--seed", "7", "--format", "json"};
  auto run = [&](const char* threads) {
    auto args = base;
    args.insert(args.end(), {"--threads", threads});
    std::ostringstream out, err;
    cli::run(args, out, err);
    return out.str();
  };
  const auto one = run("1");
  const auto eight = run("8");
  return {!one.empty() && one == eight, std::to_string(one.size()) + " bytes compared"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"multiplier identity", multiplier_identity},
      {"best L1 error equals the sup norm", best_l1_consistency},
      {"closed-form spot checks", closed_forms},
      {"exactness identity", exactness},
      {"upper bound certification", upper_bound},
      {"sharpness", sharpness},
      {"interpolation gate", interpolation_gate},
      {"CVD screening", cvd_screen},
      {"information sufficiency", information_sufficiency},
      {"determinism across thread counts", determinism}};

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %-36s %s  (%s; %.1fs)\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

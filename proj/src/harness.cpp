#include "optconv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "optconv/error.hpp"

namespace optconv {
namespace {

std::vector<double> box_samples(double center, double width, std::size_t grid) {
  const double h = kTwoPi / static_cast<double>(grid);
  const double lo = wrap_angle(center - 0.5 * width);
  const double hi = lo + width;
  std::vector<double> v(grid, 0.0);
  for (std::size_t k = 0; k < grid; ++k) {
    const double t = h * static_cast<double>(k);
    double covered = 0.0;
    for (int shift = -1; shift <= 1; ++shift) {
      const double a = std::max(t - 0.5 * h, lo + shift * kTwoPi);
      const double b = std::min(t + 0.5 * h, hi + shift * kTwoPi);
      if (b > a) covered += b - a;
    }
    v[k] = covered / (h * width);
  }
  return v;
}

GridFunction normalized(std::vector<double> samples) {
  GridFunction f(std::move(samples));
  const double norm = norm_L1(f);
  if (norm == 0.0) return f;
  return f.scaled(1.0 / norm);
}

std::map<std::string, std::string> parse_params(const std::string& text, std::size_t from) {
  std::map<std::string, std::string> params;
  std::string rest = from < text.size() ? text.substr(from) : std::string{};
  std::istringstream is(rest);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ArgumentError("psi spec '" + text + "': expected key=value");
    params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return params;
}

double to_number(const std::map<std::string, std::string>& p, const std::string& key, const std::string& text) {
  auto it = p.find(key);
  if (it == p.end()) throw ArgumentError("psi spec '" + text + "': missing " + key);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != it->second.size()) throw ArgumentError("psi spec '" + text + "': bad number for " + key);
  return v;
}

}  // namespace

PsiSpec PsiSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const auto params = parse_params(text, colon == std::string::npos ? text.size() : colon + 1);
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : params) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; })) {
        throw ArgumentError("psi spec '" + text + "': unknown parameter " + k);
      }
    }
  };
  if (kind == "constant") {
    allow({});
    return constant();
  }
  if (kind == "box") {
    allow({"center", "width"});
    return box(to_number(params, "center", text), to_number(params, "width", text));
  }
  if (kind == "trig") {
    allow({"order", "seed"});
    return random_trig(static_cast<int>(to_number(params, "order", text)),
                       static_cast<std::uint64_t>(to_number(params, "seed", text)));
  }
  if (kind == "atoms") {
    allow({"count", "seed"});
    return random_atoms(static_cast<int>(to_number(params, "count", text)),
                        static_cast<std::uint64_t>(to_number(params, "seed", text)));
  }
  throw ArgumentError("unknown psi kind '" + kind + "'");
}

std::string PsiSpec::to_string() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind) {
    case Kind::constant: os << "constant"; break;
    case Kind::box: os << "box:center=" << center << ",width=" << width; break;
    case Kind::random_trig: os << "trig:order=" << order << ",seed=" << seed; break;
    case Kind::random_atoms: os << "atoms:count=" << count << ",seed=" << seed; break;
  }
  return os.str();
}

GridFunction gen_psi(const PsiSpec& spec, std::size_t grid) {
  switch (spec.kind) {
    case PsiSpec::Kind::constant: return GridFunction(std::vector<double>(grid, 1.0 / kTwoPi));
    case PsiSpec::Kind::box: {
      if (!(spec.width > 0.0) || !std::isfinite(spec.width) || !std::isfinite(spec.center)) {
        throw ArgumentError("gen_psi: box width must be positive and finite");
      }
      if (spec.width >= kTwoPi) return GridFunction(std::vector<double>(grid, 1.0 / kTwoPi));
      return GridFunction(box_samples(spec.center, spec.width, grid));
    }
    case PsiSpec::Kind::random_trig: {
      if (spec.order < 0) throw ArgumentError("gen_psi: negative trig order");
      std::mt19937_64 rng(spec.seed);
      std::normal_distribution<double> normal;
      const double a0 = normal(rng);
      std::vector<double> a(static_cast<std::size_t>(spec.order)), b(static_cast<std::size_t>(spec.order));
      for (int j = 0; j < spec.order; ++j) {
        a[static_cast<std::size_t>(j)] = normal(rng);
        b[static_cast<std::size_t>(j)] = normal(rng);
      }
      return normalized(TrigPoly(a0, std::move(a), std::move(b)).sample(grid));
    }
    case PsiSpec::Kind::random_atoms: {
      if (spec.count < 1) throw ArgumentError("gen_psi: atom count must be positive");
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> unit;
      std::vector<double> sum(grid, 0.0);
      for (int i = 0; i < spec.count; ++i) {
        const double center = kTwoPi * unit(rng);
        const double width = kTwoPi * std::pow(2.0, -4.0 - 6.0 * unit(rng));
        const double weight = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.1 + unit(rng));
        const auto atom = box_samples(center, width, grid);
        for (std::size_t k = 0; k < grid; ++k) sum[k] += weight * atom[k];
      }
      return normalized(std::move(sum));
    }
  }
  throw ArgumentError("gen_psi: unknown kind");
}

std::vector<SharpnessPoint> sharpness_experiment(const RecoveryPlan& plan, const std::vector<double>& widths) {
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(widths[i] > 0.0)) throw ArgumentError("sharpness_experiment: widths must be positive");
    if (i > 0 && widths[i] >= widths[i - 1]) throw ArgumentError("sharpness_experiment: widths must decrease");
  }
  std::vector<SharpnessPoint> table;
  for (double w : widths) {
    SharpnessPoint best{w, -1.0, 0.0};
    // coarse scan of box locations
    for (int k = 0; k < 8; ++k) {
      const double center = kTwoPi * k / 8.0;
      const std::vector<GridFunction> psis(plan.kernels.size(), gen_psi(PsiSpec::box(center, w), plan.grid));
      const auto r = residual_error(psis, plan);
      if (r.ratio > best.ratio) best = {w, r.ratio, center};
    }
    table.push_back(best);
  }
  return table;
}

std::vector<SharpnessPoint> sharpness_experiment(const std::vector<Kernel>& kernels, int s,
                                                 const std::vector<double>& widths, std::size_t grid) {
  return sharpness_experiment(plan_recovery(kernels, s, grid), widths);
}

int sign_changes(const GridFunction& f, double band) {
  if (!(band >= 0.0)) throw ArgumentError("sign_changes: band must be nonnegative");
  int first = 0;
  int previous = 0;
  int changes = 0;
  for (double v : f.samples()) {
    if (std::abs(v) <= band) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (first == 0) {
      first = sign;
    } else if (sign != previous) {
      ++changes;
    }
    previous = sign;
  }
  if (first == 0) throw DegenerateInputError("sign_changes: every sample lies inside the dead band");
  if (previous != first) ++changes;
  return changes;
}

CvdReport cvd_check(const CoefficientOracle& kernel, int trials, std::uint64_t seed, std::size_t grid) {
  if (trials < 1) throw ArgumentError("cvd_check: need at least one trial");
  constexpr int kMaxOrder = 8;
  std::vector<Complex> kc(kMaxOrder + 1);
  for (int j = 0; j <= kMaxOrder; ++j) kc[static_cast<std::size_t>(j)] = kernel(j);

  CvdReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
    std::normal_distribution<double> normal;
    const int order = std::uniform_int_distribution<int>(0, kMaxOrder)(rng);
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
    c[0] = {2.0 * normal(rng), 0.0};
    for (int j = 1; j <= order; ++j) c[static_cast<std::size_t>(j)] = {normal(rng), normal(rng)};
    if (order == 0 && c[0] == Complex{}) c[0] = 1.0;

    std::vector<Complex> kphi(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) kphi[j] = kTwoPi * kc[j] * c[j];

    const GridFunction phi(TrigPoly::from_complex(c).sample(grid));
    const GridFunction image(TrigPoly::from_complex(kphi).sample(grid));
    const int nu_phi = sign_changes(phi, 1e-9 * norm_C(phi).value);
    const double image_sup = norm_C(image).value;
    int nu_image = 0;
    try {
      if (image_sup == 0.0) throw DegenerateInputError("K * phi vanishes");
      nu_image = sign_changes(image, 1e-9 * image_sup);
    } catch (const DegenerateInputError&) {
      ++report.degenerate;
      ++report.failures;
      continue;
    }
    if (nu_image <= nu_phi) {
      ++report.passes;
    } else {
      ++report.failures;
    }
  }
  return report;
}

CvdReport cvd_check(const Kernel& kernel, int trials, std::uint64_t seed, std::size_t grid) {
  return cvd_check([kernel](int j) { return kernel.coeff(j); }, trials, seed, grid);
}

CvdReport cvd_check(const GridFunction& kernel, int trials, std::uint64_t seed, std::size_t grid) {
  return cvd_check([&kernel](int j) { return fourier_coeff(kernel, j); }, trials, seed, grid);
}

std::vector<PsiSpec> trial_psi_specs(std::uint64_t trial_seed, std::size_t n_factors) {
  std::mt19937_64 rng(trial_seed);
  std::uniform_real_distribution<double> unit;
  std::vector<PsiSpec> specs;
  for (std::size_t l = 0; l < n_factors; ++l) {
    const double pick = unit(rng);
    if (pick < 0.4) {
      const int level = std::uniform_int_distribution<int>(3, 10)(rng);
      specs.push_back(PsiSpec::box(kTwoPi * unit(rng), kTwoPi / std::ldexp(1.0, level)));
    } else if (pick < 0.7) {
      const int order = std::uniform_int_distribution<int>(0, 8)(rng);
      specs.push_back(PsiSpec::random_trig(order, rng()));
    } else if (pick < 0.9) {
      const int count = std::uniform_int_distribution<int>(1, 5)(rng);
      specs.push_back(PsiSpec::random_atoms(count, rng()));
    } else {
      specs.push_back(PsiSpec::constant());
    }
  }
  return specs;
}

RecoveryReport make_report(const RecoveryPlan& plan, const MultiplierSet& mult) {
  RecoveryReport report;
  for (const auto& k : plan.kernels) report.kernels.push_back(k.to_string());
  report.n = static_cast<int>(plan.kernels.size());
  report.s = plan.s;
  report.grid = plan.grid;
  report.sigma = plan.extremal.sigma;
  report.bound = plan.bound;
  for (int j = -(plan.s - 1); j <= plan.s - 1; ++j) report.alpha.emplace_back(j, mult.alpha(j));
  return report;
}

RecoveryReport run_certification(const RecoveryPlan& plan, int n_trials, std::uint64_t seed, int threads,
                                 double perturb_alpha) {
  if (n_trials < 1) throw ArgumentError("run_certification: need at least one trial");
  const MultiplierSet mult = perturb_alpha == 0.0 ? plan.multipliers : plan.multipliers.perturbed(perturb_alpha);
  RecoveryReport report = make_report(plan, mult);
  report.trials.resize(static_cast<std::size_t>(n_trials));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < n_trials; i = next++) {
      try {
        const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(i);
        std::vector<GridFunction> psis;
        for (const auto& spec : trial_psi_specs(trial_seed, plan.kernels.size())) {
          psis.push_back(gen_psi(spec, plan.grid));
        }
        const auto r = residual_error(psis, plan, mult);
        report.trials[static_cast<std::size_t>(i)] = {trial_seed, r.residual, r.ratio};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(threads, 1, n_trials);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& t : report.trials) {
    report.max_ratio = std::max(report.max_ratio, t.ratio);
    if (t.ratio > 1.0 + kViolationSlack) ++report.violations;
  }
  return report;
}

RecoveryReport run_certification(const std::vector<Kernel>& kernels, int s, int n_trials, std::uint64_t seed,
                                 std::size_t grid, int threads) {
  return run_certification(plan_recovery(kernels, s, grid), n_trials, seed, threads);
}

}  // namespace optconv

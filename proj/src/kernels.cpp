#include "optconv/kernels.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "optconv/error.hpp"

namespace optconv {
namespace {

constexpr int kMaxBernoulliOrder = 20;

// Bernoulli numbers B_0..B_20 with B_1 = -1/2.
constexpr std::array<double, kMaxBernoulliOrder + 1> kBernoulliNumbers = {
    1.0,          -0.5,       1.0 / 6.0,  0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0, -1.0 / 30.0,
    0.0,          5.0 / 66.0, 0.0,        -691.0 / 2730.0,  0.0, 7.0 / 6.0,  0.0, -3617.0 / 510.0,
    0.0,          43867.0 / 798.0,        0.0,              -174611.0 / 330.0};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

double bernoulli_polynomial(int n, double x) {
  double v = 0.0;
  for (int k = 0; k <= n; ++k) v += binomial(n, k) * kBernoulliNumbers[k] * std::pow(x, n - k);
  return v;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// (-i)^r
Complex minus_i_power(int r) {
  switch (((r % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

double parse_number(std::string_view text, std::string_view spec) {
  std::string s(text);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size()) throw ArgumentError("kernel spec '" + std::string(spec) + "': bad number '" + s + "'");
  return v;
}

}  // namespace

double bernoulli_function(int r, double t) {
  if (r < 0 || r > kMaxBernoulliOrder) throw ArgumentError("bernoulli_function: unsupported order");
  const double x = wrap_angle(t) / kTwoPi;
  if (r == 1 && x == 0.0) return 0.0;
  return -std::pow(kTwoPi, r) / (2.0 * factorial(r)) * bernoulli_polynomial(r, x);
}

Kernel Kernel::poisson(double q) {
  if (!(q > 0.0 && q < 1.0)) throw ArgumentError("poisson kernel requires 0 < q < 1");
  return Kernel(KernelFamily::poisson, q, 0);
}

Kernel Kernel::gauss(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ArgumentError("gauss kernel requires tau > 0");
  return Kernel(KernelFamily::gauss, tau, 0);
}

Kernel Kernel::bernoulli(int r, double beta) {
  if (r < 1 || r > kMaxBernoulliOrder - 1) {
    throw ArgumentError("bernoulli kernel requires 1 <= r <= " + std::to_string(kMaxBernoulliOrder - 1));
  }
  if (beta == 0.0 || !std::isfinite(beta)) throw ArgumentError("bernoulli kernel requires a nonzero mean beta");
  return Kernel(KernelFamily::bernoulli, beta, r);
}

Kernel Kernel::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view family = spec.substr(0, colon);
  std::map<std::string, std::string, std::less<>> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ArgumentError("kernel spec '" + std::string(spec) + "': expected key=value");
      }
      params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  auto take = [&](const char* key) -> std::optional<double> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    const double v = parse_number(it->second, spec);
    params.erase(it);
    return v;
  };

  std::optional<Kernel> k;
  if (family == "poisson") {
    const auto q = take("q");
    if (!q) throw ArgumentError("poisson kernel needs q=");
    k = poisson(*q);
  } else if (family == "gauss") {
    const auto tau = take("tau");
    if (!tau) throw ArgumentError("gauss kernel needs tau=");
    k = gauss(*tau);
  } else if (family == "bernoulli") {
    const double r = take("r").value_or(1.0);
    const double beta = take("beta").value_or(1.0 / kTwoPi);
    if (r != std::floor(r)) throw ArgumentError("bernoulli kernel needs an integer r");
    k = bernoulli(static_cast<int>(r), beta);
  } else {
    throw ArgumentError("unknown kernel family '" + std::string(family) + "'");
  }
  if (!params.empty()) {
    throw ArgumentError("kernel spec '" + std::string(spec) + "': unknown parameter '" + params.begin()->first + "'");
  }
  return *k;
}

std::string Kernel::to_string() const {
  std::ostringstream os;
  os.precision(12);
  switch (family_) {
    case KernelFamily::poisson: os << "poisson:q=" << param_; break;
    case KernelFamily::gauss: os << "gauss:tau=" << param_; break;
    case KernelFamily::bernoulli: os << "bernoulli:r=" << order_ << ",beta=" << param_; break;
  }
  return os.str();
}

Complex Kernel::coeff(int j) const {
  const int m = std::abs(j);
  switch (family_) {
    case KernelFamily::poisson: return {std::pow(param_, m), 0.0};
    case KernelFamily::gauss: return {std::exp(-param_ * static_cast<double>(m) * static_cast<double>(m)), 0.0};
    case KernelFamily::bernoulli: {
      if (j == 0) return {param_, 0.0};
      const Complex c = minus_i_power(order_) / (2.0 * std::pow(static_cast<double>(m), order_));
      return j > 0 ? c : std::conj(c);
    }
  }
  return {};
}

double Kernel::coeff_abs(int j) const {
  const int m = std::abs(j);
  switch (family_) {
    case KernelFamily::poisson: return std::pow(param_, m);
    case KernelFamily::gauss: return std::exp(-param_ * static_cast<double>(m) * static_cast<double>(m));
    case KernelFamily::bernoulli:
      return j == 0 ? std::abs(param_) : 0.5 / std::pow(static_cast<double>(m), order_);
  }
  return 0.0;
}

double Kernel::operator()(double t) const {
  if (family_ == KernelFamily::bernoulli) return param_ + bernoulli_function(order_, t);

  // even kernels: c_0 + 2 sum c_j cos jt, truncated at the relative tail threshold
  double sum = 1.0;
  double magnitude = 1.0;
  for (int j = 1; j < 1000000; ++j) {
    const double c = coeff_abs(j);
    if (c < kTailThreshold * magnitude) break;
    sum += 2.0 * c * std::cos(static_cast<double>(j) * t);
    magnitude += 2.0 * c;
  }
  return sum;
}

std::vector<double> Kernel::jumps() const {
  if (family_ == KernelFamily::bernoulli && order_ == 1) return {0.0};
  return {};
}

std::optional<int> Kernel::effective_order(double rel_tol) const {
  switch (family_) {
    case KernelFamily::poisson:
      return static_cast<int>(std::ceil(std::log(rel_tol) / std::log(param_)));
    case KernelFamily::gauss:
      return static_cast<int>(std::ceil(std::sqrt(-std::log(rel_tol) / param_)));
    case KernelFamily::bernoulli: return std::nullopt;
  }
  return std::nullopt;
}

Complex kernel_coeff(const Kernel& k, int j) { return k.coeff(j); }

double kernel_eval(const Kernel& k, double t) { return k(t); }

Complex phi_s_coeff(int s, int j) {
  if (s < 1) throw ArgumentError("phi_s: s must be positive");
  if (j == 0 || j % s != 0) return {0.0, 0.0};
  const int k = j / s;
  if (k % 2 == 0) return {0.0, 0.0};
  return {0.0, -2.0 / (kPi * static_cast<double>(k))};
}

GridFunction phi_s(int s, std::size_t grid) {
  if (s < 1) throw ArgumentError("phi_s: s must be positive");
  if (grid < 4 * static_cast<std::size_t>(s)) {
    throw RangeError("phi_s: grid of " + std::to_string(grid) + " points too coarse for s = " + std::to_string(s));
  }
  std::vector<double> jumps;
  for (int m = 0; m < 2 * s; ++m) jumps.push_back(kPi * m / s);
  auto square = [s](double t) {
    // sign(sin st) from the half-period index avoids round-off at the zeros
    const double u = wrap_angle(t) * s / kPi;
    const double idx = std::floor(u);
    if (u - idx == 0.0) return 0.0;
    return std::fmod(idx, 2.0) == 0.0 ? 1.0 : -1.0;
  };
  // grid nodes that coincide with a zero of sin st carry the mean of the one-sided limits
  std::vector<double> values(grid);
  const double h = kTwoPi / static_cast<double>(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    const std::size_t num = k * 2 * static_cast<std::size_t>(s);  // s t / pi = num / grid
    values[k] = (num % grid == 0) ? 0.0 : square(h * static_cast<double>(k));
    if (num % grid != 0) values[k] = ((num / grid) % 2 == 0) ? 1.0 : -1.0;
  }
  return GridFunction(std::move(values), std::move(jumps), square);
}

}  // namespace optconv

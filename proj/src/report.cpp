#include "optconv/report.hpp"

#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace optconv {

double round_significant(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kReportDigits, v);
  return buf;
}

std::string report_to_json(const RecoveryReport& report) {
  nlohmann::ordered_json j;
  j["kernels"] = report.kernels;
  j["n"] = report.n;
  j["s"] = report.s;
  j["grid"] = report.grid;
  j["sigma"] = round_significant(report.sigma);
  j["bound"] = round_significant(report.bound);
  auto alpha = nlohmann::ordered_json::array();
  for (const auto& [index, value] : report.alpha) {
    alpha.push_back({{"j", index}, {"re", round_significant(value.real())}, {"im", round_significant(value.imag())}});
  }
  j["alpha"] = std::move(alpha);
  auto trials = nlohmann::ordered_json::array();
  for (const auto& t : report.trials) {
    trials.push_back({{"seed", t.seed}, {"residual", round_significant(t.residual)}, {"ratio", round_significant(t.ratio)}});
  }
  j["trials"] = std::move(trials);
  j["max_ratio"] = round_significant(report.max_ratio);
  j["violations"] = report.violations;
  return j.dump(2) + "\n";
}

RecoveryReport report_from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  RecoveryReport r;
  r.kernels = j.at("kernels").get<std::vector<std::string>>();
  r.n = j.at("n").get<int>();
  r.s = j.at("s").get<int>();
  r.grid = j.at("grid").get<std::size_t>();
  r.sigma = j.at("sigma").get<double>();
  r.bound = j.at("bound").get<double>();
  for (const auto& a : j.at("alpha")) {
    r.alpha.emplace_back(a.at("j").get<int>(), Complex{a.at("re").get<double>(), a.at("im").get<double>()});
  }
  for (const auto& t : j.at("trials")) {
    r.trials.push_back({t.at("seed").get<std::uint64_t>(), t.at("residual").get<double>(), t.at("ratio").get<double>()});
  }
  r.max_ratio = j.at("max_ratio").get<double>();
  r.violations = j.at("violations").get<int>();
  return r;
}

void write_report_text(std::ostream& os, const RecoveryReport& report) {
  os << "kernels:";
  for (const auto& k : report.kernels) os << ' ' << k;
  os << "\nn = " << report.n << ", s = " << report.s << ", grid = " << report.grid << '\n';
  os << "sigma = " << format_number(report.sigma) << '\n';
  os << "bound = " << format_number(report.bound) << '\n';
  for (const auto& [index, value] : report.alpha) {
    os << "alpha[" << index << "] = " << format_number(value.real()) << " + " << format_number(value.imag()) << "i\n";
  }
  if (!report.trials.empty()) {
    os << "trials = " << report.trials.size() << ", max_ratio = " << format_number(report.max_ratio)
       << ", violations = " << report.violations << '\n';
    for (const auto& t : report.trials) {
      os << "  seed " << t.seed << ": residual = " << format_number(t.residual) << ", ratio = " << format_number(t.ratio)
         << '\n';
    }
  }
}

void write_report_csv(std::ostream& os, const RecoveryReport& report) {
  os << "seed,residual,bound,ratio\n";
  for (const auto& t : report.trials) {
    os << t.seed << ',' << format_number(t.residual) << ',' << format_number(report.bound) << ','
       << format_number(t.ratio) << '\n';
  }
}

}  // namespace optconv

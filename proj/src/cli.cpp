#include "optconv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "optconv/convolution.hpp"
#include "optconv/harness.hpp"
#include "optconv/recovery.hpp"
#include "optconv/report.hpp"

namespace optconv::cli {
namespace {

using nlohmann::ordered_json;

std::vector<Kernel> parse_kernels(const std::vector<std::string>& specs) {
  std::vector<Kernel> kernels;
  for (const auto& s : specs) kernels.push_back(Kernel::parse(s));
  return kernels;
}

std::vector<double> default_widths() {
  std::vector<double> w;
  for (int level = 6; level <= 10; ++level) w.push_back(kTwoPi / std::ldexp(1.0, level));
  return w;
}

void emit_report(std::ostream& os, const RecoveryReport& report, Format format) {
  switch (format) {
    case Format::text: write_report_text(os, report); break;
    case Format::json: os << report_to_json(report); break;
    case Format::csv: write_report_csv(os, report); break;
  }
}

int run_bound(const Command& cmd, std::ostream& os) {
  const auto plan = plan_recovery(parse_kernels(cmd.kernel_specs), cmd.s, cmd.grid);
  const auto report = make_report(plan, plan.multipliers);
  if (cmd.format == Format::csv) {
    os << "sigma,bound\n" << format_number(report.sigma) << ',' << format_number(report.bound) << '\n';
  } else {
    emit_report(os, report, cmd.format);
  }
  return kExitOk;
}

int run_recover(const Command& cmd, std::ostream& os) {
  const auto kernels = parse_kernels(cmd.kernel_specs);
  if (!cmd.psi_specs.empty() && cmd.psi_specs.size() != kernels.size()) {
    throw UsageError("recover: give one --psi per --kernel (or none for constants)");
  }
  const auto plan = plan_recovery(kernels, cmd.s, cmd.grid);
  std::vector<GridFunction> psis;
  for (std::size_t l = 0; l < kernels.size(); ++l) {
    const PsiSpec spec = cmd.psi_specs.empty() ? PsiSpec::constant() : PsiSpec::parse(cmd.psi_specs[l]);
    psis.push_back(gen_psi(spec, cmd.grid));
  }
  const auto r = residual_error(psis, plan);
  auto report = make_report(plan, plan.multipliers);
  report.trials.push_back({cmd.seed, r.residual, r.ratio});
  report.max_ratio = r.ratio;
  report.violations = r.ratio > 1.0 + kViolationSlack ? 1 : 0;
  emit_report(os, report, cmd.format);
  return report.violations > 0 ? kExitFailure : kExitOk;
}

int run_certify(const Command& cmd, std::ostream& os) {
  const auto plan = plan_recovery(parse_kernels(cmd.kernel_specs), cmd.s, cmd.grid);
  const auto report = run_certification(plan, cmd.trials, cmd.seed, cmd.threads, cmd.perturb_alpha);
  emit_report(os, report, cmd.format);
  return report.violations > 0 ? kExitFailure : kExitOk;
}

int run_sharpness(const Command& cmd, std::ostream& os) {
  const auto plan = plan_recovery(parse_kernels(cmd.kernel_specs), cmd.s, cmd.grid);
  const auto widths = cmd.widths.empty() ? default_widths() : cmd.widths;
  const auto table = sharpness_experiment(plan, widths);
  auto report = make_report(plan, plan.multipliers);
  for (const auto& row : table) {
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    if (row.ratio > 1.0 + kViolationSlack) ++report.violations;
  }
  switch (cmd.format) {
    case Format::text:
      write_report_text(os, report);
      os << "width ratio\n";
      for (const auto& row : table) os << format_number(row.width) << ' ' << format_number(row.ratio) << '\n';
      break;
    case Format::csv:
      os << "width,ratio\n";
      for (const auto& row : table) os << format_number(row.width) << ',' << format_number(row.ratio) << '\n';
      break;
    case Format::json: {
      auto j = ordered_json::parse(report_to_json(report));
      auto rows = ordered_json::array();
      for (const auto& row : table) {
        rows.push_back({{"width", round_significant(row.width)}, {"ratio", round_significant(row.ratio)}});
      }
      j["sharpness"] = std::move(rows);
      os << j.dump(2) << '\n';
      break;
    }
  }
  return report.violations > 0 ? kExitFailure : kExitOk;
}

int run_cvd(const Command& cmd, std::ostream& os) {
  const auto kernels = parse_kernels(cmd.kernel_specs);
  const int trials = cmd.trials;
  bool all_pass = true;
  auto rows = ordered_json::array();
  if (cmd.format == Format::csv) os << "kernel,trials,passes,failures,degenerate\n";
  for (const auto& k : kernels) {
    const auto r = cvd_check(k, trials, cmd.seed);
    all_pass = all_pass && r.failures == 0;
    switch (cmd.format) {
      case Format::text:
        os << k.to_string() << ": " << r.passes << '/' << r.trials << " pass";
        if (r.degenerate > 0) os << " (" << r.degenerate << " degenerate)";
        os << '\n';
        break;
      case Format::csv:
        os << k.to_string() << ',' << r.trials << ',' << r.passes << ',' << r.failures << ',' << r.degenerate << '\n';
        break;
      case Format::json:
        rows.push_back({{"kernel", k.to_string()},
                        {"trials", r.trials},
                        {"passes", r.passes},
                        {"failures", r.failures},
                        {"degenerate", r.degenerate}});
        break;
    }
  }
  if (cmd.format == Format::json) os << ordered_json{{"cvd", rows}}.dump(2) << '\n';
  return all_pass ? kExitOk : kExitFailure;
}

int run_convolve(const Command& cmd, std::ostream& os) {
  ConvSpec spec;
  std::vector<std::string> names;
  for (const auto& k : cmd.kernel_specs) {
    spec.factors.emplace_back(Kernel::parse(k));
    names.push_back(k);
  }
  for (const auto& p : cmd.psi_specs) {
    spec.factors.emplace_back(gen_psi(PsiSpec::parse(p), cmd.grid));
    names.push_back(p);
  }
  const TrigPoly result = convolve_spectral(spec, cmd.order);
  switch (cmd.format) {
    case Format::text:
      os << "operands:";
      for (const auto& n : names) os << ' ' << n;
      os << "\norder = " << cmd.order << '\n';
      for (int j = 0; j <= cmd.order; ++j) {
        const Complex c = result.coeff(j);
        os << "c[" << j << "] = " << format_number(c.real()) << " + " << format_number(c.imag()) << "i\n";
      }
      break;
    case Format::csv:
      os << "j,re,im\n";
      for (int j = 0; j <= cmd.order; ++j) {
        const Complex c = result.coeff(j);
        os << j << ',' << format_number(c.real()) << ',' << format_number(c.imag()) << '\n';
      }
      break;
    case Format::json: {
      auto coeffs = ordered_json::array();
      for (int j = 0; j <= cmd.order; ++j) {
        const Complex c = result.coeff(j);
        coeffs.push_back({{"j", j}, {"re", round_significant(c.real())}, {"im", round_significant(c.imag())}});
      }
      ordered_json j{{"operands", names}, {"grid", cmd.grid}, {"order", cmd.order}, {"coefficients", coeffs}};
      os << j.dump(2) << '\n';
      break;
    }
  }
  return kExitOk;
}

}  // namespace

Command parse(const std::vector<std::string>& args) {
  CLI::App app{"Optimal recovery of periodic convolutions from Fourier information", "optconv"};
  app.require_subcommand(1, 1);

  Command cmd;
  std::string format = "text";
  std::string output;

  struct VerbInfo {
    Verb verb;
    const char* name;
    const char* help;
  };
  const VerbInfo verbs[] = {
      {Verb::bound, "bound", "Extremal point, multipliers and optimal error"},
      {Verb::recover, "recover", "Recover one convolution from given psi inputs"},
      {Verb::certify, "certify", "Randomised check of the error bound"},
      {Verb::sharpness, "sharpness", "Box-width sweep approaching the bound"},
      {Verb::cvd_check, "cvd-check", "Empirical variation-diminishing screen"},
      {Verb::convolve, "convolve", "Fourier coefficients of a convolution"},
  };

  std::vector<CLI::App*> subs;
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("--kernel,-k", cmd.kernel_specs, "Kernel, e.g. poisson:q=0.5 (repeat for n factors)");
    sub->add_option("--grid", cmd.grid, "Grid size (power of two)")->capture_default_str();
    sub->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output,-o", output, "Write the report to this path");
    if (v.verb != Verb::cvd_check && v.verb != Verb::convolve) {
      sub->add_option("--s", cmd.s, "Information order s (2s-1 coefficients per factor)")->required();
    }
    if (v.verb == Verb::recover || v.verb == Verb::convolve) {
      sub->add_option("--psi", cmd.psi_specs, "constant | box:center=,width= | trig:order=,seed= | atoms:count=,seed=");
    }
    if (v.verb == Verb::certify || v.verb == Verb::cvd_check || v.verb == Verb::recover) {
      sub->add_option("--seed", cmd.seed, "Base seed");
    }
    if (v.verb == Verb::certify || v.verb == Verb::cvd_check) {
      sub->add_option("--trials", cmd.trials, "Number of trials")->check(CLI::PositiveNumber);
    }
    if (v.verb == Verb::certify) {
      sub->add_option("--threads", cmd.threads, "Worker threads (results do not depend on it)")
          ->check(CLI::PositiveNumber);
      sub->add_option("--perturb-alpha", cmd.perturb_alpha, "Test hook: shift every multiplier");
    }
    if (v.verb == Verb::sharpness) sub->add_option("--widths", cmd.widths, "Box widths, decreasing");
    if (v.verb == Verb::convolve) sub->add_option("--order", cmd.order, "Output order")->check(CLI::NonNegativeNumber);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) cmd.verb = verbs[i].verb;
  }

  cmd.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
  if (!output.empty()) cmd.output = output;

  if (cmd.verb != Verb::convolve && cmd.kernel_specs.empty()) throw UsageError("at least one --kernel is required");
  if (cmd.verb == Verb::convolve && cmd.kernel_specs.empty() && cmd.psi_specs.empty()) {
    throw UsageError("convolve needs at least one --kernel or --psi operand");
  }
  if (cmd.s < 1) throw UsageError("--s must be positive");
  for (const auto& k : cmd.kernel_specs) {
    try {
      (void)Kernel::parse(k);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  for (const auto& p : cmd.psi_specs) {
    try {
      (void)PsiSpec::parse(p);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  return cmd;
}

int execute(const Command& cmd, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (cmd.output) {
    file.open(*cmd.output);
    if (!file) {
      err << "optconv: cannot open " << *cmd.output << " for writing\n";
      return kExitUsage;
    }
    os = &file;
  }
  try {
    switch (cmd.verb) {
      case Verb::bound: return run_bound(cmd, *os);
      case Verb::recover: return run_recover(cmd, *os);
      case Verb::certify: return run_certify(cmd, *os);
      case Verb::sharpness: return run_sharpness(cmd, *os);
      case Verb::cvd_check: return run_cvd(cmd, *os);
      case Verb::convolve: return run_convolve(cmd, *os);
    }
  } catch (const UsageError& e) {
    err << "optconv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "optconv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "optconv: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "optconv: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  return execute(cmd, out, err);
}

}  // namespace optconv::cli

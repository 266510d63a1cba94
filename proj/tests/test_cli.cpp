#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "optconv/cli.hpp"
#include "optconv/report.hpp"

using namespace optconv;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse examples") {
  const auto a = cli::parse({"bound", "--kernel", "poisson:q=0.5", "--kernel", "poisson:q=0.5", "--s", "1"});
  CHECK(a.verb == cli::Verb::bound);
  CHECK(a.kernel_specs.size() == 2);
  CHECK(a.s == 1);
  CHECK(a.grid == 16384);

  const auto b = cli::parse({"certify", "--kernel", "poisson:q=0.5", "--s", "2", "--trials", "200", "--seed", "1"});
  CHECK(b.verb == cli::Verb::certify);
  CHECK(b.s == 2);
  CHECK(b.trials == 200);
  CHECK(b.seed == 1);

  CHECK_THROWS_AS(cli::parse({"bound"}), cli::UsageError);
  CHECK_THROWS_AS(cli::parse({"bound", "--kernel", "poisson:q=0.5"}), cli::UsageError);
  CHECK_THROWS_AS(cli::parse({"bound", "--kernel", "poisson:q=2", "--s", "1"}), cli::UsageError);
  CHECK_THROWS_AS(cli::parse({"frobnicate"}), cli::UsageError);
  CHECK_THROWS_AS(cli::parse({"bound", "--kernel", "poisson:q=0.5", "--s", "1", "--format", "xml"}), cli::UsageError);
  CHECK_THROWS_AS(cli::parse({"--help"}), cli::HelpRequested);
}

TEST_CASE("exit statuses") {
  CHECK(run_cli({"bound"}).status == 2);
  CHECK(run_cli({}).status == 2);
  CHECK(run_cli({"--help"}).status == 0);
  CHECK(run_cli({"bound", "--kernel", "poisson:q=0.5", "--s", "1", "--grid", "1000"}).status == 2);
}

TEST_CASE("bound prints sigma and the optimal error") {
  const auto r = run_cli({"bound", "--kernel", "poisson:q=0.5", "--s", "1", "--format", "json"});
  CHECK(r.status == 0);
  const auto report = report_from_json(r.out);
  CHECK(report.bound == doctest::Approx(3.709181).epsilon(1e-6));
  CHECK(report.sigma == doctest::Approx(1.570796).epsilon(1e-6));
  CHECK(report.n == 1);

  const auto csv = run_cli({"bound", "--kernel", "poisson:q=0.5", "--s", "1", "--format", "csv"});
  CHECK(csv.out == "sigma,bound\n1.57079632679,3.70918087201\n");

  const auto text = run_cli({"bound", "--kernel", "bernoulli:r=1", "--s", "1"});
  CHECK(text.status == 0);
  CHECK(text.out.find("4.93480220054") != std::string::npos);
}

TEST_CASE("recover with constant inputs reproduces the single residual") {
  const auto r = run_cli({"recover", "--kernel", "poisson:q=0.5", "--s", "1", "--format", "json"});
  CHECK(r.status == 0);
  const auto report = report_from_json(r.out);
  REQUIRE(report.trials.size() == 1);
  CHECK(report.trials[0].residual == doctest::Approx(2.51327412287).epsilon(1e-9));
  CHECK(report.trials[0].ratio == doctest::Approx(0.677581980927).epsilon(1e-9));
  CHECK(run_cli({"recover", "--kernel", "poisson:q=0.5", "--s", "1", "--psi", "constant", "--psi", "constant"}).status == 2);
}

TEST_CASE("certify exits 1 when the multipliers are corrupted") {
  const std::vector<std::string> base{"certify", "--kernel", "poisson:q=0.5", "--s", "1", "--trials", "20", "--grid", "4096"};
  CHECK(run_cli(base).status == 0);
  auto bad = base;
  bad.insert(bad.end(), {"--perturb-alpha", "0.1", "--format", "json"});
  const auto r = run_cli(bad);
  CHECK(r.status == 1);
  CHECK(report_from_json(r.out).violations > 0);
}

TEST_CASE("certify output does not depend on the thread count") {
  const std::vector<std::string> base{"certify", "--kernel", "gauss:tau=0.2", "--kernel", "poisson:q=0.5", "--s", "2",
                                      "--trials", "16", "--grid", "4096", "--format", "json"};
  auto one = base, many = base;
  one.insert(one.end(), {"--threads", "1"});
  many.insert(many.end(), {"--threads", "8"});
  CHECK(run_cli(one).out == run_cli(many).out);
}

TEST_CASE("cvd-check reports passes") {
  const auto r = run_cli({"cvd-check", "--kernel", "poisson:q=0.5", "--trials", "100"});
  CHECK(r.status == 0);
  CHECK(r.out.find("100/100 pass") != std::string::npos);
}

TEST_CASE("sharpness and convolve run") {
  const auto s = run_cli({"sharpness", "--kernel", "poisson:q=0.5", "--s", "1", "--grid", "4096", "--widths", "0.5",
                          "--widths", "0.1", "--format", "csv"});
  CHECK(s.status == 0);
  const auto c = run_cli({"convolve", "--kernel", "poisson:q=0.5", "--psi", "constant", "--grid", "256", "--order", "2"});
  CHECK(c.status == 0);
  CHECK_FALSE(c.out.empty());
}

TEST_CASE("output goes to a file when requested") {
  const std::string path = "optconv_cli_test_output.json";
  const auto r = run_cli({"bound", "--kernel", "poisson:q=0.5", "--s", "1", "--format", "json", "--output", path});
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(report_from_json(content.str()).bound == doctest::Approx(3.70918087201));
  std::remove(path.c_str());
}

TEST_CASE("text, json and csv carry the same numbers") {
  const std::vector<std::string> base{"certify", "--kernel", "poisson:q=0.5", "--s", "1", "--trials", "4", "--grid", "4096", "--format"};
  auto with = [&](const char* fmt) {
    auto args = base;
    args.push_back(fmt);
    return run_cli(args).out;
  };
  const auto report = report_from_json(with("json"));
  const auto text = with("text");
  const auto csv = with("csv");
  REQUIRE(report.trials.size() == 4);
  for (const auto& t : report.trials) {
    const auto row = std::to_string(t.seed) + "," + format_number(t.residual) + "," + format_number(report.bound) + "," +
                     format_number(t.ratio);
    CHECK(csv.find(row) != std::string::npos);
    CHECK(text.find(format_number(t.residual)) != std::string::npos);
    CHECK(text.find(format_number(t.ratio)) != std::string::npos);
  }
  CHECK(text.find(format_number(report.sigma)) != std::string::npos);
}

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "optconv/best_l1.hpp"
#include "optconv/cli.hpp"
#include "optconv/convolution.hpp"
#include "optconv/error.hpp"
#include "optconv/harness.hpp"
#include "optconv/kernels.hpp"
#include "optconv/recovery.hpp"
#include "optconv/report.hpp"
#include "optconv/spectral.hpp"

namespace py = pybind11;
using namespace optconv;

namespace {

using Samples = py::array_t<double, py::array::c_style | py::array::forcecast>;

GridFunction to_grid(const Samples& samples, std::vector<double> jumps = {}) {
  if (samples.ndim() != 1) throw ArgumentError("samples must be one-dimensional");
  const double* p = samples.data();
  return GridFunction(std::vector<double>(p, p + samples.size()), std::move(jumps));
}

py::array_t<double> to_array(std::span<const double> v) { return py::array_t<double>(v.size(), v.data()); }

py::dict poly_dict(const TrigPoly& p) {
  py::dict d;
  d["a0"] = p.a0();
  d["a"] = p.a();
  d["b"] = p.b();
  return d;
}

std::vector<GridFunction> psi_grids(const py::list& psis, std::size_t grid) {
  std::vector<GridFunction> out;
  for (const auto& item : psis) {
    if (py::isinstance<py::str>(item)) {
      out.push_back(gen_psi(PsiSpec::parse(item.cast<std::string>()), grid));
    } else {
      out.push_back(to_grid(item.cast<Samples>()));
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_optconv, m) {
  m.doc() = "Optimal recovery of n-fold periodic convolutions from Fourier information";

  auto base = py::register_exception<Error>(m, "OptconvError", PyExc_RuntimeError);
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", base.ptr());
  py::register_exception<UnsupportedKernelError>(m, "UnsupportedKernelError", base.ptr());
  py::register_exception<InconsistentInterpolationError>(m, "InconsistentInterpolationError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());

  m.attr("DEFAULT_GRID") = kDefaultGrid;

  py::class_<Kernel>(m, "Kernel")
      .def_static("poisson", &Kernel::poisson, py::arg("q"))
      .def_static("gauss", &Kernel::gauss, py::arg("tau"))
      .def_static("bernoulli", &Kernel::bernoulli, py::arg("r") = 1, py::arg("beta") = 1.0 / kTwoPi)
      .def_static("parse", [](const std::string& s) { return Kernel::parse(s); }, py::arg("spec"))
      .def("coeff", &Kernel::coeff, py::arg("j"))
      .def("__call__", &Kernel::operator(), py::arg("t"))
      .def("jumps", &Kernel::jumps)
      .def("__eq__", [](const Kernel& a, const Kernel& b) { return a == b; })
      .def("__str__", &Kernel::to_string)
      .def("__repr__", [](const Kernel& k) { return "Kernel.parse('" + k.to_string() + "')"; });

  m.def(
      "fourier_coeff", [](const Samples& f, int j) { return fourier_coeff(to_grid(f), j); }, py::arg("samples"),
      py::arg("j"));
  m.def(
      "project", [](const Samples& f, int d) { return poly_dict(project(to_grid(f), d)); }, py::arg("samples"),
      py::arg("d"));
  m.def(
      "norm_L1", [](const Samples& f, std::vector<double> jumps) { return norm_L1(to_grid(f, std::move(jumps))); },
      py::arg("samples"), py::arg("jumps") = std::vector<double>{});
  m.def(
      "norm_C",
      [](const Samples& f) {
        const auto e = norm_C(to_grid(f));
        return py::make_tuple(e.value, e.argmax);
      },
      py::arg("samples"));
  m.def(
      "phi_s", [](int s, std::size_t grid) { return to_array(phi_s(s, grid).samples()); }, py::arg("s"),
      py::arg("grid"));

  m.def(
      "convolve",
      [](const py::list& operands, int order) {
        ConvSpec spec;
        for (const auto& item : operands) {
          if (py::isinstance<Kernel>(item)) {
            spec.factors.emplace_back(item.cast<Kernel>());
          } else {
            spec.factors.emplace_back(to_grid(item.cast<Samples>()));
          }
        }
        return poly_dict(convolve_spectral(spec, order));
      },
      py::arg("operands"), py::arg("order"),
      "Order-`order` partial sum of the convolution of kernels and sampled functions.");

  m.def(
      "optimal_error",
      [](const std::vector<Kernel>& kernels, int s, std::size_t grid) { return optimal_error(kernels, s, grid); },
      py::arg("kernels"), py::arg("s"), py::arg("grid") = kDefaultGrid);

  m.def(
      "plan",
      [](const std::vector<Kernel>& kernels, int s, std::size_t grid) {
        const auto plan = plan_recovery(kernels, s, grid);
        py::dict d;
        d["s"] = plan.s;
        d["grid"] = plan.grid;
        d["sigma"] = plan.extremal.sigma;
        d["bound"] = plan.bound;
        d["interpolant"] = poly_dict(plan.interpolant.poly);
        d["nodes"] = plan.interpolant.nodes;
        d["node_residual"] = plan.interpolant.node_residual;
        d["l1_error"] = plan.interpolant.l1_error;
        std::vector<Complex> alpha;
        for (int j = 0; j < s; ++j) alpha.push_back(plan.multipliers.alpha(j));
        d["alpha"] = alpha;
        return d;
      },
      py::arg("kernels"), py::arg("s"), py::arg("grid") = kDefaultGrid,
      "sigma, the interpolating polynomial, the multipliers alpha_0..alpha_{s-1} and the bound.");

  m.def(
      "recover",
      [](const std::vector<Kernel>& kernels, int s, const py::list& xs, std::size_t grid) {
        if (static_cast<std::size_t>(py::len(xs)) != kernels.size()) throw ArgumentError("need one x per kernel");
        const auto mult = multipliers(kernels, s, grid);
        std::vector<InfoVector> infos;
        for (const auto& x : xs) infos.push_back(extract_info(to_grid(x.cast<Samples>()), s));
        return poly_dict(recover(infos, mult));
      },
      py::arg("kernels"), py::arg("s"), py::arg("xs"), py::arg("grid") = kDefaultGrid,
      "Optimal estimate of x_1 * ... * x_n from the first 2s-1 Fourier coefficients of each sampled x_l.");

  m.def(
      "residual_error",
      [](const std::vector<Kernel>& kernels, int s, const py::list& psis, std::size_t grid) {
        const auto plan = plan_recovery(kernels, s, grid);
        const auto r = residual_error(psi_grids(psis, grid), plan);
        py::dict d;
        d["residual"] = r.residual;
        d["bound"] = r.bound;
        d["ratio"] = r.ratio;
        return d;
      },
      py::arg("kernels"), py::arg("s"), py::arg("psis"), py::arg("grid") = kDefaultGrid,
      "Recovery error for x_l = K_l * psi_l; psis are sample arrays or psi spec strings.");

  m.def(
      "gen_psi", [](const std::string& spec, std::size_t grid) { return to_array(gen_psi(PsiSpec::parse(spec), grid).samples()); },
      py::arg("spec"), py::arg("grid") = kDefaultGrid);

  m.def(
      "certify",
      [](const std::vector<Kernel>& kernels, int s, int trials, std::uint64_t seed, std::size_t grid, int threads,
         double perturb_alpha) {
        std::string json;
        {
          py::gil_scoped_release release;
          const auto plan = plan_recovery(kernels, s, grid);
          json = report_to_json(run_certification(plan, trials, seed, threads, perturb_alpha));
        }
        return json;
      },
      py::arg("kernels"), py::arg("s"), py::arg("trials") = 200, py::arg("seed") = 1, py::arg("grid") = kDefaultGrid,
      py::arg("threads") = 1, py::arg("perturb_alpha") = 0.0, "Certification report as a JSON string.");

  m.def(
      "sharpness",
      [](const std::vector<Kernel>& kernels, int s, const std::vector<double>& widths, std::size_t grid) {
        std::vector<py::tuple> rows;
        for (const auto& p : sharpness_experiment(kernels, s, widths, grid))
          rows.push_back(py::make_tuple(p.width, p.ratio, p.center));
        return rows;
      },
      py::arg("kernels"), py::arg("s"), py::arg("widths"), py::arg("grid") = kDefaultGrid);

  m.def(
      "sign_changes", [](const Samples& f, double band) { return sign_changes(to_grid(f), band); }, py::arg("samples"),
      py::arg("band") = 0.0);

  m.def(
      "cvd_check",
      [](const Kernel& k, int trials, std::uint64_t seed) {
        const auto r = cvd_check(k, trials, seed);
        py::dict d;
        d["trials"] = r.trials;
        d["passes"] = r.passes;
        d["failures"] = r.failures;
        d["degenerate"] = r.degenerate;
        return d;
      },
      py::arg("kernel"), py::arg("trials") = 100, py::arg("seed") = 1);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int status = cli::run(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end in-process; returns (status, stdout, stderr).");
}

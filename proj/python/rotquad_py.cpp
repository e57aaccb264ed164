#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "rotquad/cli.hpp"
#include "rotquad/error.hpp"
#include "rotquad/rotation_invariant.hpp"
#include "rotquad/symmetry_algebra.hpp"

namespace py = pybind11;
using namespace rotquad;

namespace {

// Points cross the boundary as complex numbers, or None for infinity.
SpherePoint to_point(const std::optional<std::complex<double>>& z) {
  return z ? SpherePoint(*z) : SpherePoint::infinity();
}

MarkedTuple to_tuple(const std::vector<std::optional<std::complex<double>>>& pts) {
  if (pts.size() != 4) throw Error(ErrorKind::InvalidInput, "a marked tuple has four points");
  return {to_point(pts[0]), to_point(pts[1]), to_point(pts[2]), to_point(pts[3])};
}

MapSpec to_map(const std::string& map_json) { return cli::parse_map(nlohmann::json::parse(map_json)); }

std::vector<std::vector<int>> rows(const IntMatrix3& m) {
  return {{m.m[0].begin(), m.m[0].end()}, {m.m[1].begin(), m.m[1].end()}, {m.m[2].begin(), m.m[2].end()}};
}

}  // namespace

PYBIND11_MODULE(_rotquad, m) {
  m.doc() = "R_f rotation invariants and the S4 representation Theta";

  py::register_exception<Error>(m, "RotquadError");

  m.def(
      "rf",
      [](const std::string& map_json, const std::vector<std::optional<std::complex<double>>>& points,
         const std::string& method, std::uint64_t seed) -> std::optional<int> {
        EngineOptions opts;
        opts.seed = seed;
        return compute_rf(to_map(map_json), to_tuple(points), parse_method(method), opts, 0).value;
      },
      py::arg("map_json"), py::arg("points"), py::arg("method") = "loop", py::arg("seed") = 0,
      "R_f of four fixed points; None when inconclusive or unsupported.");

  m.def(
      "rf_blowup",
      [](const std::string& map_json, std::optional<std::complex<double>> p, std::optional<std::complex<double>> x2,
         std::optional<std::complex<double>> x4, long n_iters, bool extrapolate) {
        BlowupOptions opts;
        opts.n_iters = n_iters;
        opts.extrapolate = extrapolate;
        const BlowupEstimate e = rf_blowup(to_map(map_json), to_point(p), to_point(x2), to_point(x4), opts);
        py::dict d;
        d["value"] = e.value;
        d["error_bound"] = e.error_bound;
        d["certified"] = e.certified;
        d["rigid"] = e.rigid;
        return d;
      },
      py::arg("map_json"), py::arg("p"), py::arg("x2"), py::arg("x4"), py::arg("n_iters") = 10000,
      py::arg("extrapolate") = false);

  m.def(
      "rf_double_blowup",
      [](const std::string& map_json, std::optional<std::complex<double>> p1, std::optional<std::complex<double>> p2) {
        return rf_double_blowup(to_map(map_json), to_point(p1), to_point(p2));
      },
      py::arg("map_json"), py::arg("p1"), py::arg("p2"));

  m.def(
      "parse_cycles",
      [](const std::string& text) {
        const Permutation p = parse_cycles(text);
        return std::vector<int>(p.images().begin(), p.images().end());
      },
      py::arg("text"), "Images [sigma(1), ..., sigma(4)].");
  m.def("theta", [](const std::string& perm) { return rows(theta(parse_cycles(perm))); }, py::arg("perm"));
  m.def("theta_action", [](const std::string& perm) { return rows(theta_action(parse_cycles(perm))); },
        py::arg("perm"));
  m.def("theta_kernel_image", [] {
    const KernelImage ki = theta_kernel_image();
    std::vector<std::string> kernel;
    for (const Permutation& p : ki.kernel) kernel.push_back(to_string(p));
    return std::make_pair(kernel, ki.image_size);
  });

  m.def(
      "compute",
      [](const std::string& scenario_json) {
        int code = 0;
        const auto report = cli::compute_report(cli::parse_scenario(nlohmann::json::parse(scenario_json)), code);
        return std::make_pair(code, report.dump());
      },
      py::arg("scenario_json"), "(exit code, report JSON) of the compute command.");
  m.def(
      "verify",
      [](const std::string& scenario_json, const std::string& suite) {
        int code = 0;
        std::optional<cli::ScenarioConfig> config;
        if (!scenario_json.empty()) config = cli::parse_scenario(nlohmann::json::parse(scenario_json));
        const auto report = cli::verify_report(config, suite, code);
        return std::make_pair(code, report.dump());
      },
      py::arg("scenario_json"), py::arg("suite") = "all");

  m.attr("__version__") = cli::kVersion;
}

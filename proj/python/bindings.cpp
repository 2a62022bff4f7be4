#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwass/closedform.hpp"
#include "qwass/cost.hpp"
#include "qwass/errors.hpp"
#include "qwass/instance.hpp"
#include "qwass/report.hpp"
#include "qwass/transport.hpp"
#include "qwass/verify.hpp"

namespace py = pybind11;
using namespace qwass;

namespace {

SdpOptions options(std::optional<double> tol) {
  SdpOptions opts;
  if (tol) {
    opts.tol_gap = *tol;
    opts.tol_feas = *tol;
  }
  return opts;
}

py::list matrices(const std::vector<HermitianMatrix>& ms) {
  py::list out;
  for (const auto& m : ms) out.append(ComplexMatrix(m.matrix()));
  return out;
}

py::dict transport_dict(const TransportResult& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["iterations"] = r.iterations;
  d["primal"] = r.primal;
  d["dual"] = r.dual;
  d["gap"] = r.gap;
  d["distance"] = r.distance;
  d["coupling"] = ComplexMatrix(r.coupling.matrix());
  d["x"] = matrices(r.potentials.x);
  d["y"] = matrices(r.potentials.y);
  d["dual_attained"] = r.dual_attained;
  d["degenerate"] = r.degenerate;
  d["certified"] = r.certificate.passed;
  return d;
}

py::dict divergence_dict(const DivergenceResult& r) {
  py::dict d;
  d["cross"] = r.cross;
  d["self_rho"] = r.self_rho;
  d["self_omega"] = r.self_omega;
  d["squared"] = r.squared;
  d["value"] = r.value;
  return d;
}

DensityMatrix density(const ComplexMatrix& m) { return DensityMatrix(m); }

}  // namespace

PYBIND11_MODULE(_qwass, m) {
  m.doc() = "Quantum Wasserstein distances and divergences";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<SolverError>(m, "SolverError", error.ptr());
  py::register_exception<DimensionBudgetError>(m, "DimensionBudgetError", error.ptr());

  m.def("cost_symm", [](double p) { return ComplexMatrix(cost_symm(p).matrix()); }, py::arg("p"));
  m.def("cost_z", [](double p) { return ComplexMatrix(cost_z(p).matrix()); }, py::arg("p"));
  m.def(
      "state_from_bloch",
      [](double x, double y, double z) { return ComplexMatrix(state_from_bloch({{x, y, z}}).matrix()); },
      py::arg("x"), py::arg("y"), py::arg("z"));

  m.def(
      "distance",
      [](const ComplexMatrix& rho, const ComplexMatrix& omega, const ComplexMatrix& cost, double p,
         std::optional<double> tol) {
        const auto inst = TransportInstance::joint(density(rho), density(omega), HermitianMatrix(cost), p);
        return transport_dict(wasserstein_distance(inst, options(tol)));
      },
      py::arg("rho"), py::arg("omega"), py::arg("cost"), py::arg("p"), py::arg("tol") = py::none(),
      "Optimal coupling, potentials and D^p for a cost operator on H (x) H*.");

  m.def(
      "divergence",
      [](const ComplexMatrix& rho, const ComplexMatrix& omega, const ComplexMatrix& cost, std::optional<double> tol) {
        return divergence_dict(divergence_quadratic(density(rho), density(omega), HermitianMatrix(cost), options(tol)));
      },
      py::arg("rho"), py::arg("omega"), py::arg("cost"), py::arg("tol") = py::none(),
      "Quadratic divergence d^2 = D^2(rho, omega) - (D^2(rho, rho) + D^2(omega, omega)) / 2.");

  m.def(
      "gap_demo",
      [](double p, bool joint) {
        const GapDemoResult r = gap_demo(p, joint);
        py::dict d;
        d["p"] = r.p;
        d["nonlinear"] = r.nonlinear;
        d["linearized"] = r.linearized;
        d["per_factor"] = r.per_factor;
        d["joint"] = r.joint;
        return d;
      },
      py::arg("p"), py::arg("joint") = false);

  m.def("d_symm_commuting", &d_symm_commuting, py::arg("alpha"), py::arg("beta"), py::arg("p"));
  m.def("d_z_xy", &d_z_xy, py::arg("alpha"), py::arg("beta"), py::arg("p"));
  m.def("d_z_commuting", &d_z_commuting, py::arg("alpha"), py::arg("beta"), py::arg("p"));
  m.def("divergence_z_xy", &divergence_z_xy, py::arg("r1"), py::arg("r2"));
  m.def("divergence_z_commuting", &divergence_z_commuting, py::arg("alpha"), py::arg("beta"));

  m.def(
      "solve_instance",
      [](const std::string& text) {
        const InstanceFile file = parse_instance(text);
        const TransportResult r = wasserstein_distance(make_instance(file));
        return serialize(make_distance_record(file, r, 0.0));
      },
      py::arg("text"), "Parses an instance file and returns the JSON report line.");

  m.def(
      "verify",
      [](const std::string& suite, int density, int samples, std::uint64_t seed) {
        VerifyOptions opts;
        opts.density = density;
        opts.samples = samples;
        opts.seed = seed;
        const VerifyReport r = run_verify(suite, opts);
        py::dict d;
        d["suite"] = r.suite;
        d["cases"] = r.cases.size();
        d["failures"] = r.failures;
        d["exploratory"] = r.exploratory;
        d["passed"] = r.passed;
        return d;
      },
      py::arg("suite"), py::arg("density") = 21, py::arg("samples") = 0, py::arg("seed") = 1);
  m.def("verify_suites", &verify_suites);
}

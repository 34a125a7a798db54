#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "dnls/apriori.hpp"
#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"
#include "dnls/harness/config.hpp"
#include "dnls/harness/scenarios.hpp"
#include "dnls/imethod.hpp"
#include "dnls/multiplier.hpp"
#include "dnls/spectral.hpp"

namespace py = pybind11;
using namespace dnls;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

template <class T>
py::array_t<T> to_numpy(std::span<const T> s) {
  return py::array_t<T>(static_cast<py::ssize_t>(s.size()), s.data());
}

Field field_from_array(const Grid& g, const ComplexArray& a, Frame frame) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.size()) != g.size()) {
    throw PreconditionError("sample array must be one-dimensional with grid.size entries");
  }
  return Field(g, std::vector<cplx>(a.data(), a.data() + a.size()), frame);
}

py::dict report_dict(const InequalityReport& r) {
  py::dict d;
  d["label"] = r.label;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["slack"] = r.slack;
  d["satisfied"] = r.satisfied;
  return d;
}

py::dict trajectory_dict(const Trajectory& t) {
  const std::vector<std::pair<const char*, double DiagnosticsRow::*>> cols{
      {"t", &DiagnosticsRow::t},
      {"mass", &DiagnosticsRow::mass},
      {"momentum", &DiagnosticsRow::momentum},
      {"energy", &DiagnosticsRow::energy},
      {"h1_seminorm", &DiagnosticsRow::h1_seminorm},
      {"hhalf_norm", &DiagnosticsRow::hhalf_norm},
      {"PI", &DiagnosticsRow::modified_momentum},
      {"EI", &DiagnosticsRow::modified_energy},
      {"mass_drift_rel", &DiagnosticsRow::mass_drift_rel},
      {"momentum_drift_rel", &DiagnosticsRow::momentum_drift_rel},
      {"energy_drift_rel", &DiagnosticsRow::energy_drift_rel}};
  py::dict diag;
  for (const auto& [name, member] : cols) {
    py::array_t<double> a(static_cast<py::ssize_t>(t.diagnostics.size()));
    auto w = a.mutable_unchecked<1>();
    for (std::size_t i = 0; i < t.diagnostics.size(); ++i) w(i) = t.diagnostics[i].*member;
    diag[name] = a;
  }
  py::dict d;
  d["diagnostics"] = diag;
  d["final_state"] = t.final_state ? py::cast(*t.final_state) : py::none();
  d["completed"] = t.completed();
  d["abort_reason"] = std::string(to_string(t.abort));
  d["abort_message"] = t.abort_message;
  d["warnings"] = t.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudospectral DNLS lab";

  auto base = py::register_exception<Error>(m, "Error");
  auto pre = py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<FrameMismatch>(m, "FrameMismatch", pre.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::enum_<Frame>(m, "Frame").value("ORIGINAL", Frame::Original).value("GAUGED", Frame::Gauged);

  py::class_<Grid>(m, "Grid")
      .def(py::init<double, std::size_t>(), py::arg("L"), py::arg("n"))
      .def_property_readonly("L", &Grid::half_length)
      .def_property_readonly("n", &Grid::size)
      .def_property_readonly("dx", &Grid::dx)
      .def_property_readonly("dk", &Grid::frequency_step)
      .def_property_readonly("nyquist", &Grid::nyquist)
      .def_property_readonly("x", [](const Grid& g) { return to_numpy(g.nodes()); })
      .def_property_readonly("xi", [](const Grid& g) { return to_numpy(g.frequencies()); })
      .def("__len__", &Grid::size)
      .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; })
      .def("__repr__", [](const Grid& g) {
        std::ostringstream s;
        s << "Grid(L=" << g.half_length() << ", n=" << g.size() << ")";
        return s.str();
      });

  py::class_<Field>(m, "Field")
      .def(py::init(&field_from_array), py::arg("grid"), py::arg("samples"), py::arg("frame") = Frame::Original)
      .def_property_readonly("grid", &Field::grid)
      .def_property_readonly("frame", &Field::frame)
      .def_property_readonly("samples", [](const Field& f) { return to_numpy(f.samples()); })
      .def("retagged", &Field::retagged)
      .def("__len__", &Field::size);

  m.def("transform", [](const Field& f) { const auto s = transform(f); return to_numpy(s.coeffs()); },
        "Fourier coefficients ordered like grid.xi");
  m.def("derivative", &derivative);
  m.def("fractional_derivative", &fractional_derivative, py::arg("f"), py::arg("s"));
  m.def("bessel_norm", py::overload_cast<const Field&, double>(&bessel_norm), py::arg("f"), py::arg("s"));
  m.def("homogeneous_norm", py::overload_cast<const Field&, double>(&homogeneous_norm), py::arg("f"),
        py::arg("s"));
  m.def("lp_norm", &lp_norm, py::arg("f"), py::arg("p"));

  m.def("gauge_forward", [](const Field& u) { return gauge_forward(u); });
  m.def("gauge_inverse", [](const Field& v) { return gauge_inverse(v); });

  py::class_<ConservedSet>(m, "ConservedSet")
      .def_readonly("mass", &ConservedSet::mass)
      .def_readonly("momentum", &ConservedSet::momentum)
      .def_readonly("energy", &ConservedSet::energy)
      .def("__repr__", [](const ConservedSet& q) {
        std::ostringstream s;
        s.precision(17);
        s << "ConservedSet(mass=" << q.mass << ", momentum=" << q.momentum << ", energy=" << q.energy << ")";
        return s.str();
      });
  m.def("mass", &mass);
  m.def("momentum_gauged", &momentum_gauged);
  m.def("energy_gauged", &energy_gauged);
  m.def("momentum_original", &momentum_original);
  m.def("energy_original", &energy_original);
  m.def("conserved", &conserved);

  m.def("sharp_constants", [] {
    const auto& c = sharp_constants();
    py::dict d;
    d["c_gn6"] = c.c_gn6;
    d["c_gn"] = c.c_gn;
    d["c_gn_pow_minus18"] = c.c_gn_pow_minus18;
    d["f_argmax"] = c.f_argmax;
    d["f_max"] = c.f_max;
    return d;
  });
  m.def("cubic_f", &cubic_f);
  m.def("check_gn_sextic", [](const Field& f) { return report_dict(check_gn_sextic(f)); });
  m.def("check_gn_interp", [](const Field& f) { return report_dict(check_gn_interp(f)); });
  m.def("momentum_lower_bound", [](const Field& v) { return report_dict(momentum_lower_bound(v)); });
  m.def("modulation_identity", [](const Field& v, double a) { return report_dict(modulation_identity(v, a)); });
  m.def("kinetic_l4_bound", [](const Field& v) { return report_dict(kinetic_l4_bound(v)); });
  m.def("check_l4_bound", [](const Field& v) { return report_dict(check_l4_bound(v)); });
  m.def("check_h1_bound", [](const Field& v) { return report_dict(check_h1_bound(v)); });
  m.def("l4_bound", &l4_bound, py::arg("mass_sqrt"), py::arg("momentum"), py::arg("energy"));
  m.def("h1_bound", [](double s, double p, double e) { return h1_bound(s, p, e).value; }, py::arg("mass_sqrt"),
        py::arg("momentum"), py::arg("energy"));
  m.def("gamma0", &gamma0);
  m.def("below_mass_threshold", &below_mass_threshold);

  m.def("multiplier_symbol", py::vectorize(&multiplier_symbol), py::arg("N"), py::arg("xi"));
  py::class_<IMultiplier>(m, "IMultiplier")
      .def(py::init<double, Grid>(), py::arg("N"), py::arg("grid"))
      .def_property_readonly("N", &IMultiplier::cutoff)
      .def_property_readonly("values", [](const IMultiplier& im) { return to_numpy(im.values()); });
  m.def("apply_I", py::overload_cast<const Field&, const IMultiplier&>(&apply_I));
  m.def("rescale", [](const Field& f, double lambda) { return rescale(f, lambda); });
  m.def("modified_functionals", &modified_functionals);

  m.def(
      "gwp_budget",
      [](double mass, double hhalf, double T, double epsilon, double rescale_constant) {
        GwpBudgetInput in;
        if (!(mass >= 0.0)) throw PreconditionError("mass must be nonnegative");
        in.mass_sqrt = std::sqrt(mass);
        in.hhalf = hhalf;
        in.target_time = T;
        in.epsilon = epsilon;
        in.rescale_constant = rescale_constant;
        const auto b = gwp_budget(in);
        py::dict d;
        d["gamma0"] = b.gamma0;
        d["eps0"] = b.eps0;
        d["c_lambda"] = b.c_lambda;
        d["exponent"] = b.exponent;
        d["log2_N"] = b.log2_cutoff;
        d["N"] = b.cutoff;
        d["lambda"] = b.lambda;
        d["log2_T0"] = b.log2_T0;
        d["T0"] = b.T0;
        d["guaranteed_time"] = b.guaranteed_time;
        return d;
      },
      py::arg("mass"), py::arg("hhalf") = 1.0, py::arg("T") = 1.0, py::arg("epsilon") = 0.125,
      py::arg("rescale_constant") = GwpBudgetInput{}.rescale_constant);

  m.def(
      "evolve",
      [](const Field& f0, double dt, double t_end, Frame frame, std::size_t record_stride, double drift_tol,
         bool dealias, std::optional<double> monitor_cutoff) {
        SimConfig cfg;
        cfg.dt = dt;
        cfg.t_end = t_end;
        cfg.frame = frame;
        cfg.record_stride = record_stride;
        cfg.drift_tol = drift_tol;
        cfg.dealias = dealias;
        cfg.keep_snapshots = false;
        std::optional<IMultiplier> mon;
        if (monitor_cutoff) mon.emplace(*monitor_cutoff, f0.grid());
        Trajectory t;
        {
          py::gil_scoped_release release;
          t = evolve(f0, cfg, mon ? &*mon : nullptr);
        }
        return trajectory_dict(t);
      },
      py::arg("f0"), py::arg("dt") = 1e-4, py::arg("t_end") = 1.0, py::arg("frame") = Frame::Gauged,
      py::arg("record_stride") = 100, py::arg("drift_tol") = 1e-6, py::arg("dealias") = true,
      py::arg("monitor_cutoff") = py::none());

  m.def(
      "run_scenario",
      [](const std::string& scenario, const std::filesystem::path& config, const std::filesystem::path& out,
         std::optional<std::size_t> workers, std::optional<std::uint64_t> seed) {
        harness::RunOptions o;
        o.scenario = scenario;
        o.config = harness::load_config(config);
        o.out = out;
        o.workers = workers;
        o.seed = seed;
        std::ostringstream err;
        int rc;
        {
          py::gil_scoped_release release;
          rc = harness::run(o, err);
        }
        return py::make_tuple(rc, err.str());
      },
      py::arg("scenario"), py::arg("config"), py::arg("out"), py::arg("workers") = py::none(),
      py::arg("seed") = py::none(), "Runs a CLI scenario; returns (exit_code, stderr text).");

  m.attr("__version__") = harness::kToolVersion;
}

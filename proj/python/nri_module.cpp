#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nri/pipeline.hpp"

namespace py = pybind11;
using namespace nri;

namespace {

py::dict quartet_dict(const PolarizabilityQuartet& q) {
  py::dict d;
  d["aEE"] = q.aEE;
  d["aEB"] = q.aEB;
  d["aBE"] = q.aBE;
  d["aBB"] = q.aBB;
  return d;
}

py::dict point_dict(const PointResult& r) {
  py::dict d = quartet_dict(r.q);
  d["x"] = r.x;
  d["Delta"] = r.Delta;
  d["eps"] = r.m.eps;
  d["mu"] = r.m.mu;
  d["xiEH"] = r.m.xiEH;
  d["xiHE"] = r.m.xiHE;
  d["n"] = r.n.n;
  d["fom"] = r.n.fom;
  d["branch"] = branch_flag_name(r.n.branch);
  d["zinv"] = r.zinv;
  d["error"] = r.error;
  return d;
}

// column arrays for a sweep, one entry per point
py::dict sweep_dict(const std::vector<PointResult>& rows) {
  const auto n = static_cast<py::ssize_t>(rows.size());
  py::array_t<double> x(n), fom(n);
  py::array_t<std::complex<double>> eps(n), mu(n), xiEH(n), xiHE(n), idx(n), zinv(n);
  py::list err;
  for (py::ssize_t i = 0; i < n; ++i) {
    const auto& r = rows[i];
    x.mutable_at(i) = r.x;
    fom.mutable_at(i) = r.n.fom;
    eps.mutable_at(i) = r.m.eps;
    mu.mutable_at(i) = r.m.mu;
    xiEH.mutable_at(i) = r.m.xiEH;
    xiHE.mutable_at(i) = r.m.xiHE;
    idx.mutable_at(i) = r.n.n;
    zinv.mutable_at(i) = r.zinv;
    err.append(r.error);
  }
  py::dict d;
  d["x"] = x;
  d["eps"] = eps;
  d["mu"] = mu;
  d["xiEH"] = xiEH;
  d["xiHE"] = xiHE;
  d["n"] = idx;
  d["fom"] = fom;
  d["zinv"] = zinv;
  d["error"] = err;
  return d;
}

MediumResponse medium(cd eps, cd mu, cd xiEH, cd xiHE) {
  MediumResponse m;
  m.eps = eps;
  m.mu = mu;
  m.xiEH = xiEH;
  m.xiHE = xiHE;
  return m;
}

}  // namespace

PYBIND11_MODULE(_nri, m) {
  m.doc() = "Chiral negative-index atomic medium: response functions and sweeps";

  static py::exception<Error> exc(m, "NriError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, e.what());
    }
  });

  m.attr("HBAR") = kHbar;
  m.attr("LIGHT_SPEED") = kLightSpeed;

  py::class_<SystemParams>(m, "SystemParams")
      .def_readwrite("gamma", &SystemParams::gamma)
      .def_readwrite("d34", &SystemParams::d34)
      .def_readwrite("mu21", &SystemParams::mu21)
      .def_readwrite("omega1", &SystemParams::omega1)
      .def_readwrite("omega2", &SystemParams::omega2)
      .def_readwrite("omegac", &SystemParams::omegac)
      .def_readwrite("Omega1", &SystemParams::Omega1)
      .def_readwrite("Omega2", &SystemParams::Omega2)
      .def_readwrite("Omegac_abs", &SystemParams::Omegac_abs)
      .def_readwrite("Omegac_phase", &SystemParams::Omegac_phase)
      .def_readwrite("lambda_probe", &SystemParams::lambda_probe)
      .def("validate", &SystemParams::validate);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def("entries", &RunConfig::entries)
      .def("set", &RunConfig::set)
      .def("params", &RunConfig::params)
      .def_property_readonly("gamma2", &RunConfig::gamma2)
      .def_property_readonly("gammap", &RunConfig::gammap)
      .def("__repr__", [](const RunConfig& c) { return py::repr(py::cast(c.entries())); });
  m.def("parse_config", &parse_config, py::arg("text"));

  m.def("default_paper_params", &default_paper_params);
  m.def("wigner_weisskopf_dipole", &wigner_weisskopf_dipole, py::arg("gamma"), py::arg("omega"));
  m.def("resonance_check", [](const SystemParams& p) {
    const auto r = resonance_check(p);
    return py::make_tuple(r.pass, r.residual);
  });
  m.def("dark_state", [](double O1, double O2) {
    const auto d = dark_state_populations(O1, O2);
    py::dict out;
    out["rho11"] = d.rho11;
    out["rho44"] = d.rho44;
    out["rho41"] = d.rho41;
    return out;
  });

  m.def(
      "quartet",
      [](const RunConfig& c, double Delta, double doppler_sigma) {
        const auto p = c.params();
        BroadeningSpec b{c.gammap(), doppler_sigma, 41};
        return quartet_dict(broadened_quartet(p, ProbeDetunings::sweep(Delta), dark_state(p), b));
      },
      py::arg("config"), py::arg("Delta"), py::arg("doppler_sigma") = 0.0,
      "linear polarizabilities (cm^3) at detuning Delta (rad/s)");

  m.def(
      "exact_quartet",
      [](const RunConfig& c, double Delta, double OmegaE, double OmegaB) {
        return quartet_dict(separated_polarizabilities_rabi(
            c.params(), ProbeDetunings::sweep(Delta), OmegaE, OmegaB, c.gammap()));
      },
      py::arg("config"), py::arg("Delta"), py::arg("OmegaE"), py::arg("OmegaB"),
      "all-order polarizabilities from the steady-state density matrix");

  m.def(
      "evaluate",
      [](const RunConfig& c, double Delta, bool nonchiral) {
        auto model = Model::from_config(c);
        model.nonchiral = nonchiral;
        return point_dict(evaluate_point(model, Delta));
      },
      py::arg("config"), py::arg("Delta"), py::arg("nonchiral") = false);

  m.def(
      "sweep",
      [](const RunConfig& c, const std::string& variable, const std::vector<double>& values,
         double Delta, bool nonchiral) {
        static const std::map<std::string, SweepVariable> names = {
            {"detuning", SweepVariable::detuning},
            {"density", SweepVariable::density},
            {"phase", SweepVariable::phase},
            {"omegac_abs", SweepVariable::omegac_abs},
            {"theta", SweepVariable::theta}};
        const auto it = names.find(variable);
        if (it == names.end()) throw Error(ErrorCode::configuration, "unknown sweep variable " + variable);
        auto model = Model::from_config(c);
        model.nonchiral = nonchiral;
        std::vector<PointResult> rows;
        {
          py::gil_scoped_release release;
          rows = sweep(model, it->second, values, Delta);
        }
        return sweep_dict(rows);
      },
      py::arg("config"), py::arg("variable"), py::arg("values"), py::arg("Delta") = 0.0,
      py::arg("nonchiral") = false);

  m.def(
      "impedance_find",
      [](const RunConfig& c, double log_oc_lo, double log_oc_hi, int grid, double cap) {
        ImpedanceOptions o;
        o.log_oc_lo = log_oc_lo;
        o.log_oc_hi = log_oc_hi;
        o.grid_delta = o.grid_oc = grid;
        o.cap = cap;
        ImpedanceReport r;
        {
          py::gil_scoped_release release;
          r = impedance_find(Model::from_config(c), o);
        }
        py::dict d = point_dict(r.point);
        d["found"] = r.found;
        d["objective"] = r.objective;
        d["Omegac_abs"] = r.Omegac_abs;
        return d;
      },
      py::arg("config"), py::arg("log_oc_lo") = -1.0, py::arg("log_oc_hi") = 1.0,
      py::arg("grid") = 81, py::arg("cap") = 1e-3);

  m.def(
      "refractive_index",
      [](cd eps, cd mu, cd xiEH, cd xiHE) {
        const auto r = refractive_index(medium(eps, mu, xiEH, xiHE));
        return py::make_tuple(r.n, branch_flag_name(r.branch));
      },
      py::arg("eps"), py::arg("mu"), py::arg("xiEH") = cd{}, py::arg("xiHE") = cd{});
  m.def(
      "inverse_impedance",
      [](cd eps, cd mu, cd xiEH, cd xiHE) { return inverse_impedance(medium(eps, mu, xiEH, xiHE)); },
      py::arg("eps"), py::arg("mu"), py::arg("xiEH") = cd{}, py::arg("xiHE") = cd{});
  m.def(
      "fresnel_reflection",
      [](cd eps1, cd mu1, cd eps, cd mu, cd xiEH, cd xiHE) {
        return fresnel_reflection(eps1, mu1, medium(eps, mu, xiEH, xiHE));
      },
      py::arg("eps1"), py::arg("mu1"), py::arg("eps"), py::arg("mu"), py::arg("xiEH") = cd{},
      py::arg("xiHE") = cd{});
  m.def("figure_of_merit", [](cd n) { return figure_of_merit(n).value; }, py::arg("n"));
  m.def("superlens_tolerance", &superlens_tolerance, py::arg("d"), py::arg("dx"));
  m.def(
      "index_vs_angle",
      [](cd eps, cd mu, cd xiEH, cd xiHE, double theta) {
        return index_vs_angle(eps, mu, xiEH, xiHE, theta).n;
      },
      py::arg("eps"), py::arg("mu"), py::arg("xiEH"), py::arg("xiHE"), py::arg("theta"));
  m.def(
      "kramers_kronig_residual",
      [](const std::vector<cd>& z, double edge_ratio) {
        KkOptions o;
        o.edge_ratio = edge_ratio;
        return kramers_kronig_residual(z, o);
      },
      py::arg("samples"), py::arg("edge_ratio") = 1e-3);
}

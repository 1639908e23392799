#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "becrad/errors.hpp"
#include "becrad/fock_oracle.hpp"
#include "becrad/gibbs.hpp"
#include "becrad/solver.hpp"
#include "becrad/specfun.hpp"
#include "becrad/spectrum.hpp"
#include "becrad/sweep.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace becrad;

namespace {

VolumeSpec box(const ModelParams& params, double box_l, std::optional<double> k_cut) {
  return VolumeSpec{box_l, params.dim(), k_cut};
}

py::dict regime_dict(const Regime& r) {
  return py::dict("phase"_a = r.phase, "rho_c"_a = r.rho_c.to_double(), "mu_c"_a = r.mu_c);
}

py::dict occupation_dict(const OccupationSet& o) {
  return py::dict("matter_mode"_a = o.matter_mode, "photon_mode"_a = o.photon_mode,
                  "correlation"_a = o.correlation, "free_density"_a = o.free_density);
}

py::dict solution_dict(const MuSolution& s) {
  return py::dict("mu"_a = s.mu, "gap"_a = s.gap, "volume"_a = s.volume, "residual"_a = s.residual,
                  "iterations"_a = s.iterations, "regime"_a = regime_dict(s.regime));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bose condensation of matter coupled to a cavity mode";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<InstabilityError>(m, "InstabilityError", error.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", error.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

  py::enum_<Variant>(m, "Variant")
      .value("PERFECT_BOSE_GAS", Variant::PerfectBoseGas)
      .value("ROTATING", Variant::RotatingCoupling)
      .value("PAIR", Variant::PairCoupling);
  py::enum_<Phase>(m, "Phase").value("NORMAL", Phase::Normal).value("CONDENSED", Phase::Condensed);
  py::enum_<LimitForm>(m, "LimitForm")
      .value("UNIFORM", LimitForm::Uniform)
      .value("POSITIVE_PAIR", LimitForm::PositivePair);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<Variant, int, double, double, double, double, double>(), "variant"_a, "dim"_a = 3,
           "beta"_a = 1.0, "omega"_a = 1.0, "g"_a = 0.0, "eps_q"_a = 0.0, "c_kin"_a = 1.0)
      .def_static("perfect_bose_gas", &ModelParams::perfect_bose_gas, "dim"_a = 3, "beta"_a = 1.0,
                  "c_kin"_a = 1.0)
      .def_property_readonly("variant", &ModelParams::variant)
      .def_property_readonly("dim", &ModelParams::dim)
      .def_property_readonly("beta", &ModelParams::beta)
      .def_property_readonly("omega", &ModelParams::omega)
      .def_property_readonly("g", &ModelParams::g)
      .def_property_readonly("eps_q", &ModelParams::eps_q)
      .def_property_readonly("c_kin", &ModelParams::c_kin)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(" + std::string(to_string(p.variant())) + ", dim=" + std::to_string(p.dim()) +
               ", beta=" + format_number(p.beta()) + ", omega=" + format_number(p.omega()) +
               ", g=" + format_number(p.g()) + ", eps_q=" + format_number(p.eps_q()) + ")";
      });

  m.def("critical_chemical_potential", &critical_chemical_potential, "params"_a);
  m.def(
      "critical_density", [](const ModelParams& p) { return critical_density(p).to_double(); }, "params"_a,
      "Critical density; inf when the free-gas integral diverges at mu_c.");
  m.def(
      "classify", [](const ModelParams& p, double rho) { return regime_dict(classify(p, rho)); }, "params"_a,
      "rho"_a);

  m.def("polylog", &polylog, "s"_a, "z"_a);
  m.def(
      "bose_density",
      [](double beta, double mu, int dim, double c_kin) {
        return bose_density(beta, mu, dim, c_kin).value.to_double();
      },
      "beta"_a, "mu"_a, "dim"_a, "c_kin"_a = 1.0);

  m.def(
      "spectrum",
      [](const ModelParams& p, double mu) {
        if (!p.coupled()) throw DomainError("the free gas has no coupled block");
        const SpectrumPair s = p.variant() == Variant::RotatingCoupling
                                   ? model1_spectrum(p.eps_q(), mu, p.omega(), p.g())
                                   : model2_spectrum(p.eps_q(), mu, p.omega(), p.g());
        return py::dict("e_plus"_a = s.e_plus, "e_minus"_a = s.e_minus, "mixing"_a = s.mixing);
      },
      "params"_a, "mu"_a, "Normal-mode energies of the coupled block at mu.");
  m.def(
      "occupations", [](const ModelParams& p, double mu) { return occupation_dict(occupations(p, mu)); },
      "params"_a, "mu"_a);
  m.def(
      "condensate_limits",
      [](const ModelParams& p, double rho, LimitForm form) {
        const CondensateReport r = condensate_limits(p, rho, form);
        return py::dict("matter_condensate"_a = r.matter_condensate, "photon_condensate"_a = r.photon_condensate,
                        "correlation_density"_a = r.correlation_density,
                        "interaction_energy_density"_a = r.interaction_energy_density,
                        "regime"_a = regime_dict(r.regime));
      },
      "params"_a, "rho"_a, "form"_a = LimitForm::Uniform);
  m.def(
      "thermal_expectations",
      [](Variant v, double matter, double photon, double g, double beta, double tol) {
        const ThermalMoments t = converged_thermal_expectations(v, matter, photon, g, beta, tol);
        return py::dict("n_matter"_a = t.n_matter, "n_photon"_a = t.n_photon, "correlation"_a = t.correlation,
                        "n_max"_a = t.n_max);
      },
      "variant"_a, "matter"_a, "photon"_a, "g"_a, "beta"_a, "tol"_a = 1e-9,
      "Truncated Fock-space expectations, doubled until converged.");

  m.def(
      "solve_mu",
      [](const ModelParams& p, double rho, double box_l, std::optional<double> k_cut) {
        return solution_dict(solve_mu(p, rho, box(p, box_l, k_cut)));
      },
      "params"_a, "rho"_a, "box_l"_a, "k_cut"_a = py::none());
  m.def(
      "limiting_mu",
      [](const ModelParams& p, double rho) {
        const LimitingMu l = limiting_mu(p, rho);
        return py::dict("mu"_a = l.mu, "regime"_a = regime_dict(l.regime));
      },
      "params"_a, "rho"_a);
  m.def(
      "finite_volume_condensates",
      [](const ModelParams& p, double rho, double box_l, std::optional<double> k_cut) {
        const FiniteVolumeState s = finite_volume_condensates(p, rho, box(p, box_l, k_cut));
        py::dict out = occupation_dict(s.densities);
        out["solution"] = solution_dict(s.solution);
        out["lowest_mode_energy"] = s.lowest_mode_energy;
        return out;
      },
      "params"_a, "rho"_a, "box_l"_a, "k_cut"_a = py::none());
  m.def("asymptotic_mu", &asymptotic_mu, "params"_a, "rho"_a, "volume"_a);
  m.def("asymptotic_gap", &asymptotic_gap, "params"_a, "rho"_a, "volume"_a);

  m.def(
      "run_sweep",
      [](const std::string& config_json) {
        const Table t = run_sweep(SweepConfig::from_json(config_json));
        py::list rows;
        for (const auto& row : t.rows) {
          py::dict d;
          for (size_t i = 0; i < t.columns.size(); ++i) d[py::str(t.columns[i])] = row[i];
          rows.append(d);
        }
        return rows;
      },
      "config_json"_a, "Evaluate a sweep configuration (JSON text); one dict per row.");
}

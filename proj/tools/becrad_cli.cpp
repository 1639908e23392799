// becrad: sweeps, phase-diagram tables, scaling fits and oracle comparisons
// for Bose gases coupled to a single cavity mode.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "becrad/errors.hpp"
#include "becrad/fock_oracle.hpp"
#include "becrad/gibbs.hpp"
#include "becrad/solver.hpp"
#include "becrad/spectrum.hpp"
#include "becrad/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::optional<std::string> model;
  std::optional<int> dim;
  std::optional<double> beta;
  std::optional<double> omega;
  std::optional<double> g;
  std::optional<double> eps_q;
  std::optional<double> rho;
  std::optional<double> mu;
  std::optional<double> box_l;
  std::optional<std::string> sweep;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<std::string> config;
  std::optional<int> threads;
};

void add_common_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--model", f.model, "pbg, 1 (rotating coupling) or 2 (pair coupling)");
  sub->add_option("--dim", f.dim, "space dimension 1..3");
  sub->add_option("--beta", f.beta, "inverse temperature");
  sub->add_option("--omega", f.omega, "cavity mode energy");
  sub->add_option("--g", f.g, "matter-light coupling");
  sub->add_option("--eps-q", f.eps_q, "kinetic energy of the coupled matter mode");
  sub->add_option("--rho", f.rho, "total density");
  sub->add_option("--mu", f.mu, "chemical potential");
  sub->add_option("--box-l", f.box_l, "box side length L (finite volume)");
  sub->add_option("--sweep", f.sweep, "<axis>:<start>:<stop>:<steps>");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--out", f.out, "output path (default stdout)");
  sub->add_option("--config", f.config, "JSON config; flags override its values");
  sub->add_option("--threads", f.threads, "worker threads for sweeps (0 = all cores)");
}

bool config_sets_outputs(const std::string& path) {
  std::ifstream in(path);
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    return j.is_object() && j.contains("outputs");
  } catch (const std::exception&) {
    return false;
  }
}

struct Resolved {
  becrad::SweepConfig config;
  bool outputs_from_file = false;
};

Resolved resolve(const Flags& f) {
  Resolved r;
  if (f.config) {
    r.config = becrad::SweepConfig::from_json_file(*f.config);
    r.outputs_from_file = config_sets_outputs(*f.config);
  }
  becrad::SweepConfig& c = r.config;
  if (f.model) c.variant = becrad::parse_variant(*f.model);
  if (f.dim) c.dim = *f.dim;
  if (f.beta) c.beta = *f.beta;
  if (f.omega) c.omega = *f.omega;
  if (f.g) c.g = *f.g;
  if (f.eps_q) c.eps_q = *f.eps_q;
  if (f.rho) c.rho = *f.rho;
  if (f.mu) c.mu = *f.mu;
  if (f.box_l) c.box_l = *f.box_l;
  if (f.sweep) c.sweep = becrad::parse_axis_range(*f.sweep);
  if (f.format) c.format = becrad::parse_format(*f.format);
  if (f.threads) c.threads = *f.threads;
  return r;
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw becrad::ConfigError("cannot write '" + *path + "'");
  out << text;
}

int table_status(const becrad::Table& t, bool single_point) {
  const size_t err = t.column("error");
  for (size_t i = 0; i < t.rows.size(); ++i) {
    if (t.numerical_failure[i]) return kExitNumerical;
    if (single_point && !std::get<std::string>(t.rows[i][err]).empty()) return kExitNumerical;
  }
  return 0;
}

int run_table(Resolved r, const becrad::OutputSelection& defaults,
              const std::optional<std::string>& out) {
  if (!r.outputs_from_file) r.config.outputs = defaults;
  const becrad::Table t = becrad::run_sweep(r.config);
  emit(t.render(r.config.format), out);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& msg = std::get<std::string>(t.rows[i][t.column("error")]);
    if (!msg.empty()) std::cerr << "row " << i << ": " << msg << '\n';
  }
  return table_status(t, !r.config.sweep.has_value());
}

// Power-law and 1/V fits of mu_V - mu_c and of the lowest mode energy over
// a sweep of the box length.
int run_scaling(const Resolved& r, const std::optional<std::string>& out) {
  const becrad::SweepConfig& c = r.config;
  if (!c.sweep || c.sweep->axis != becrad::SweepAxis::BoxLength) {
    throw becrad::ConfigError("scaling needs --sweep L:<start>:<stop>:<steps>");
  }
  if (!c.rho) throw becrad::ConfigError("scaling needs --rho");
  c.validate();
  const becrad::ModelParams params = c.params();
  const becrad::Regime regime = becrad::classify(params, *c.rho);
  std::vector<double> volumes, inv_volumes, shifts, shifts_times_v, gaps_times_v;
  for (double box : c.sweep->points()) {
    const becrad::VolumeSpec vol{box, c.dim, c.k_cut};
    const becrad::FiniteVolumeState s = becrad::finite_volume_condensates(params, *c.rho, vol);
    volumes.push_back(s.solution.volume);
    inv_volumes.push_back(1.0 / s.solution.volume);
    shifts.push_back(-s.solution.gap);
    shifts_times_v.push_back(-s.solution.gap * s.solution.volume);
    gaps_times_v.push_back(s.lowest_mode_energy * s.solution.volume);
  }
  std::optional<double> predicted_slope;
  std::optional<double> predicted_gap;
  if (regime.phase == becrad::Phase::Condensed) {
    predicted_slope = -1.0 / (c.beta * (*c.rho - regime.rho_c.value()));
    if (params.variant() == becrad::Variant::RotatingCoupling) {
      predicted_gap = becrad::asymptotic_gap(params, *c.rho, 1.0);
    }
  }
  const becrad::FitResult inv = becrad::fit_linear(inv_volumes, shifts);
  const becrad::FitResult pow = becrad::fit_power_law(volumes, shifts);
  // intercept is the asymptotic 1/V coefficient, free of O(1/V^2) bias
  const becrad::FitResult scaled = becrad::fit_linear(inv_volumes, shifts_times_v);
  const becrad::FitResult gap = becrad::fit_linear(inv_volumes, gaps_times_v);

  becrad::Table t;
  t.columns = {"fit", "slope", "intercept", "prefactor", "r_squared", "points_used",
               "predicted", "error"};
  auto cell = [](const std::optional<double>& v) {
    return v ? becrad::Cell{*v} : becrad::Cell{};
  };
  t.rows.push_back({std::string("mu_shift_vs_inverse_volume"), inv.slope, inv.intercept,
                    inv.prefactor, inv.r_squared, static_cast<double>(inv.points_used),
                    cell(predicted_slope), std::string()});
  t.rows.push_back({std::string("mu_shift_times_volume"), scaled.slope, scaled.intercept,
                    scaled.prefactor, scaled.r_squared, static_cast<double>(scaled.points_used),
                    cell(predicted_slope), std::string()});
  t.rows.push_back({std::string("mu_shift_power_law"), pow.slope, pow.intercept, pow.prefactor,
                    pow.r_squared, static_cast<double>(pow.points_used),
                    cell(regime.phase == becrad::Phase::Condensed ? std::optional<double>(-1.0)
                                                                  : std::nullopt),
                    std::string()});
  t.rows.push_back({std::string("lowest_mode_energy_times_volume"), gap.slope, gap.intercept,
                    gap.prefactor, gap.r_squared, static_cast<double>(gap.points_used),
                    cell(predicted_gap), std::string()});
  t.numerical_failure.assign(t.rows.size(), false);
  emit(t.render(c.format), out);
  return 0;
}

// Closed-form block expectations and spectrum against brute-force oracles.
int run_oracle_check(const Resolved& r, const std::optional<std::string>& out) {
  const becrad::SweepConfig& c = r.config;
  const becrad::ModelParams params = c.params();
  if (!params.coupled()) throw becrad::ConfigError("oracle-check needs --model 1 or 2");
  double mu = 0.0;
  if (c.mu) {
    mu = *c.mu;
  } else if (c.rho && c.box_l) {
    mu = becrad::solve_mu(params, *c.rho, *c.volume()).mu;
  } else {
    throw becrad::ConfigError("oracle-check needs --mu, or --rho with --box-l");
  }
  const becrad::CoupledBlock block = becrad::CoupledBlock::at_mu(c.eps_q, mu, c.omega, c.g);
  const becrad::OccupationSet closed = becrad::block_occupations(c.variant, block, c.beta);
  const becrad::SpectrumPair sp = becrad::block_spectrum(c.variant, block);
  const becrad::OraclePair eig =
      becrad::numerical_spectrum_oracle(c.variant, block.matter, block.photon, block.g);
  const becrad::ThermalMoments fock = becrad::converged_thermal_expectations(
      c.variant, block.matter, block.photon, block.g, c.beta);

  becrad::Table t;
  t.columns = {"quantity", "closed_form", "oracle", "abs_diff", "rel_diff", "oracle_cutoff"};
  auto row = [&](const std::string& name, double a, double b, double cutoff) {
    const double d = std::abs(a - b);
    t.rows.push_back({name, a, b, d, b != 0.0 ? d / std::abs(b) : d, cutoff});
  };
  row("e_plus", sp.e_plus, eig.e_plus, 2.0);
  row("e_minus", sp.e_minus, eig.e_minus, 2.0);
  row("matter_mode", closed.matter_mode, fock.n_matter, fock.n_max);
  row("photon_mode", closed.photon_mode, fock.n_photon, fock.n_max);
  row("correlation", closed.correlation, fock.correlation, fock.n_max);
  t.numerical_failure.assign(t.rows.size(), false);
  emit(t.render(c.format), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamics of Bose gases coupled to a cavity mode"};
  app.require_subcommand(1);

  Flags flags;
  CLI::App* solve = app.add_subcommand("solve-mu", "chemical potential (limit and finite V)");
  CLI::App* occ = app.add_subcommand("occupations", "mode occupations at fixed mu");
  CLI::App* cond = app.add_subcommand("condensates", "condensate densities");
  CLI::App* phase = app.add_subcommand("phase-diagram", "phase and condensate table");
  CLI::App* scaling = app.add_subcommand("scaling", "finite-size scaling fits over L");
  CLI::App* oracle = app.add_subcommand("oracle-check", "closed forms against oracles");
  for (CLI::App* sub : {solve, occ, cond, phase, scaling, oracle}) add_common_flags(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const Resolved r = resolve(flags);
    if (*solve) {
      becrad::OutputSelection o{true, false, false, false, r.config.box_l.has_value()};
      if (r.config.sweep && r.config.sweep->axis == becrad::SweepAxis::BoxLength) {
        o.asymptotics = true;
      }
      return run_table(r, o, flags.out);
    }
    if (*occ) {
      const bool fixed_mu = r.config.mu.has_value();
      return run_table(r, {false, false, !fixed_mu, fixed_mu, false}, flags.out);
    }
    if (*cond) {
      const bool finite = r.config.box_l.has_value() ||
                          (r.config.sweep && r.config.sweep->axis == becrad::SweepAxis::BoxLength);
      return run_table(r, {false, true, finite, false, false}, flags.out);
    }
    if (*phase) return run_table(r, {true, true, false, false, false}, flags.out);
    if (*scaling) return run_scaling(r, flags.out);
    if (*oracle) return run_oracle_check(r, flags.out);
  } catch (const becrad::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const becrad::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}

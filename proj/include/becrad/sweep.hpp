#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "becrad/lattice.hpp"
#include "becrad/model.hpp"

namespace becrad {

enum class SweepAxis { Rho, Beta, G, Omega, EpsQ, BoxLength };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view text);

/// `steps` evenly spaced points from start to stop inclusive.
struct AxisRange {
  SweepAxis axis = SweepAxis::Rho;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> points() const;
};

/// Parses "<axis>:<start>:<stop>:<steps>".
AxisRange parse_axis_range(std::string_view text);

struct OutputSelection {
  bool chemical_potential = true;  // mu_c, rho_c, limiting mu, and mu_V when a box is set
  bool condensates = true;         // thermodynamic-limit condensate densities
  bool finite_volume = false;      // coupled-block densities at mu_V
  bool occupations = false;        // occupation numbers at the fixed mu
  bool asymptotics = false;        // leading large-V mu_V and gap

  bool any() const;
};

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat f);
OutputFormat parse_format(std::string_view text);

struct SweepConfig {
  Variant variant = Variant::PerfectBoseGas;
  int dim = 3;
  double beta = 1.0;
  double omega = 1.0;
  double g = 0.0;
  double eps_q = 0.0;
  double c_kin = 1.0;
  std::optional<double> rho;
  std::optional<double> mu;
  std::optional<double> box_l;
  std::optional<double> k_cut;
  std::optional<AxisRange> sweep;
  OutputSelection outputs;
  OutputFormat format = OutputFormat::Csv;
  int threads = 1;

  /// Throws ConfigError on invalid fixed parameters, an empty range, or an
  /// output that cannot be produced from the given inputs.
  void validate() const;

  ModelParams params() const;
  std::optional<VolumeSpec> volume() const;

  /// Copy with one axis set to `value`.
  SweepConfig at(SweepAxis axis, double value) const;

  /// Reads a single JSON object with lower_snake_case keys mirroring the
  /// fields. Unknown keys are rejected.
  static SweepConfig from_json(std::string_view text);
  static SweepConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

/// Empty cell, number, or text.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// rows[i] failed with a non-convergence error.
  std::vector<bool> numerical_failure;

  std::string to_csv() const;
  std::string to_json() const;
  std::string render(OutputFormat format) const;

  /// Index of a column, or throws ConfigError.
  size_t column(std::string_view name) const;
  /// Numeric value of a cell; NaN for empty or text cells.
  double number(size_t row, std::string_view name) const;
};

/// Round-trip decimal formatting (%.17g); infinities spelled inf / -inf.
std::string format_number(double x);

/// One row per point of the swept axis, in axis order regardless of the
/// number of worker threads. Errors at a point land in the `error` column.
Table run_sweep(const SweepConfig& config);

/// Row for the fixed configuration alone.
Table evaluate_point(const SweepConfig& config);

struct FitResult {
  double slope;
  /// Linear fit: value at x = 0. Power law: ln|prefactor|.
  double intercept;
  /// Linear fit: same as intercept. Power law: signed c in y = c x^slope.
  double prefactor;
  double r_squared;
  int points_used;
};

/// Least squares of ln|y| against ln x. Requires at least three points,
/// x > 0, and nonzero y of one sign.
FitResult fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys);

/// Ordinary least squares y = intercept + slope x; at least three points.
FitResult fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace becrad

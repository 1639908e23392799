#include "becrad/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "becrad/errors.hpp"
#include "becrad/gibbs.hpp"
#include "becrad/solver.hpp"

namespace becrad {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct AxisName {
  SweepAxis axis;
  std::string_view canonical;
  std::string_view alias;
};

constexpr AxisName kAxisNames[] = {
    {SweepAxis::Rho, "rho", "rho"},       {SweepAxis::Beta, "beta", "beta"},
    {SweepAxis::G, "g", "g"},             {SweepAxis::Omega, "omega", "omega"},
    {SweepAxis::EpsQ, "eps_q", "eps-q"},  {SweepAxis::BoxLength, "box_l", "L"},
};

constexpr std::string_view kOutputNames[] = {"chemical_potential", "condensates",
                                             "finite_volume", "occupations", "asymptotics"};

bool* output_flag(OutputSelection& o, std::string_view name) {
  if (name == "chemical_potential" || name == "mu") return &o.chemical_potential;
  if (name == "condensates") return &o.condensates;
  if (name == "finite_volume") return &o.finite_volume;
  if (name == "occupations") return &o.occupations;
  if (name == "asymptotics") return &o.asymptotics;
  return nullptr;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(text);
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ConfigError("cannot parse " + std::string(what) + " from '" + s + "'");
  }
  return v;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "";
}

std::string json_cell(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    const double x = std::get<double>(c);
    if (std::isnan(x)) return "null";
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    return format_number(x);
  }
  if (std::holds_alternative<std::string>(c)) return json(std::get<std::string>(c)).dump();
  return "null";
}

double json_number(const json& j, std::string_view key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>(), key);
  throw ConfigError("config key '" + std::string(key) + "' must be a number");
}

// Layout of one result row, fixed by the configuration.
struct Layout {
  bool axis = false;
  bool phase = false;
  bool mu_limit = false;
  bool mu_v = false;
  bool limits = false;
  bool finite = false;
  bool occ = false;
  bool occ_free = false;
  bool asym = false;
};

Layout layout_for(const SweepConfig& c) {
  const bool sweeping_rho = c.sweep && c.sweep->axis == SweepAxis::Rho;
  const bool sweeping_l = c.sweep && c.sweep->axis == SweepAxis::BoxLength;
  const bool has_rho = c.rho.has_value() || sweeping_rho;
  const bool has_box = c.box_l.has_value() || sweeping_l;
  Layout l;
  l.axis = c.sweep.has_value();
  l.phase = has_rho;
  l.mu_limit = c.outputs.chemical_potential && has_rho;
  l.mu_v = c.outputs.chemical_potential && has_rho && has_box;
  l.limits = c.outputs.condensates;
  l.finite = c.outputs.finite_volume;
  l.occ = c.outputs.occupations;
  l.occ_free = c.outputs.occupations && has_box;
  l.asym = c.outputs.asymptotics;
  return l;
}

std::vector<std::string> columns_for(const SweepConfig& c) {
  const Layout l = layout_for(c);
  std::vector<std::string> cols;
  if (l.axis) cols.emplace_back(to_string(c.sweep->axis));
  cols.insert(cols.end(), {"mu_c", "rho_c"});
  if (l.phase) cols.emplace_back("phase");
  if (l.mu_limit) cols.emplace_back("mu_limit");
  if (l.mu_v) cols.insert(cols.end(), {"mu_v", "gap_v"});
  if (l.limits) {
    cols.insert(cols.end(), {"matter_condensate", "photon_condensate", "correlation_density",
                             "interaction_energy_density"});
  }
  if (l.finite) {
    cols.insert(cols.end(), {"matter_density_v", "photon_density_v", "correlation_density_v",
                             "free_density_v", "lowest_mode_energy_v"});
  }
  if (l.occ) cols.insert(cols.end(), {"matter_mode", "photon_mode", "correlation"});
  if (l.occ_free) cols.emplace_back("free_density");
  if (l.asym) cols.insert(cols.end(), {"asymptotic_mu", "asymptotic_gap"});
  cols.emplace_back("error");
  return cols;
}

struct RowResult {
  std::vector<Cell> cells;
  bool numerical_failure = false;
};

// Each group of columns is evaluated on its own; a failure blanks that group
// and is appended to the row's error text.
RowResult evaluate_row(const SweepConfig& c, std::optional<double> axis_value) {
  const Layout l = layout_for(c);
  RowResult out;
  std::vector<std::string> errors;
  auto group = [&](size_t width, const std::function<std::vector<Cell>()>& body) {
    try {
      std::vector<Cell> cells = body();
      out.cells.insert(out.cells.end(), cells.begin(), cells.end());
    } catch (const ConvergenceError& e) {
      out.numerical_failure = true;
      errors.emplace_back(e.what());
      out.cells.insert(out.cells.end(), width, Cell{});
    } catch (const std::exception& e) {
      errors.emplace_back(e.what());
      out.cells.insert(out.cells.end(), width, Cell{});
    }
  };

  if (l.axis) out.cells.emplace_back(*axis_value);
  const ModelParams params = c.params();
  const std::optional<VolumeSpec> vol = c.volume();

  std::optional<Regime> regime;
  group(2, [&]() -> std::vector<Cell> {
    const Density rc = critical_density(params);
    return {critical_chemical_potential(params), rc.to_double()};
  });
  if (l.phase) {
    group(1, [&]() -> std::vector<Cell> {
      regime = classify(params, *c.rho);
      return {std::string(to_string(regime->phase))};
    });
  }
  if (l.mu_limit) {
    group(1, [&]() -> std::vector<Cell> { return {limiting_mu(params, *c.rho).mu}; });
  }
  if (l.mu_v) {
    group(2, [&]() -> std::vector<Cell> {
      const MuSolution s = solve_mu(params, *c.rho, *vol);
      return {s.mu, s.gap};
    });
  }
  if (l.limits) {
    group(4, [&]() -> std::vector<Cell> {
      const CondensateReport r = condensate_limits(params, *c.rho);
      return {r.matter_condensate, r.photon_condensate, r.correlation_density,
              r.interaction_energy_density};
    });
  }
  if (l.finite) {
    group(5, [&]() -> std::vector<Cell> {
      const FiniteVolumeState s = finite_volume_condensates(params, *c.rho, *vol);
      return {s.densities.matter_mode, s.densities.photon_mode, s.densities.correlation,
              s.densities.free_density.value_or(kNaN), s.lowest_mode_energy};
    });
  }
  if (l.occ) {
    group(l.occ_free ? 4 : 3, [&]() -> std::vector<Cell> {
      std::vector<Cell> cells;
      if (l.occ_free) {
        const FreeModes free(*vol, params);
        const OccupationSet o = occupations(params, *c.mu, free);
        cells = {o.matter_mode, o.photon_mode, o.correlation, o.free_density.value_or(kNaN)};
      } else {
        const OccupationSet o = occupations(params, *c.mu);
        cells = {o.matter_mode, o.photon_mode, o.correlation};
      }
      return cells;
    });
  }
  if (l.asym) {
    group(2, [&]() -> std::vector<Cell> {
      const Regime r = regime ? *regime : classify(params, *c.rho);
      if (r.phase != Phase::Condensed) return {Cell{}, Cell{}};
      const double v = vol->volume();
      Cell gap = params.variant() == Variant::RotatingCoupling
                     ? Cell{asymptotic_gap(params, *c.rho, v)}
                     : Cell{};
      return {asymptotic_mu(params, *c.rho, v), gap};
    });
  }

  std::string joined;
  for (const std::string& e : errors) {
    if (!joined.empty()) joined += "; ";
    joined += e;
  }
  out.cells.emplace_back(joined);
  return out;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
  for (const AxisName& n : kAxisNames) {
    if (n.axis == axis) return n.canonical;
  }
  return "?";
}

SweepAxis parse_axis(std::string_view text) {
  for (const AxisName& n : kAxisNames) {
    if (text == n.canonical || text == n.alias) return n.axis;
  }
  if (text == "box-l") return SweepAxis::BoxLength;
  throw ConfigError("unknown sweep axis '" + std::string(text) +
                    "' (expected rho, beta, g, omega, eps_q or L)");
}

std::vector<double> AxisRange::points() const {
  require(steps >= 1, "sweep needs at least one step");
  std::vector<double> xs(static_cast<size_t>(steps));
  if (steps == 1) {
    xs[0] = start;
    return xs;
  }
  const double h = (stop - start) / (steps - 1);
  for (int i = 0; i < steps; ++i) xs[static_cast<size_t>(i)] = start + i * h;
  xs.back() = stop;
  return xs;
}

AxisRange parse_axis_range(std::string_view text) {
  std::vector<std::string_view> parts;
  size_t from = 0;
  while (true) {
    const size_t colon = text.find(':', from);
    parts.push_back(text.substr(from, colon == std::string_view::npos ? colon : colon - from));
    if (colon == std::string_view::npos) break;
    from = colon + 1;
  }
  require(parts.size() == 4,
          "sweep must look like <axis>:<start>:<stop>:<steps>, got '" + std::string(text) + "'");
  AxisRange r;
  r.axis = parse_axis(parts[0]);
  r.start = parse_double(parts[1], "sweep start");
  r.stop = parse_double(parts[2], "sweep stop");
  const double steps = parse_double(parts[3], "sweep steps");
  require(steps >= 1 && steps == std::floor(steps) && steps <= 1e6,
          "sweep steps must be a positive integer");
  r.steps = static_cast<int>(steps);
  return r;
}

bool OutputSelection::any() const {
  return chemical_potential || condensates || finite_volume || occupations || asymptotics;
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

ModelParams SweepConfig::params() const {
  return ModelParams(variant, dim, beta, omega, g, eps_q, c_kin);
}

std::optional<VolumeSpec> SweepConfig::volume() const {
  if (!box_l) return std::nullopt;
  return VolumeSpec{*box_l, dim, k_cut};
}

SweepConfig SweepConfig::at(SweepAxis axis, double value) const {
  SweepConfig c = *this;
  switch (axis) {
    case SweepAxis::Rho: c.rho = value; break;
    case SweepAxis::Beta: c.beta = value; break;
    case SweepAxis::G: c.g = value; break;
    case SweepAxis::Omega: c.omega = value; break;
    case SweepAxis::EpsQ: c.eps_q = value; break;
    case SweepAxis::BoxLength: c.box_l = value; break;
  }
  return c;
}

void SweepConfig::validate() const {
  require(threads >= 0 && threads <= 1024, "threads must lie in [0, 1024]");
  require(outputs.any(), "no outputs requested");
  std::vector<SweepConfig> points;
  if (sweep) {
    require(std::isfinite(sweep->start) && std::isfinite(sweep->stop),
            "sweep bounds must be finite");
    for (double x : sweep->points()) points.push_back(at(sweep->axis, x));
  } else {
    points.push_back(*this);
  }
  for (const SweepConfig& p : points) {
    try {
      (void)p.params();
      if (p.volume()) p.volume()->validate();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    if (p.rho) require(*p.rho > 0.0 && std::isfinite(*p.rho), "rho must be positive");
    if (p.mu) require(std::isfinite(*p.mu), "mu must be finite");
  }
  const SweepConfig& p = points.front();
  if (outputs.condensates) require(p.rho.has_value(), "condensates need rho");
  if (outputs.finite_volume) {
    require(p.rho.has_value() && p.box_l.has_value(), "finite_volume needs rho and box_l");
  }
  if (outputs.occupations) require(p.mu.has_value(), "occupations need mu");
  if (outputs.asymptotics) {
    require(p.rho.has_value() && p.box_l.has_value(), "asymptotics need rho and box_l");
  }
}

SweepConfig SweepConfig::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "config must be a JSON object");
  SweepConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "model") {
      c.variant = parse_variant(value.is_string() ? value.get<std::string>() : value.dump());
    } else if (key == "dim") {
      const double d = json_number(value, key);
      require(d == std::floor(d), "dim must be an integer");
      c.dim = static_cast<int>(d);
    } else if (key == "beta") {
      c.beta = json_number(value, key);
    } else if (key == "omega") {
      c.omega = json_number(value, key);
    } else if (key == "g") {
      c.g = json_number(value, key);
    } else if (key == "eps_q") {
      c.eps_q = json_number(value, key);
    } else if (key == "c_kin") {
      c.c_kin = json_number(value, key);
    } else if (key == "rho" || key == "mu" || key == "box_l" || key == "k_cut") {
      std::optional<double> v;
      if (!value.is_null()) v = json_number(value, key);
      if (key == "rho") c.rho = v;
      if (key == "mu") c.mu = v;
      if (key == "box_l") c.box_l = v;
      if (key == "k_cut") c.k_cut = v;
    } else if (key == "sweep") {
      if (value.is_null()) {
        c.sweep.reset();
      } else if (value.is_string()) {
        c.sweep = parse_axis_range(value.get<std::string>());
      } else {
        require(value.is_object(), "sweep must be a string or an object");
        AxisRange r;
        require(value.contains("axis") && value["axis"].is_string(), "sweep.axis missing");
        r.axis = parse_axis(value["axis"].get<std::string>());
        require(value.contains("start") && value.contains("stop") && value.contains("steps"),
                "sweep needs start, stop and steps");
        r.start = json_number(value["start"], "sweep.start");
        r.stop = json_number(value["stop"], "sweep.stop");
        const double steps = json_number(value["steps"], "sweep.steps");
        require(steps >= 1 && steps == std::floor(steps) && steps <= 1e6,
                "sweep steps must be a positive integer");
        r.steps = static_cast<int>(steps);
        c.sweep = r;
      }
    } else if (key == "outputs") {
      require(value.is_array(), "outputs must be an array of names");
      OutputSelection sel{false, false, false, false, false};
      for (const json& name : value) {
        require(name.is_string(), "outputs must be an array of names");
        bool* flag = output_flag(sel, name.get<std::string>());
        require(flag != nullptr, "unknown output '" + name.get<std::string>() + "'");
        *flag = true;
      }
      c.outputs = sel;
    } else if (key == "format") {
      require(value.is_string(), "format must be a string");
      c.format = parse_format(value.get<std::string>());
    } else if (key == "threads") {
      const double t = json_number(value, key);
      require(t == std::floor(t), "threads must be an integer");
      c.threads = static_cast<int>(t);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

SweepConfig SweepConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string SweepConfig::to_json() const {
  json j;
  j["model"] = std::string(to_string(variant));
  j["dim"] = dim;
  j["beta"] = beta;
  j["omega"] = omega;
  j["g"] = g;
  j["eps_q"] = eps_q;
  j["c_kin"] = c_kin;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  j["rho"] = opt(rho);
  j["mu"] = opt(mu);
  j["box_l"] = opt(box_l);
  j["k_cut"] = opt(k_cut);
  if (sweep) {
    j["sweep"] = {{"axis", std::string(to_string(sweep->axis))},
                  {"start", sweep->start},
                  {"stop", sweep->stop},
                  {"steps", sweep->steps}};
  } else {
    j["sweep"] = nullptr;
  }
  json names = json::array();
  OutputSelection sel = outputs;
  for (std::string_view n : kOutputNames) {
    if (*output_flag(sel, n)) names.push_back(std::string(n));
  }
  j["outputs"] = names;
  j["format"] = std::string(to_string(format));
  j["threads"] = threads;
  return j.dump(2);
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string Table::to_csv() const {
  std::string out;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(columns[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string Table::to_json() const {
  std::string out = "[";
  for (size_t r = 0; r < rows.size(); ++r) {
    out += r ? ",\n  {" : "\n  {";
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ", ";
      out += json(columns[i]).dump();
      out += ": ";
      out += json_cell(rows[r][i]);
    }
    out += '}';
  }
  out += rows.empty() ? "]\n" : "\n]\n";
  return out;
}

std::string Table::render(OutputFormat format) const {
  return format == OutputFormat::Csv ? to_csv() : to_json();
}

size_t Table::column(std::string_view name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ConfigError("no column named '" + std::string(name) + "'");
}

double Table::number(size_t row, std::string_view name) const {
  const Cell& c = rows.at(row).at(column(name));
  return std::holds_alternative<double>(c) ? std::get<double>(c) : kNaN;
}

Table run_sweep(const SweepConfig& config) {
  config.validate();
  if (!config.sweep) return evaluate_point(config);

  const std::vector<double> xs = config.sweep->points();
  std::vector<RowResult> results(xs.size());
  auto work = [&](size_t i) {
    results[i] = evaluate_row(config.at(config.sweep->axis, xs[i]), xs[i]);
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : static_cast<unsigned>(config.threads);
  threads = std::min<unsigned>(threads, static_cast<unsigned>(xs.size()));
  if (threads <= 1) {
    for (size_t i = 0; i < xs.size(); ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (size_t i = next++; i < xs.size(); i = next++) work(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  Table table;
  table.columns = columns_for(config);
  for (RowResult& r : results) {
    table.rows.push_back(std::move(r.cells));
    table.numerical_failure.push_back(r.numerical_failure);
  }
  return table;
}

Table evaluate_point(const SweepConfig& config) {
  SweepConfig fixed = config;
  fixed.sweep.reset();
  fixed.validate();
  RowResult r = evaluate_row(fixed, std::nullopt);
  Table table;
  table.columns = columns_for(fixed);
  table.rows.push_back(std::move(r.cells));
  table.numerical_failure.push_back(r.numerical_failure);
  return table;
}

FitResult fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw DomainError("fit needs equally many x and y values");
  if (xs.size() < 3) throw DomainError("fit needs at least three points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw DomainError("fit points must be finite");
    }
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw DomainError("fit needs at least two distinct x values");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss_res += r * r;
  }
  const double r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return {slope, intercept, intercept, r2, static_cast<int>(xs.size())};
}

FitResult fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw DomainError("fit needs equally many x and y values");
  if (xs.size() < 3) throw DomainError("power-law fit needs at least three points");
  std::vector<double> lx;
  std::vector<double> ly;
  const bool negative = ys.front() < 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0)) throw DomainError("power-law fit needs x > 0");
    if (ys[i] == 0.0 || !std::isfinite(ys[i])) {
      throw DomainError("power-law fit needs finite nonzero y");
    }
    if ((ys[i] < 0.0) != negative) throw DomainError("power-law fit: y changes sign");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(std::abs(ys[i])));
  }
  FitResult f = fit_linear(lx, ly);
  f.prefactor = (negative ? -1.0 : 1.0) * std::exp(f.intercept);
  return f;
}

}  // namespace becrad

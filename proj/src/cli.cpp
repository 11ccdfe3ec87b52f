#include "qrod/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrod/airy.hpp"
#include "qrod/dynamics.hpp"
#include "qrod/errors.hpp"
#include "qrod/io.hpp"
#include "qrod/slanted.hpp"
#include "qrod/spectrum.hpp"
#include "qrod/summit.hpp"
#include "qrod/units.hpp"
#include "qrod/wkb.hpp"

namespace qrod::cli {

namespace {

using json = nlohmann::ordered_json;
using io::Cell;
using io::Table;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw command-line values; unset ones fall back to the config file, then defaults.
struct Flags {
  std::optional<std::string> config;
  std::optional<double> B, mass, length, gravity;
  bool rod = false;
  std::optional<std::size_t> grid_n;
  std::optional<int> n_levels;
  std::optional<double> dt;
  std::optional<std::string> format, output;
  std::optional<int> precision;
  std::optional<double> delta_theta, alpha, sigma, t_end, eps_min, eps_max, tilt_min, tilt_max;
  std::optional<int> samples, eps_steps, n_max, doublet, tilt_steps;
  std::optional<std::string> method, snapshots;
  bool absorbing = false, no_extrapolate = false, oracle = false;
};

struct RunConfig {
  std::string subcommand;
  bool has_rod = false;
  RodParams rod;
  bool has_B = false;
  double B = 0.0;
  std::size_t grid_n = 4001;
  int n_levels = 35;
  double dt = dynamics::kDefaultDt;
  std::string format = "json";
  std::string output;
  int precision = 10;
  double delta_theta = 0.1;
  double alpha = 10.0;
  std::optional<double> sigma;
  double t_end = 5.0;
  int samples = 51;
  double eps_min = -5.0, eps_max = 5.0;
  int eps_steps = 21;
  int n_max = 5;
  int doublet = 1;
  double tilt_min = 0.0, tilt_max = 1e-3;
  int tilt_steps = 11;
  std::string method = "direct";
  std::string snapshots;
  bool absorbing = false, extrapolate = true, oracle = false;

  [[nodiscard]] double barrier() const { return has_rod ? derive_scales(rod).B : B; }
};

template <class T>
T pick(const std::optional<T>& flag, const json& file, const char* key, T fallback) {
  if (flag) return *flag;
  if (file.contains(key)) {
    try {
      return file.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  }
  return fallback;
}

bool pick_bool(bool flag, const json& file, const char* key) {
  if (flag) return true;
  if (file.contains(key)) {
    if (!file.at(key).is_boolean()) throw ConfigError(std::string("config key '") + key + "' must be a boolean");
    return file.at(key).get<bool>();
  }
  return false;
}

json load_config(const std::optional<std::string>& path) {
  if (!path) return json::object();
  std::ifstream in(*path);
  if (!in) throw ConfigError("cannot open config file '" + *path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + *path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  return j;
}

int default_levels(const std::string& sub) {
  if (sub == "evolve") return 200;
  if (sub == "slant") return 10;
  return 35;
}

RunConfig merge(const std::string& sub, const Flags& f) {
  const json file = load_config(f.config);
  RunConfig c;
  c.subcommand = sub;

  const bool flag_rod = f.rod || f.mass || f.length || f.gravity;
  const bool flag_B = f.B.has_value();
  if (flag_rod && flag_B) throw ConfigError("give either rod parameters or --B, not both");
  const json file_rod = file.contains("rod") ? file.at("rod") : json();
  if (!flag_rod && !flag_B && file.contains("rod") && file.contains("B")) {
    throw ConfigError("config file gives both 'rod' and 'B'");
  }
  if (flag_rod || (!flag_B && file.contains("rod"))) {
    c.has_rod = true;
    const json rod_file = flag_rod ? json::object() : file_rod;
    if (!rod_file.is_object()) throw ConfigError("config key 'rod' must be an object");
    c.rod.mass = pick(f.mass, rod_file, "mass", c.rod.mass);
    c.rod.length = pick(f.length, rod_file, "length", c.rod.length);
    c.rod.gravity = pick(f.gravity, rod_file, "gravity", c.rod.gravity);
    (void)derive_scales(c.rod);  // validates
  } else if (flag_B || file.contains("B")) {
    c.has_B = true;
    c.B = pick(f.B, file, "B", 0.0);
    if (!(c.B >= 0.0)) throw ConfigError("B must be >= 0");
  }

  c.grid_n = pick(f.grid_n, file, "grid_n", c.grid_n);
  c.n_levels = pick(f.n_levels, file, "n_levels", default_levels(sub));
  c.dt = pick(f.dt, file, "dt", c.dt);
  c.format = pick(f.format, file, "format", c.format);
  c.output = pick(f.output, file, "output", c.output);
  c.precision = pick(f.precision, file, "precision", c.precision);
  c.delta_theta = pick(f.delta_theta, file, "delta_theta", c.delta_theta);
  c.alpha = pick(f.alpha, file, "alpha", c.alpha);
  if (f.sigma || file.contains("sigma")) c.sigma = pick(f.sigma, file, "sigma", 0.0);
  c.t_end = pick(f.t_end, file, "t_end", c.t_end);
  c.samples = pick(f.samples, file, "samples", c.samples);
  c.eps_min = pick(f.eps_min, file, "eps_min", c.eps_min);
  c.eps_max = pick(f.eps_max, file, "eps_max", c.eps_max);
  c.eps_steps = pick(f.eps_steps, file, "eps_steps", c.eps_steps);
  c.n_max = pick(f.n_max, file, "n_max", c.n_max);
  c.doublet = pick(f.doublet, file, "doublet", c.doublet);
  c.tilt_min = pick(f.tilt_min, file, "tilt_min", c.tilt_min);
  c.tilt_max = pick(f.tilt_max, file, "tilt_max", c.tilt_max);
  c.tilt_steps = pick(f.tilt_steps, file, "tilt_steps", c.tilt_steps);
  c.method = pick(f.method, file, "method", c.method);
  c.snapshots = pick(f.snapshots, file, "snapshots", c.snapshots);
  c.absorbing = pick_bool(f.absorbing, file, "absorbing");
  c.extrapolate = !pick_bool(f.no_extrapolate, file, "no_extrapolate");
  c.oracle = pick_bool(f.oracle, file, "oracle");

  if (c.precision < io::kMinPrecision || c.precision > io::kMaxPrecision) {
    throw ConfigError("precision must lie in [3, 15]");
  }
  if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
  if (c.n_levels < 1) throw ConfigError("n_levels must be >= 1");
  const bool needs_problem = sub != "airy" && sub != "summit";
  if (needs_problem && !c.has_rod && !c.has_B) throw ConfigError("specify the problem with --B or rod parameters");
  if (sub == "evolve") {
    if (c.method != "direct" && c.method != "eigen" && c.method != "both") {
      throw ConfigError("method must be direct, eigen or both");
    }
    if (c.samples < 2) throw ConfigError("samples must be >= 2");
    if (!(c.t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
  }
  if (sub == "summit" && (c.eps_steps < 1 || !(c.eps_max >= c.eps_min))) throw ConfigError("bad epsilon range");
  if (sub == "slant") {
    if (c.tilt_steps < 1 || !(c.tilt_max >= c.tilt_min)) throw ConfigError("bad tilt range");
    if (c.doublet < 1 || c.doublet + 1 > c.n_levels) throw ConfigError("slant needs 1 <= doublet < n_levels");
  }
  return c;
}

json config_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  if (c.has_rod) j["rod"] = {{"mass", c.rod.mass}, {"length", c.rod.length}, {"gravity", c.rod.gravity}};
  if (c.has_B) j["B"] = c.B;
  const std::string& s = c.subcommand;
  if (s == "spectrum" || s == "wkb-compare" || s == "evolve" || s == "slant") {
    j["grid_n"] = c.grid_n;
    j["n_levels"] = c.n_levels;
  }
  if (s == "spectrum") j["extrapolate"] = c.extrapolate;
  if (s == "airy") j["n_max"] = c.n_max;
  if (s == "summit") j["epsilon"] = {c.eps_min, c.eps_max, c.eps_steps};
  if (s == "fall-time") {
    j["delta_theta"] = c.delta_theta;
    j["alpha"] = c.alpha;
  }
  if (s == "evolve") {
    j["dt"] = c.dt;
    j["t_end"] = c.t_end;
    j["samples"] = c.samples;
    j["method"] = c.method;
    j["absorbing"] = c.absorbing;
    if (c.sigma) j["sigma"] = *c.sigma;
    else j["alpha"] = c.alpha;
  }
  if (s == "slant") {
    j["doublet"] = c.doublet;
    j["tilt"] = {c.tilt_min, c.tilt_max, c.tilt_steps};
    j["oracle"] = c.oracle;
  }
  j["format"] = c.format;
  j["precision"] = c.precision;
  return j;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = n == 1 ? a : a + (b - a) * k / (n - 1);
  return v;
}

Spectrum spectrum_for(const RunConfig& c, double B, double tilt = 0.0, bool extrapolate = true) {
  SpectrumOptions o;
  o.grid_n = c.grid_n;
  o.extrapolate = extrapolate;
  o.check_resolution = extrapolate;
  return solve_spectrum({B, tilt}, 2 * static_cast<std::size_t>(c.n_levels), o);
}

Table pairing_rows(const Spectrum& sp) {
  Table t{"pairing", {"n", "E_plus", "E_minus", "splitting", "gap", "ratio"}, {}};
  for (const auto& d : pairing_table(sp)) {
    t.add_row({static_cast<long long>(d.n), d.E_plus.value, d.E_minus.value, d.splitting, d.gap, d.pairing_ratio});
  }
  return t;
}

std::vector<Table> cmd_spectrum(const RunConfig& c) {
  const double B = c.barrier();
  const Spectrum sp = spectrum_for(c, B, 0.0, c.extrapolate);
  Table levels{"levels", {"index", "parity", "energy", "grid_energy", "drift"}, {}};
  for (const auto& l : sp.levels) {
    levels.add_row({static_cast<long long>(l.index), std::string(to_string(l.parity)), l.energy.value, l.grid_energy, l.drift});
  }
  return {levels, pairing_rows(sp)};
}

Table linear_well_table(int n_max, double B) {
  Table t{"linear_well", {"n", "lambda_wkb", "lambda_airy", "E_wkb", "E_airy"}, {}};
  const double scale = std::cbrt(B * B);
  for (int n = 0; n <= n_max; ++n) {
    const double lw = airy::wkb_lambda(n), la = airy::airy_zero(n);
    t.add_row({static_cast<long long>(n), lw, la, B > 0 ? scale * lw : kNaN, B > 0 ? scale * la : kNaN});
  }
  return t;
}

std::vector<Table> cmd_wkb_compare(const RunConfig& c) {
  const double B = c.barrier();
  const Spectrum sp = spectrum_for(c, B);
  Table levels{"levels", {"k", "n", "parity", "numerical", "semiclassical", "method", "difference"}, {}};
  Table split{"splittings", {"n", "numerical_center", "wkb_center", "numerical_splitting", "wkb_splitting", "W", "ratio"}, {}};
  for (std::size_t pos = 0; pos < sp.levels.size(); ++pos) {
    const auto& l = sp.levels[pos];
    const int n = l.index;
    const int k = 2 * n - (l.parity == Parity::even ? 1 : 0);
    const double E = l.energy.value;
    double semi = kNaN;
    std::string method;
    const auto regime = wkb::classify(E, B);
    const double eps = B > 0 ? (E - B) / std::sqrt(2.0 * B) : kNaN;
    if (B > 0 && regime == wkb::Regime::deep_well) {
      const double centre = wkb::single_well_quantize(n - 1, B).energy;
      const auto s = wkb::tunneling_splitting(centre, B);
      semi = l.parity == Parity::even ? s.E_plus : s.E_minus;
      method = "single-well";
    } else if (B > 1.0 && std::abs(eps) <= 10.0) {
      semi = summit::summit_quantize(n - 1, B, l.parity).energy;
      method = "summit";
    } else {
      semi = wkb::high_energy_quantize(k, B).energy;
      method = "high-energy";
    }
    levels.add_row({static_cast<long long>(k), static_cast<long long>(n), std::string(to_string(l.parity)), E, semi,
                    method, semi - E});
  }
  if (B > 0) {
    for (const auto& d : pairing_table(sp)) {
      const double centre_num = 0.5 * (d.E_plus.value + d.E_minus.value);
      if (wkb::classify(centre_num, B) != wkb::Regime::deep_well) break;
      const double centre = wkb::single_well_quantize(d.n - 1, B).energy;
      const auto s = wkb::tunneling_splitting(centre, B);
      split.add_row({static_cast<long long>(d.n), centre_num, centre, d.splitting, s.splitting, s.W,
                     d.splitting > 0 ? s.splitting / d.splitting : kNaN});
    }
  }
  return {levels, split, linear_well_table(c.n_max, B)};
}

std::vector<Table> cmd_summit(const RunConfig& c) {
  Table phases{"phases", {"epsilon", "delta_plus", "delta_minus", "total_plus", "total_minus", "gamma_exact", "gamma_ford",
                          "ford_error", "ode_difference", "predicted_difference"}, {}};
  for (double eps : linspace(c.eps_min, c.eps_max, c.eps_steps)) {
    const auto d = summit::phase_delta(eps);
    const auto g = summit::gamma_phase(eps);
    const auto p = summit::parabolic_phases(eps);
    phases.add_row({eps, d.delta_plus, d.delta_minus, d.total_plus, d.total_minus, g.exact, g.ford, g.difference,
                    p.difference, p.predicted_difference});
  }
  std::vector<Table> out{phases};
  if (c.has_B || c.has_rod) {
    const double B = c.barrier();
    Table levels{"levels", {"n", "parity", "energy", "epsilon"}, {}};
    const double window = 10.0;
    const double lo = std::max(0.0, B - window * std::sqrt(2.0 * B));
    const double hi = B + window * std::sqrt(2.0 * B);
    const int n_lo = std::max(0, static_cast<int>(std::floor(wkb::well_action(lo, B) / std::numbers::pi - 1.5)));
    const int n_hi = static_cast<int>(std::ceil(wkb::well_action(hi, B) / std::numbers::pi));
    for (int n = n_lo; n <= n_hi; ++n) {
      for (Parity p : {Parity::even, Parity::odd}) {
        try {
          const auto s = summit::summit_quantize(n, B, p, window);
          levels.add_row({static_cast<long long>(n + 1), std::string(to_string(p)), s.energy, s.epsilon});
        } catch (const RegimeError&) {
        }
      }
    }
    out.push_back(levels);
  }
  return out;
}

std::vector<Table> cmd_airy(const RunConfig& c) {
  if (c.n_max < 0) throw InvalidParameter("n_max must be >= 0");
  return {linear_well_table(c.n_max, c.has_B || c.has_rod ? c.barrier() : 0.0)};
}

DerivedScales scales_of(const RunConfig& c) {
  return c.has_rod ? derive_scales(c.rod) : dynamics::scales_from_B(c.B);
}

std::vector<Table> cmd_fall_time(const RunConfig& c) {
  const DerivedScales sc = scales_of(c);
  const auto ft = dynamics::fall_times(sc, c.delta_theta, c.alpha);
  const double w = sc.omega_c;
  auto sec = [w](double x) { return w > 0 ? x / w : kNaN; };
  Table t{"fall_times", {"quantity", "omega_units", "seconds"}, {}};
  t.add_row({std::string("t_class_quadrature"), ft.t_class.quadrature, sec(ft.t_class.quadrature)});
  t.add_row({std::string("t_class_asymptotic"), ft.t_class.asymptotic, sec(ft.t_class.asymptotic)});
  t.add_row({std::string("t_Q_prime"), ft.t_Q_prime.omega_units, ft.t_Q_prime.seconds});
  t.add_row({std::string("t_Q"), ft.t_Q.t.omega_units, ft.t_Q.t.seconds});
  t.add_row({std::string("t_spread"), ft.t_spread.omega_units, ft.t_spread.seconds});
  for (double d : {c.delta_theta, 0.5 * c.delta_theta}) {
    const double a = dynamics::stationary_phase_fall_time(sc.s, d);
    t.add_row({"t_Q_assembly(" + io::format_number(d, 6) + ")", a, sec(a)});
  }
  Table comp{"t_Q_components", {"term", "value"}, {}};
  comp.add_row({std::string("ln 4(2-sqrt2)"), ft.t_Q.log_term});
  comp.add_row({std::string("-ln s"), ft.t_Q.scale_term});
  comp.add_row({std::string("ln (4 gamma)^1/2"), ft.t_Q.gamma_term});
  comp.add_row({std::string("pi/4"), ft.t_Q.quarter_pi});
  Table scales{"scales", {"quantity", "value"}, {}};
  scales.add_row({std::string("B"), sc.B});
  scales.add_row({std::string("s"), sc.s});
  scales.add_row({std::string("omega_c"), sc.omega_c});
  return {t, comp, scales};
}

void write_snapshots(const std::string& path, const dynamics::EvolutionResult& r, int precision) {
  json frames = json::array();
  for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
    const auto& s = r.snapshots[k];
    json th = json::array(), dens = json::array();
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      th.push_back(std::stod(io::format_number(s.grid.theta(i), precision)));
      dens.push_back(std::stod(io::format_number(std::norm(s.values[i]), precision)));
    }
    frames.push_back({{"t", r.times[k]}, {"theta", th}, {"density", dens}});
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write snapshots to '" + path + "'");
  f << frames.dump() << '\n';
}

std::vector<Table> cmd_evolve(const RunConfig& c, std::ostream& err) {
  const double B = c.barrier();
  double sigma = 0.0;
  if (c.sigma) {
    sigma = *c.sigma;
  } else {
    if (!(B > 0.0)) throw InvalidParameter("B = 0 has no summit scale; give --sigma");
    sigma = c.alpha * std::pow(2.0 / B, 0.25);
  }
  const Grid grid(c.grid_n);
  const auto init = dynamics::prepare_gaussian(sigma, grid);
  if (init.wide) err << "warning: sigma = " << sigma << " rad is not narrow; the packet is far from upright\n";
  const auto times = dynamics::uniform_times(c.t_end, static_cast<std::size_t>(c.samples));
  const bool keep = !c.snapshots.empty();
  const PotentialSpec spec{B, 0.0};

  std::optional<dynamics::EvolutionResult> direct, eigen;
  if (c.method != "eigen") {
    dynamics::DirectOptions o;
    o.dt = c.dt;
    o.absorbing = c.absorbing;
    o.keep_snapshots = keep || c.method == "both";
    direct = dynamics::evolve_direct(dynamics::to_complex(init.psi), spec, times, o);
  }
  if (c.method != "direct") {
    const Spectrum sp = spectrum_for(c, B, 0.0, false);
    const auto ex = dynamics::expand(init.psi, sp);
    eigen = dynamics::evolve_eigen(ex, sp, times, {dynamics::kThetaFall, keep || c.method == "both"});
  }
  const auto& main = direct ? *direct : *eigen;
  std::vector<std::string> cols{"t", "norm", "energy", "mean_abs_theta", "fall_prob"};
  if (direct && eigen) cols.push_back("l2_direct_vs_eigen");
  Table t{"series", cols, {}};
  for (std::size_t k = 0; k < main.times.size(); ++k) {
    std::vector<Cell> row{main.times[k], main.norm[k], main.energy[k], main.mean_abs_theta[k], main.fall_prob[k]};
    if (direct && eigen) row.push_back(dynamics::l2_distance(direct->snapshots[k], eigen->snapshots[k]));
    t.add_row(std::move(row));
  }
  if (keep) write_snapshots(c.snapshots, main, c.precision);
  Table info{"summary", {"quantity", "value"}, {}};
  info.add_row({std::string("sigma"), sigma});
  info.add_row({std::string("fall_crossing_time"), dynamics::crossing_time(main)});
  if (B > 0) info.add_row({std::string("t_Q_formula"), dynamics::quantum_fall_time_wkb(dynamics::scales_from_B(B)).t.omega_units});
  return {t, info};
}

std::vector<Table> cmd_slant(const RunConfig& c) {
  const double B = c.barrier();
  const Spectrum sp = spectrum_for(c, B);
  const auto states = slanted::doublet_states(sp, c.doublet);
  const auto pt = pairing_table(sp, c.doublet, c.doublet + 1);
  std::vector<std::string> cols{"delta_theta", "E1", "E2", "P_left_state1", "P_left_state2", "V_coupling", "regime"};
  if (c.oracle) {
    cols.push_back("E1_grid");
    cols.push_back("E2_grid");
  }
  Table t{"sweep", cols, {}};
  for (double tilt : linspace(c.tilt_min, c.tilt_max, c.tilt_steps)) {
    const auto problem = slanted::make_problem(states, B, tilt);
    const auto d = slanted::solve_two_level(problem);
    const auto rc = slanted::regime_check(pt[0], pt[1], B * tilt);
    const std::string regime = rc.valid ? "valid" : (rc.lower_violation ? "lower_violation" : "upper_violation");
    std::vector<Cell> row{tilt, d.energies[0], d.energies[1], d.P_left[0], d.P_left[1], problem.V_coupling.value, regime};
    if (c.oracle) {
      const Spectrum tilted = spectrum_for(c, B, tilt);
      const std::size_t first = 2 * static_cast<std::size_t>(c.doublet) - 2;
      row.push_back(tilted.levels[first].energy.value);
      row.push_back(tilted.levels[first + 1].energy.value);
    }
    t.add_row(std::move(row));
  }
  return {t};
}

void add_problem_options(CLI::App* s, Flags& f) {
  s->add_option("--B", f.B, "Dimensionless barrier height V0 / (hbar^2/2J)");
  s->add_flag("--rod", f.rod, "Use the physical rod (defaults: m = 1e-3 kg, l = 0.1 m, g = 9.81)");
  s->add_option("--mass", f.mass, "Rod mass, kg");
  s->add_option("--length", f.length, "Rod length, m");
  s->add_option("--gravity", f.gravity, "Gravitational acceleration, m/s^2");
}

void add_solver_options(CLI::App* s, Flags& f) {
  s->add_option("--grid-n", f.grid_n, "Grid points including both walls (odd)");
  s->add_option("--n-levels", f.n_levels, "Levels per parity class");
}

void add_output_options(CLI::App* s, Flags& f) {
  s->add_option("--config", f.config, "JSON config file; flags override its values");
  s->add_option("--format", f.format, "json or csv");
  s->add_option("--output", f.output, "Write results here instead of stdout");
  s->add_option("--precision", f.precision, "Significant digits, 3..15");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum rod: spectrum, semiclassics, summit phases and fall times", "qrod"};
  app.require_subcommand(1);
  Flags f;
  std::string chosen;

  auto* spectrum = app.add_subcommand("spectrum", "Finite-difference level table and pairing columns");
  add_problem_options(spectrum, f);
  add_solver_options(spectrum, f);
  spectrum->add_flag("--no-extrapolate", f.no_extrapolate, "Report raw base-grid eigenvalues");

  auto* wkbc = app.add_subcommand("wkb-compare", "Numerical levels next to semiclassical and Airy values");
  add_problem_options(wkbc, f);
  add_solver_options(wkbc, f);
  wkbc->add_option("--n-max", f.n_max, "Largest n of the linear-well table");

  auto* summit = app.add_subcommand("summit", "Barrier-top phase corrections and near-summit levels");
  add_problem_options(summit, f);
  summit->add_option("--eps-min", f.eps_min, "Smallest epsilon");
  summit->add_option("--eps-max", f.eps_max, "Largest epsilon");
  summit->add_option("--eps-steps", f.eps_steps, "Number of epsilon samples");

  auto* airy_cmd = app.add_subcommand("airy", "Linear-well eigenvalues: Airy zeros and WKB");
  add_problem_options(airy_cmd, f);
  airy_cmd->add_option("--n-max", f.n_max, "Largest n");

  auto* fall = app.add_subcommand("fall-time", "Classical, estimated and stationary-phase fall times");
  add_problem_options(fall, f);
  fall->add_option("--delta-theta", f.delta_theta, "Initial tilt of the classical rod, rad");
  fall->add_option("--alpha", f.alpha, "Packet width sigma = alpha s for the spreading time");

  auto* evolve = app.add_subcommand("evolve", "Time evolution of the upright Gaussian");
  add_problem_options(evolve, f);
  add_solver_options(evolve, f);
  evolve->add_option("--sigma", f.sigma, "Gaussian width, rad (default alpha s)");
  evolve->add_option("--alpha", f.alpha, "Width in units of s when --sigma is absent");
  evolve->add_option("--t-end", f.t_end, "Final time, 1/omega_c");
  evolve->add_option("--samples", f.samples, "Number of recorded times");
  evolve->add_option("--dt", f.dt, "Crank-Nicolson step");
  evolve->add_option("--method", f.method, "direct, eigen or both");
  evolve->add_flag("--absorbing", f.absorbing, "Absorb probability beyond the fall threshold");
  evolve->add_option("--snapshots", f.snapshots, "Write density frames as JSON to this file");

  auto* slant = app.add_subcommand("slant", "Two-level doublet on a slightly slanted table");
  add_problem_options(slant, f);
  add_solver_options(slant, f);
  slant->add_option("--doublet", f.doublet, "Doublet index n (1-based)");
  slant->add_option("--tilt-min", f.tilt_min, "Smallest tilt, rad");
  slant->add_option("--tilt-max", f.tilt_max, "Largest tilt, rad");
  slant->add_option("--tilt-steps", f.tilt_steps, "Number of tilts");
  slant->add_flag("--oracle", f.oracle, "Also diagonalise the tilted grid Hamiltonian");

  for (auto* s : app.get_subcommands({})) {
    add_output_options(s, f);
    s->callback([&chosen, s] { chosen = s->get_name(); });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const RunConfig c = merge(chosen, f);
    std::vector<Table> tables;
    if (chosen == "spectrum") tables = cmd_spectrum(c);
    else if (chosen == "wkb-compare") tables = cmd_wkb_compare(c);
    else if (chosen == "summit") tables = cmd_summit(c);
    else if (chosen == "airy") tables = cmd_airy(c);
    else if (chosen == "fall-time") tables = cmd_fall_time(c);
    else if (chosen == "evolve") tables = cmd_evolve(c, err);
    else tables = cmd_slant(c);
    const std::string text = io::render(config_json(c), tables, c.format, c.precision);
    if (c.output.empty()) {
      out << text;
    } else {
      std::ofstream file(c.output);
      if (!file) throw ConfigError("cannot write '" + c.output + "'");
      file << text;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qrod::cli

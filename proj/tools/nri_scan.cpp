// nri-scan: sweeps of the chiral negative-index model written as CSV or JSON.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "nri/pipeline.hpp"
#include "output.hpp"

namespace {

using namespace nri;
using cli::Table;

constexpr const char* kFormatVersion = "1";

struct Settings {
  std::string config_path, out_path, format = "csv", units;
  std::optional<int> points;
  std::optional<double> start, stop, delta, density, gammap, phase, omegac;
  std::optional<std::string> scale;
  // impedance-find
  std::optional<double> cap, oc_lo, oc_hi;
  std::optional<int> grid;
  bool fixed_omegac = false;
  // saturation
  std::optional<std::string> amplitudes;
  std::optional<double> ratio;
};

// Resolved run: config plus sweep values in output units.
struct Run {
  std::string command;
  RunConfig cfg;
  std::set<std::string> cfg_keys;  // keys the config file set explicitly
  std::map<std::string, std::string> sweep_file;
  std::string units;
  double unit = 1.0;  // rad/s per detuning unit
  cli::Format format = cli::Format::csv;
  std::vector<std::pair<std::string, std::string>> sweep_meta;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

// Reads a plain config or the header of a previously emitted CSV file.
void read_config_file(const std::string& path, Run& run) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::configuration, "cannot open config file " + path);
  std::string line, cfg_text;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.rfind("# ", 0) == 0 && t.find(" = ") != std::string::npos) {
      const std::string body = t.substr(2);
      if (body.rfind("param.", 0) == 0)
        t = body.substr(6);
      else if (body.rfind("sweep.", 0) == 0)
        t = body;
      else
        continue;  // other header entries are informative only
    }
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      if (t.find(',') != std::string::npos) break;  // CSV data starts
      throw Error(ErrorCode::configuration, "malformed config line: " + t);
    }
    const std::string key = trim(t.substr(0, eq)), val = trim(t.substr(eq + 1));
    if (key.rfind("sweep.", 0) == 0) {
      run.sweep_file[key.substr(6)] = val;
    } else {
      run.cfg_keys.insert(key);
      cfg_text += key + " = " + val + "\n";
    }
  }
  run.cfg = parse_config(cfg_text);
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw Error(ErrorCode::configuration, "not a number for " + what + ": " + s);
  return v;
}

// command-line value, else config-file sweep entry, else the default
double pick(const std::optional<double>& flag, const Run& run, const std::string& key, double def) {
  if (flag) return *flag;
  if (auto it = run.sweep_file.find(key); it != run.sweep_file.end())
    return parse_number(it->second, "sweep." + key);
  return def;
}

std::string pick_text(const std::optional<std::string>& flag, const Run& run,
                      const std::string& key, const std::string& def) {
  if (flag) return *flag;
  if (auto it = run.sweep_file.find(key); it != run.sweep_file.end()) return it->second;
  return def;
}

Run prepare(const std::string& command, const Settings& s, double default_density,
            const std::string& default_units, double default_gammap_over_g2 = -1.0) {
  Run run;
  run.command = command;
  if (!s.config_path.empty()) read_config_file(s.config_path, run);
  if (!run.cfg_keys.count("density_cm3")) run.cfg.density_cm3 = default_density;
  if (default_gammap_over_g2 >= 0.0 && !run.cfg_keys.count("gammap_over_gamma2"))
    run.cfg.gammap_over_gamma2 = default_gammap_over_g2;
  if (s.density) run.cfg.density_cm3 = *s.density;
  if (s.gammap) run.cfg.gammap_over_gamma2 = *s.gammap;
  if (s.phase) run.cfg.omegac_phase_rad = *s.phase;
  if (s.omegac) run.cfg.omegac_abs_over_gamma2 = *s.omegac;
  run.cfg.params().validate();
  if (!(run.cfg.density_cm3 >= 0.0))
    throw Error(ErrorCode::configuration, "density must be non-negative", run.cfg.density_cm3);
  if (!(run.cfg.gammap_over_gamma2 >= 0.0))
    throw Error(ErrorCode::configuration, "gammap must be non-negative");
  require_resonance(run.cfg.params());

  std::string u = s.units.empty() ? pick_text(std::nullopt, run, "units", "") : s.units;
  if (u.empty()) u = default_units;
  if (u.empty()) u = run.cfg.density_cm3 > 1e15 ? "gammap" : "gamma2";
  if (u == "gamma2")
    run.unit = run.cfg.gamma2();
  else if (u == "gammap")
    run.unit = run.cfg.gammap();
  else if (u == "si")
    run.unit = 1.0;
  else
    throw Error(ErrorCode::configuration, "units must be gamma2, gammap or si: " + u);
  if (!(run.unit > 0.0)) throw Error(ErrorCode::configuration, "gammap units need gammap > 0");
  run.units = u;
  if (s.format == "csv")
    run.format = cli::Format::csv;
  else if (s.format == "json")
    run.format = cli::Format::json;
  else
    throw Error(ErrorCode::configuration, "format must be csv or json: " + s.format);
  return run;
}

// detuning defaults are given in gammap; converted to the run units
double gp_default(const Run& r, double over_gp) { return over_gp * r.cfg.gammap() / r.unit; }

std::string units_note(const Run& r) {
  if (r.units == "si") return "rad/s";
  return r.units == "gammap" ? "gammap (rad/s " + cli::format_double(r.cfg.gammap()) + ")"
                             : "gamma2 (rad/s " + cli::format_double(r.cfg.gamma2()) + ")";
}

Table start_table(const Run& r) {
  Table t;
  t.meta.emplace_back("generator", "nri-scan");
  t.meta.emplace_back("format_version", kFormatVersion);
  t.meta.emplace_back("command", r.command);
  t.meta.emplace_back("units.detuning", units_note(r));
  t.meta.emplace_back("units.polarizability", "cm^3 (Gaussian)");
  t.meta.emplace_back("units.density", "cm^-3");
  t.meta.emplace_back("convention", "Delta = -DeltaE = -DeltaB, deltac = 0; passive branch Im n >= 0");
  for (const auto& [k, v] : r.cfg.entries()) t.meta.emplace_back("param." + k, cli::format_double(v));
  t.meta.emplace_back("sweep.units", r.units);
  for (const auto& kv : r.sweep_meta) t.meta.push_back(kv);
  return t;
}

void add_sweep_meta(Run& r, const std::string& k, double v) {
  r.sweep_meta.emplace_back("sweep." + k, cli::format_double(v));
}

const std::vector<std::string> kRecordCols = {
    "aEE_re", "aEE_im", "aEB_re", "aEB_im", "aBE_re", "aBE_im", "aBB_re", "aBB_im",
    "eps_re", "eps_im", "mu_re",  "mu_im",  "xiEH_re", "xiEH_im", "xiHE_re", "xiHE_im",
    "n_re",   "n_im",   "fom",    "zinv_re", "zinv_im"};

std::vector<double> record_values(const PointResult& p) {
  if (!p.error.empty()) return std::vector<double>(kRecordCols.size(), std::nan(""));
  const cd v[] = {p.q.aEE, p.q.aEB, p.q.aBE, p.q.aBB, p.m.eps, p.m.mu, p.m.xiEH, p.m.xiHE, p.n.n};
  std::vector<double> out;
  for (const cd& z : v) {
    out.push_back(z.real());
    out.push_back(z.imag());
  }
  out.push_back(p.n.fom);
  out.push_back(p.zinv.real());
  out.push_back(p.zinv.imag());
  return out;
}

// Appends pipeline rows; x_of maps the internal sweep value to the emitted one.
int fill_records(Table& t, const std::string& xname, bool with_delta, const Run& r,
                 const std::vector<PointResult>& rows, const std::function<double(double)>& x_of) {
  t.num_cols = {xname};
  if (with_delta) t.num_cols.push_back("Delta");
  t.num_cols.insert(t.num_cols.end(), kRecordCols.begin(), kRecordCols.end());
  t.text_cols = {"branch", "error"};
  int errors = 0;
  for (const auto& p : rows) {
    std::vector<double> v = {x_of(p.x)};
    if (with_delta) v.push_back(p.Delta / r.unit);
    const auto rec = record_values(p);
    v.insert(v.end(), rec.begin(), rec.end());
    errors += !p.error.empty();
    t.add_row(std::move(v), {p.error.empty() ? branch_flag_name(p.n.branch) : "", p.error});
  }
  return errors;
}

std::vector<double> axis(double a, double b, int n, const std::string& scale) {
  if (!(a < b)) throw Error(ErrorCode::configuration, "sweep needs start < stop");
  if (scale == "linear") return linspace(a, b, n);
  if (scale == "log") return logspace(a, b, n);
  throw Error(ErrorCode::configuration, "scale must be linear or log: " + scale);
}

int points_of(const Settings& s, const Run& r, int def) {
  const double p = pick(s.points ? std::optional<double>(*s.points) : std::nullopt, r, "points", def);
  if (p < 2 || p != std::floor(p) || p > 1e7)
    throw Error(ErrorCode::configuration, "points must be an integer >= 2", p);
  return static_cast<int>(p);
}

int emit(const Table& t, const Run& r, const Settings& s, int errors) {
  cli::write_table(t, r.format, s.out_path);
  return errors > 0 ? 2 : 0;
}

int cmd_spectrum(const Settings& s, bool nonchiral) {
  Run r = prepare(nonchiral ? "nonchiral" : "spectrum", s, RunConfig{}.density_cm3, "");
  const bool gp_axis = r.units == "gammap";
  const double span = gp_axis ? 0.1 : 1e4 * r.cfg.gamma2() / r.unit;
  const double a = pick(s.start, r, "start", -span), b = pick(s.stop, r, "stop", span);
  const int n = points_of(s, r, 2001);
  add_sweep_meta(r, "start", a);
  add_sweep_meta(r, "stop", b);
  add_sweep_meta(r, "points", n);
  r.sweep_meta.emplace_back("sweep.scale", "linear");
  auto m = Model::from_config(r.cfg);
  m.nonchiral = nonchiral;
  auto xs = axis(a, b, n, "linear");
  for (auto& x : xs) x *= r.unit;
  const auto rows = sweep(m, SweepVariable::detuning, xs);
  Table t = start_table(r);
  if (nonchiral) t.meta.emplace_back("note", "rho41 forced to zero in the cross terms");
  const int err = fill_records(t, "Delta", false, r, rows, [&](double x) { return x / r.unit; });
  return emit(t, r, s, err);
}

// sweeps at a fixed detuning over a model entry
int cmd_fixed(const Settings& s, const std::string& name, SweepVariable var, double density,
              double delta_gp, double a0, double b0, int n0, const std::string& scale0,
              const std::string& xname) {
  Run r = prepare(name, s, density, "gammap");
  const double D = pick(s.delta, r, "delta", gp_default(r, delta_gp));
  const double a = pick(s.start, r, "start", a0), b = pick(s.stop, r, "stop", b0);
  const int n = points_of(s, r, n0);
  const std::string scale = pick_text(s.scale, r, "scale", scale0);
  add_sweep_meta(r, "delta", D);
  add_sweep_meta(r, "start", a);
  add_sweep_meta(r, "stop", b);
  add_sweep_meta(r, "points", n);
  r.sweep_meta.emplace_back("sweep.scale", scale);
  const auto m = Model::from_config(r.cfg);
  auto xs = axis(a, b, n, scale);
  std::function<double(double)> x_of = [](double x) { return x; };
  if (var == SweepVariable::omegac_abs) {
    // axis is log10(|Omega_c|/gamma3)
    const double g3 = m.params.gamma[2];
    for (auto& x : xs) x = std::pow(10.0, x) * g3;
    x_of = [g3](double x) { return std::log10(x / g3); };
  }
  const auto rows = sweep(m, var, xs, D * r.unit);
  Table t = start_table(r);
  const int err = fill_records(t, xname, true, r, rows, x_of);
  return emit(t, r, s, err);
}

int cmd_impedance(const Settings& s) {
  Run r = prepare("impedance-find", s, 1.56e17, "gammap");
  ImpedanceOptions o;
  const double a = pick(s.start, r, "start", gp_default(r, -0.05));
  const double b = pick(s.stop, r, "stop", gp_default(r, 0.05));
  o.delta_lo = a * r.unit;
  o.delta_hi = b * r.unit;
  o.log_oc_lo = pick(s.oc_lo, r, "oc_lo", -1.0);
  o.log_oc_hi = pick(s.oc_hi, r, "oc_hi", 1.0);
  if (s.fixed_omegac || pick(std::nullopt, r, "fixed_omegac", 0.0) != 0.0) {
    // keep the configured |Omega_c| and search Delta only
    o.log_oc_lo = o.log_oc_hi = std::log10(r.cfg.params().Omegac_abs / r.cfg.params().gamma[2]);
    r.sweep_meta.emplace_back("sweep.fixed_omegac", "1");
  }
  const double g = pick(s.grid ? std::optional<double>(*s.grid) : std::nullopt, r, "grid", 81);
  if (g < 2 || g != std::floor(g) || g > 1e4)
    throw Error(ErrorCode::configuration, "grid must be an integer >= 2", g);
  o.grid_delta = o.grid_oc = static_cast<int>(g);
  o.cap = pick(s.cap, r, "cap", 1e-3);
  add_sweep_meta(r, "start", a);
  add_sweep_meta(r, "stop", b);
  add_sweep_meta(r, "oc_lo", o.log_oc_lo);
  add_sweep_meta(r, "oc_hi", o.log_oc_hi);
  add_sweep_meta(r, "grid", g);
  add_sweep_meta(r, "cap", o.cap);
  const auto rep = impedance_find(Model::from_config(r.cfg), o);
  Table t = start_table(r);
  t.meta.emplace_back("result.found", rep.found ? "true" : "false");
  t.meta.emplace_back("result.objective", cli::format_double(rep.objective));
  t.num_cols = {"log10_Omegac_over_gamma3", "Omegac_abs_over_gamma2", "Delta", "objective"};
  t.num_cols.insert(t.num_cols.end(), kRecordCols.begin(), kRecordCols.end());
  t.text_cols = {"branch", "found", "error"};
  std::vector<double> v = {std::log10(rep.Omegac_abs / r.cfg.params().gamma[2]),
                           rep.Omegac_abs / r.cfg.gamma2(), rep.Delta / r.unit, rep.objective};
  const auto rec = record_values(rep.point);
  v.insert(v.end(), rec.begin(), rec.end());
  t.add_row(std::move(v), {rep.point.error.empty() ? branch_flag_name(rep.point.n.branch) : "",
                           rep.found ? "true" : "false", rep.point.error});
  if (!rep.found)
    std::cerr << "nri-scan: no point with |1/Z - 1| below " << o.cap
              << ", best candidate reported\n";
  return emit(t, r, s, rep.found && rep.point.error.empty() ? 0 : 1);  // emit maps >0 to 2
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), "amplitudes"));
  if (out.empty()) throw Error(ErrorCode::configuration, "empty amplitude list");
  for (double a : out)
    if (!(a > 0.0)) throw Error(ErrorCode::configuration, "probe amplitudes must be positive", a);
  return out;
}

int cmd_saturation(const Settings& s) {
  // unbroadened by default: the separated oracle compares the bare quartet
  Run r = prepare("saturation", s, RunConfig{}.density_cm3, "gamma2", 0.0);
  const double span = 5e3 * r.cfg.gamma2() / r.unit;
  const double a = pick(s.start, r, "start", -span), b = pick(s.stop, r, "stop", span);
  const int n = points_of(s, r, 201);
  const std::string amp_text = pick_text(s.amplitudes, r, "amplitudes", "0.001,1,10");
  const auto amps = parse_list(amp_text);
  const double ratio = pick(s.ratio, r, "ratio", 137.0);
  add_sweep_meta(r, "start", a);
  add_sweep_meta(r, "stop", b);
  add_sweep_meta(r, "points", n);
  r.sweep_meta.emplace_back("sweep.amplitudes", amp_text);
  add_sweep_meta(r, "ratio", ratio);
  const auto m = Model::from_config(r.cfg);
  auto xs = axis(a, b, n, "linear");
  for (auto& x : xs) x *= r.unit;
  Table t = start_table(r);
  t.meta.emplace_back("units.amplitude", "gamma2");
  t.num_cols = {"Delta", "OmegaE", "OmegaB"};
  for (const char* c : {"EE", "EB", "BE", "BB"}) {
    for (const char* k : {"exact_", "linear_"}) {
      t.num_cols.push_back(std::string(k) + "a" + c + "_re");
      t.num_cols.push_back(std::string(k) + "a" + c + "_im");
    }
  }
  for (const char* c : {"EE", "EB", "BE", "BB"}) t.num_cols.push_back(std::string("dev_") + c);
  for (const char* c : {"EE", "EB", "BE", "BB"}) {
    t.num_cols.push_back(std::string("dev_") + c + "_re");
    t.num_cols.push_back(std::string("dev_") + c + "_im");
  }
  t.text_cols = {"error"};
  int err = 0;
  const double g2 = r.cfg.gamma2();
  for (double amp : amps) {
    for (const auto& row : saturation(m, amp * g2, ratio, xs)) {
      std::vector<double> v = {row.Delta / r.unit, row.OmegaE / g2, row.OmegaB / g2};
      const cd ex[] = {row.exact.aEE, row.exact.aEB, row.exact.aBE, row.exact.aBB};
      const cd li[] = {row.linear.aEE, row.linear.aEB, row.linear.aBE, row.linear.aBB};
      const bool bad = !row.error.empty();
      for (int c = 0; c < 4; ++c)
        for (const cd& z : {ex[c], li[c]}) {
          v.push_back(bad ? std::nan("") : z.real());
          v.push_back(bad ? std::nan("") : z.imag());
        }
      for (double d : row.dev_complex) v.push_back(bad ? std::nan("") : d);
      for (double d : row.dev_parts) v.push_back(bad ? std::nan("") : d);
      err += bad;
      t.add_row(std::move(v), {row.error});
    }
  }
  return emit(t, r, s, err);
}

void common_flags(CLI::App* c, Settings& s) {
  c->add_option("--config", s.config_path, "key = value config file (or a previous CSV output)");
  c->add_option("--out", s.out_path, "output file, stdout when omitted");
  c->add_option("--format", s.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  c->add_option("--units", s.units, "detuning units: gamma2, gammap or si")
      ->check(CLI::IsMember({"gamma2", "gammap", "si"}));
  c->add_option("--density", s.density, "number density, cm^-3");
  c->add_option("--gammap", s.gammap, "homogeneous broadening in units of gamma2");
  c->add_option("--phase", s.phase, "coupling Rabi phase, rad");
  c->add_option("--omegac", s.omegac, "coupling Rabi magnitude in units of gamma2");
}

void sweep_flags(CLI::App* c, Settings& s, bool fixed_delta) {
  c->add_option("--points", s.points, "number of sweep points");
  c->add_option("--start", s.start, "sweep start");
  c->add_option("--stop", s.stop, "sweep stop");
  if (fixed_delta) {
    c->add_option("--delta", s.delta, "fixed detuning in output units");
    c->add_option("--scale", s.scale, "linear or log")->check(CLI::IsMember({"linear", "log"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sweeps of a chiral negative-index atomic medium"};
  app.require_subcommand(1);
  Settings s;
  auto* spectrum = app.add_subcommand("spectrum", "full pipeline over the probe detuning");
  auto* nonchiral = app.add_subcommand("nonchiral", "spectrum with rho41 forced to zero");
  auto* phase = app.add_subcommand("phase", "index versus coupling phase at fixed detuning");
  auto* density = app.add_subcommand("density", "response versus density at fixed detuning");
  auto* tun = app.add_subcommand("tunability", "index versus log10(|Omega_c|/gamma3)");
  auto* imp = app.add_subcommand("impedance-find", "search (Delta, |Omega_c|) for 1/Z = 1");
  auto* sat = app.add_subcommand("saturation", "exact versus linear polarizabilities");
  auto* ang = app.add_subcommand("angle", "index versus the coupling-field angle theta");
  for (auto* c : {spectrum, nonchiral, phase, density, tun, imp, sat, ang}) common_flags(c, s);
  for (auto* c : {spectrum, nonchiral, sat}) sweep_flags(c, s, false);
  for (auto* c : {phase, density, tun, ang}) sweep_flags(c, s, true);
  imp->add_option("--start", s.start, "detuning window start");
  imp->add_option("--stop", s.stop, "detuning window stop");
  imp->add_option("--oc-lo", s.oc_lo, "lower log10(|Omega_c|/gamma3)");
  imp->add_option("--oc-hi", s.oc_hi, "upper log10(|Omega_c|/gamma3)");
  imp->add_option("--grid", s.grid, "coarse grid points per axis");
  imp->add_option("--cap", s.cap, "acceptance threshold on |1/Z - 1|");
  imp->add_flag("--fixed-omegac", s.fixed_omegac, "keep the configured |Omega_c|, search Delta only");
  sat->add_option("--amplitudes", s.amplitudes, "comma list of Omega_E in units of gamma2");
  sat->add_option("--ratio", s.ratio, "Omega_E / Omega_B");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*spectrum) return cmd_spectrum(s, false);
    if (*nonchiral) return cmd_spectrum(s, true);
    if (*phase)
      return cmd_fixed(s, "phase", SweepVariable::phase, 5e16, -0.045, 0.0, 2.0 * kPi, 361,
                       "linear", "phase_rad");
    if (*density)
      return cmd_fixed(s, "density", SweepVariable::density, 5e16, -0.045, 1e14, 1e17, 301, "log",
                       "density_cm3");
    if (*tun)
      return cmd_fixed(s, "tunability", SweepVariable::omegac_abs, 1.56e17, 0.0117, -2.0, 1.0, 301,
                       "linear", "log10_Omegac_over_gamma3");
    if (*imp) return cmd_impedance(s);
    if (*sat) return cmd_saturation(s);
    if (*ang)
      return cmd_fixed(s, "angle", SweepVariable::theta, 5e16, -0.035, 0.0, kPi, 181, "linear",
                       "theta_rad");
  } catch (const Error& e) {
    std::cerr << "nri-scan: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "nri-scan: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

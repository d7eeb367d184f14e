#include "nri/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nri {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SystemParams RunConfig::params() const {
  const double g2 = gamma2();
  const double g3 = gamma3_over_gamma2 * g2;
  SystemParams p;
  p.gamma = {0.0, g2, g3, 0.0, g3};
  p.lambda_probe = lambda_nm * 1e-7;
  const double w = p.probe_omega();
  p.d34 = wigner_weisskopf_dipole(g3, w);
  p.mu21 = wigner_weisskopf_dipole(g2, w);
  p.omega1 = 1.5 * w;
  p.omega2 = 1.3 * w;
  p.omegac = p.omega1 - p.omega2;
  p.Omega1 = omega1_over_gamma2 * g2;
  p.Omega2 = omega2_over_gamma2 * g2;
  p.Omegac_abs = omegac_abs_over_gamma2 * g2;
  p.Omegac_phase = omegac_phase_rad;
  p.validate();
  return p;
}

std::map<std::string, double> RunConfig::entries() const {
  return {
      {"gamma2_hz", gamma2_hz},
      {"gamma3_over_gamma2", gamma3_over_gamma2},
      {"omega1_over_gamma2", omega1_over_gamma2},
      {"omega2_over_gamma2", omega2_over_gamma2},
      {"omegac_abs_over_gamma2", omegac_abs_over_gamma2},
      {"omegac_phase_rad", omegac_phase_rad},
      {"lambda_nm", lambda_nm},
      {"gammap_over_gamma2", gammap_over_gamma2},
      {"density_cm3", density_cm3},
  };
}

void RunConfig::set(const std::string& key, double v) {
  if (key == "gamma2_hz") gamma2_hz = v;
  else if (key == "gamma3_over_gamma2") gamma3_over_gamma2 = v;
  else if (key == "omega1_over_gamma2") omega1_over_gamma2 = omega2_over_gamma2 = v;
  else if (key == "omega2_over_gamma2") omega2_over_gamma2 = v;
  else if (key == "omegac_abs_over_gamma2") omegac_abs_over_gamma2 = v;
  else if (key == "omegac_phase_rad") omegac_phase_rad = v;
  else if (key == "lambda_nm") lambda_nm = v;
  else if (key == "gammap_over_gamma2") gammap_over_gamma2 = v;
  else if (key == "density_cm3") density_cm3 = v;
  else throw Error(ErrorCode::configuration, "unknown key '" + key + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  // omega1 sets both Lambda drives unless omega2 is given explicitly,
  // so apply omega2 last
  bool have_omega2 = false;
  double omega2 = 0.0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::configuration, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size())
      throw Error(ErrorCode::configuration, "line " + std::to_string(lineno) + ": bad number '" + val + "'");
    if (key == "omega2_over_gamma2") {
      have_omega2 = true;
      omega2 = v;
    } else {
      cfg.set(key, v);
    }
  }
  if (have_omega2) cfg.omega2_over_gamma2 = omega2;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::configuration, "cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace nri

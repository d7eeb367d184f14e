#pragma once

#include <map>
#include <string>

#include "nri/core_params.hpp"

namespace nri {

// Flat key = value run configuration. Rates are in units of gamma2.
struct RunConfig {
  double gamma2_hz = 1.0e3;  // gamma2 = 2 pi * gamma2_hz rad/s
  double gamma3_over_gamma2 = 137.0 * 137.0;
  double omega1_over_gamma2 = 100.0;
  double omega2_over_gamma2 = 100.0;
  double omegac_abs_over_gamma2 = 1.0e4;
  double omegac_phase_rad = kPi / 2.0;
  double lambda_nm = 600.0;
  double gammap_over_gamma2 = 1.0e3;
  double density_cm3 = 5.0e16;

  double gamma2() const { return 2.0 * kPi * gamma2_hz; }
  double gammap() const { return gammap_over_gamma2 * gamma2(); }
  SystemParams params() const;

  // ordered key/value view, used for metadata headers
  std::map<std::string, double> entries() const;
  void set(const std::string& key, double value);
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace nri

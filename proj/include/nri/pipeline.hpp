#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "nri/anisotropy.hpp"
#include "nri/config.hpp"
#include "nri/liouville_oracle.hpp"

namespace nri {

// Everything needed to evaluate the response at one point.
struct Model {
  SystemParams params;
  BroadeningSpec broadening;
  double density = 0.0;    // cm^-3
  bool nonchiral = false;  // force rho41 = 0 in the cross terms

  static Model from_config(const RunConfig& cfg);
  DarkStateSolution dark() const;
};

struct PointResult {
  double x = 0.0;      // sweep value in internal units (rad/s, cm^-3, rad)
  double Delta = 0.0;  // rad/s
  PolarizabilityQuartet q{};
  MediumResponse m{};
  RefractiveResult n{};
  cd zinv{};
  std::string error;  // empty unless a module error fired
};

// quartet -> local field -> index -> FoM -> inverse impedance
PointResult evaluate_point(const Model& model, double Delta);

enum class SweepVariable { detuning, density, phase, omegac_abs, theta };

// theta sweeps evaluate the angle-dependent index at detuning Delta;
// the other variables replace the corresponding model entry.
std::vector<PointResult> sweep(const Model& model, SweepVariable var,
                               const std::vector<double>& values, double Delta = 0.0);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);  // a, b > 0, geometric

// Runs fn(i) for i in [0, n) on a few threads; results land by index.
void parallel_for(int n, const std::function<void(int)>& fn);

struct ImpedanceOptions {
  double delta_lo = 0.0, delta_hi = 0.0;  // rad/s; both zero selects +-0.05 gammap
  // log10(|Omega_c|/gamma3); equal bounds keep |Omega_c| fixed
  double log_oc_lo = -1.0, log_oc_hi = 1.0;
  int grid_delta = 81, grid_oc = 81;
  double cap = 1e-3;
  int max_sweeps = 400;
  int starts = 8;  // grid local minima refined, lowest first
};

struct ImpedanceReport {
  bool found = false;
  double Delta = 0.0;       // rad/s
  double Omegac_abs = 0.0;  // rad/s
  double objective = 0.0;   // |Z^-1 - 1|
  PointResult point;
};

// Coarse grid over (Delta, log|Omega_c|), then alternating golden-section from
// the lowest grid local minima, then damped Newton on 1/Z - 1 = 0 from each;
// the best refined point wins.
ImpedanceReport impedance_find(const Model& model, const ImpedanceOptions& opt = {});

struct SaturationRow {
  double OmegaE = 0.0, OmegaB = 0.0;  // rad/s
  double Delta = 0.0;
  PolarizabilityQuartet exact{}, linear{};
  std::array<double, 4> dev_complex{};  // EE, EB, BE, BB
  // real and imaginary parts separately: re EE, im EE, re EB, ...; NaN where
  // the reference part vanishes
  std::array<double, 8> dev_parts{};
  std::string error;
};

std::vector<SaturationRow> saturation(const Model& model, double OmegaE, double ratio,
                                      const std::vector<double>& Deltas);

}  // namespace nri

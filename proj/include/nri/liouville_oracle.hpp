#pragma once

#include <Eigen/Dense>

#include "nri/linear_response.hpp"

namespace nri {

using Vector25 = Eigen::Matrix<cd, 25, 1>;
using Matrix25 = Eigen::Matrix<cd, 25, 25>;

// Storage order: populations rho11..rho55, then the upper triangle row-major
// (rho12, rho13, rho14, rho15, rho23, ..., rho45), then the matching lower
// entries (rho21, rho31, ..., rho54) in the same order.
int density_index(int i, int j);  // 1-based levels

struct DensityVector25 {
  Vector25 v = Vector25::Zero();
  cd operator()(int i, int j) const { return v(density_index(i, j)); }
};

struct LiouvillianSystem {
  Matrix25 M;  // dynamic rows divided by rate_scale, row 0 is the trace row
  Vector25 a;  // (1, 0, ..., 0)
  double rate_scale = 1.0;  // rad/s
};

// Rotating-frame steady-state equations. gammap adds pure dephasing that
// reproduces the substituted broadened rates on rho34, rho21, rho31 and leaves
// rho42 untouched; other coherences get the dephasing of the same correlated
// fluctuation model.
LiouvillianSystem build_liouvillian(const SystemParams& p, const ProbeDetunings& det, cd OmegaE,
                                    cd OmegaB, double gammap = 0.0);

struct SteadyState {
  DensityVector25 rho;
  double condition = 0.0;  // 1-norm estimate
  double residual = 0.0;   // |M rho - a| / |a|
};

// LU with partial pivoting plus one refinement step. Throws ill_conditioned
// when the estimate exceeds cond_limit or the residual exceeds 1e-10.
SteadyState steady_state(const LiouvillianSystem& sys, double cond_limit = 1e12);

struct DensityChecks {
  double trace_error = 0.0;
  double population_imag = 0.0;
  double population_excess = 0.0;  // distance outside [0, 1]
  double hermiticity = 0.0;
  bool ok(double tol = 1e-10) const {
    return trace_error <= tol && population_imag <= tol && population_excess <= tol &&
           hermiticity <= tol;
  }
};
DensityChecks check_density(const DensityVector25& rho);

// Exact polarizabilities from three solves at (E,B), (E,-B), (-E,B).
// E in statV/cm, B in G.
PolarizabilityQuartet separated_polarizabilities(const SystemParams& p, const ProbeDetunings& det,
                                                 double E, double B, double gammap = 0.0);

// Same, with the probe given by its Rabi frequencies (rad/s).
PolarizabilityQuartet separated_polarizabilities_rabi(const SystemParams& p,
                                                      const ProbeDetunings& det, double OmegaE,
                                                      double OmegaB, double gammap = 0.0);

// log10|1 - exact/linear|, clamped below at -16.
double deviation(cd alpha_exact, cd alpha_linear);

// Real and imaginary parts separately. A part whose reference is exactly zero,
// or below zero_rel times |alpha_linear|, throws reference_zero.
double deviation_part(double exact, double linear, double scale, double zero_rel = 1e-12);

}  // namespace nri

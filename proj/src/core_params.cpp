#include "nri/core_params.hpp"

#include <cmath>

namespace nri {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_frequency: return "invalid-frequency";
    case ErrorCode::degenerate_drive: return "degenerate-drive";
    case ErrorCode::resonance: return "resonance";
    case ErrorCode::inconsistent_detuning: return "inconsistent-detuning";
    case ErrorCode::singular_response: return "singular-response";
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::kk_truncation: return "kk-truncation";
    case ErrorCode::local_field_singularity: return "local-field-singularity";
    case ErrorCode::degenerate_medium: return "degenerate-medium";
    case ErrorCode::invalid_resolution: return "invalid-resolution";
    case ErrorCode::ill_conditioned: return "ill-conditioned";
    case ErrorCode::zero_field: return "zero-field";
    case ErrorCode::reference_zero: return "reference-zero";
    case ErrorCode::singular_correction: return "singular-correction";
    case ErrorCode::singular_permeability: return "singular-permeability";
    case ErrorCode::not_found: return "not-found";
  }
  return "unknown";
}

void SystemParams::validate() const {
  for (double g : gamma)
    if (!(g >= 0.0)) throw Error(ErrorCode::configuration, "decay rates must be >= 0", g);
  if (!(Omegac_abs >= 0.0))
    throw Error(ErrorCode::configuration, "|Omega_c| must be >= 0", Omegac_abs);
  if (!(lambda_probe > 0.0))
    throw Error(ErrorCode::invalid_frequency, "probe wavelength must be > 0", lambda_probe);
}

double wigner_weisskopf_dipole(double gamma, double omega) {
  if (!(omega > 0.0)) throw Error(ErrorCode::invalid_frequency, "omega must be > 0", omega);
  if (gamma < 0.0) throw Error(ErrorCode::configuration, "gamma must be >= 0", gamma);
  return std::sqrt(3.0 * gamma * kHbar * kLightSpeed * kLightSpeed * kLightSpeed /
                   (4.0 * omega * omega * omega));
}

SystemParams default_paper_params() {
  SystemParams p;
  const double g2 = kDefaultGamma2;
  const double g3 = 137.0 * 137.0 * g2;
  p.gamma = {0.0, g2, g3, 0.0, g3};
  p.lambda_probe = 600e-7;
  const double w = p.probe_omega();
  p.d34 = wigner_weisskopf_dipole(g3, w);
  p.mu21 = wigner_weisskopf_dipole(g2, w);
  // Carrier frequencies only matter through the loop condition. Illustrative
  // level layout: E1 = 0, E2 = w, E4 = 0.2 w, E3 = 1.2 w, E5 = 1.5 w.
  p.omega1 = 1.5 * w;
  p.omega2 = 1.3 * w;
  p.omegac = p.omega1 - p.omega2;
  p.Omega1 = 100.0 * g2;
  p.Omega2 = 100.0 * g2;
  p.Omegac_abs = 1.0e4 * g2;
  p.Omegac_phase = kPi / 2.0;
  return p;
}

ResonanceResult resonance_check(const SystemParams& p, double tolerance) {
  if (tolerance <= 0.0) tolerance = 1e-9 * std::abs(p.omega1);
  ResonanceResult r;
  r.residual = p.omegac - p.omega1 + p.omega2;
  r.pass = std::abs(r.residual) <= tolerance;
  return r;
}

void require_resonance(const SystemParams& p) {
  const auto r = resonance_check(p);
  if (!r.pass) throw Error(ErrorCode::resonance, "closed-loop condition violated", r.residual);
}

DarkStateSolution dark_state_populations(double Omega1, double Omega2) {
  const double s = Omega1 * Omega1 + Omega2 * Omega2;
  if (!(s > 0.0)) throw Error(ErrorCode::degenerate_drive, "both Lambda Rabi frequencies vanish");
  DarkStateSolution d;
  d.rho11 = Omega2 * Omega2 / s;
  d.rho44 = Omega1 * Omega1 / s;
  d.rho41 = -Omega1 * Omega2 / s;
  return d;
}

}  // namespace nri

#pragma once

#include <array>
#include <complex>
#include <numbers>

#include "nri/errors.hpp"

namespace nri {

using cd = std::complex<double>;

// CGS constants
inline constexpr double kHbar = 1.054571817e-27;  // erg s
inline constexpr double kLightSpeed = 2.99792458e10;  // cm/s
inline constexpr double kPi = std::numbers::pi;

// Five-level system. Levels are numbered 1..5 as in the usual picture:
// |3>-|4> carries the electric probe transition, |2>-|1> the magnetic one,
// |3>-|2> the coupling field and |5> is the upper level of the Lambda drive.
struct SystemParams {
  std::array<double, 5> gamma{};  // population decay of level i at gamma[i-1], rad/s
  double d34 = 0.0;               // statC cm
  double mu21 = 0.0;              // erg/G
  double omega1 = 0.0;            // drive carrier frequencies, rad/s
  double omega2 = 0.0;
  double omegac = 0.0;
  double Omega1 = 0.0;  // real Rabi frequencies, rad/s
  double Omega2 = 0.0;
  double Omegac_abs = 0.0;
  double Omegac_phase = 0.0;
  double lambda_probe = 0.0;  // cm

  double gamma_of(int level) const { return gamma.at(level - 1); }
  // off-diagonal decay (gamma_i + gamma_j)/2
  double gamma_ij(int i, int j) const { return 0.5 * (gamma_of(i) + gamma_of(j)); }
  cd Omegac() const { return std::polar(Omegac_abs, Omegac_phase); }
  double probe_omega() const { return 2.0 * kPi * kLightSpeed / lambda_probe; }

  void validate() const;
};

// Probe detunings. DeltaE = DeltaB + deltac is enforced by construction.
class ProbeDetunings {
 public:
  // general point: DeltaE follows from the closed loop
  static ProbeDetunings from_components(double DeltaB, double deltac) {
    return ProbeDetunings(DeltaB + deltac, DeltaB, deltac);
  }
  // sweep point: DeltaE = DeltaB = -Delta, deltac = 0
  static ProbeDetunings sweep(double Delta) { return ProbeDetunings(-Delta, -Delta, 0.0); }

  double DeltaE() const { return DeltaE_; }
  double DeltaB() const { return DeltaB_; }
  double deltac() const { return deltac_; }
  double Delta() const { return -DeltaE_; }

 private:
  ProbeDetunings(double e, double b, double c) : DeltaE_(e), DeltaB_(b), deltac_(c) {}
  double DeltaE_, DeltaB_, deltac_;
};

struct DarkStateSolution {
  double rho11 = 0.0;
  double rho44 = 0.0;
  double rho41 = 0.0;
  double rho55 = 0.0;
  double rho51 = 0.0;
  double rho54 = 0.0;
};

struct ResonanceResult {
  bool pass = false;
  double residual = 0.0;  // omegac - omega1 + omega2
};

double wigner_weisskopf_dipole(double gamma, double omega);

// gamma2 in rad/s; 1 kHz is read as 2 pi 10^3 rad/s
inline constexpr double kDefaultGamma2 = 2.0 * kPi * 1.0e3;

SystemParams default_paper_params();

// tolerance <= 0 selects 1e-9 * omega1
ResonanceResult resonance_check(const SystemParams& p, double tolerance = -1.0);
void require_resonance(const SystemParams& p);

DarkStateSolution dark_state_populations(double Omega1, double Omega2);
inline DarkStateSolution dark_state(const SystemParams& p) {
  return dark_state_populations(p.Omega1, p.Omega2);
}

}  // namespace nri

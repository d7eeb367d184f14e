#pragma once

#include "nri/linear_response.hpp"

namespace nri {

struct MediumResponse {
  cd eps{1.0, 0.0};
  cd mu{1.0, 0.0};
  cd xiEH{0.0, 0.0};
  cd xiHE{0.0, 0.0};
  double density = 0.0;  // cm^-3
};

enum class Handedness { plus, minus };

enum class BranchFlag {
  principal,     // principal square root kept
  flipped,       // other root taken to keep Im n >= 0
  gain_warning,  // both roots have Im n < 0, larger Im kept
};

const char* branch_flag_name(BranchFlag f);

struct FomResult {
  double value = 0.0;
  bool defined = false;  // false when Im n = 0, value is then +inf
};

struct RefractiveResult {
  cd n;
  double fom = 0.0;
  bool fom_defined = false;
  BranchFlag branch = BranchFlag::principal;
};

// Clausius-Mossotti type correction shared by all four constitutive terms.
// Throws local_field_singularity when |L| < 1e-12.
MediumResponse local_field_correct(const PolarizabilityQuartet& q, double density);

// Local-field denominator L, exposed for diagnostics.
cd local_field_denominator(const PolarizabilityQuartet& q, double density);

// n = sqrt(eps mu - (xiEH + xiHE)^2/4) +/- (i/2)(xiEH - xiHE). For the minus
// mode the caller supplies that mode's own (sign-flipped) cross terms.
RefractiveResult refractive_index(const MediumResponse& m, Handedness h = Handedness::plus);

// Passive branch selection shared with the angle-dependent index:
// n = s + add with s = +/- sqrt(radicand).
RefractiveResult passive_branch(cd radicand, cd add);

FomResult figure_of_merit(cd n);

// Normal incidence from a non-chiral medium (eps1, mu1) onto m2.
cd fresnel_reflection(cd eps1, cd mu1, const MediumResponse& m2, Handedness h = Handedness::plus);

// Inverse impedance (s + (i/2)(xiEH + xiHE))/mu with s the root behind the
// passive index; falls back to the other root if that one has Re < 0.
cd inverse_impedance(const MediumResponse& m);

// Tolerated |n + 1| for a slab of thickness d resolving dx.
double superlens_tolerance(double d, double dx);

}  // namespace nri

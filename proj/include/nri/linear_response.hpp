#pragma once

#include <functional>
#include <vector>

#include "nri/core_params.hpp"

namespace nri {

struct PolarizabilityQuartet {
  cd aEE, aEB, aBE, aBB;  // cm^3
};

struct BroadeningSpec {
  double gammap = 0.0;         // homogeneous width, rad/s
  double doppler_sigma = 0.0;  // Gaussian 1/e half-width, rad/s
  int doppler_nodes = 41;

  void validate() const;
};

// The four complex denominators after the homogeneous substitution
// gamma21 -> gamma21 + gp, gamma34 -> gamma34 + gp, gamma31 -> gamma31 + 2 gp.
struct Denominators {
  cd D42, D34, D31, D21;
};

// Detuning arguments of the denominators taken as independent variables.
// Physical points satisfy DeltaE = DeltaB + deltac; broadening kernels shift
// them independently.
struct DetuningArgs {
  double DeltaE = 0.0, DeltaB = 0.0, deltac = 0.0;
  static DetuningArgs of(const ProbeDetunings& d) { return {d.DeltaE(), d.DeltaB(), d.deltac()}; }
};

Denominators denominators(const SystemParams& p, const DetuningArgs& det, double gammap);

PolarizabilityQuartet quartet_kernel(const SystemParams& p, const DetuningArgs& det,
                                     const DarkStateSolution& dark, double gammap);

// Homogeneous-broadened quartet. A nonzero doppler_sigma is ignored
// here, see apply_doppler.
PolarizabilityQuartet polarizability_quartet(const SystemParams& p, const ProbeDetunings& det,
                                             const DarkStateSolution& dark,
                                             const BroadeningSpec& broadening);

using QuartetFn = std::function<PolarizabilityQuartet(const DetuningArgs&)>;

// Gauss-Hermite average over a shared shift x ~ exp(-x^2/sigma^2) added to
// DeltaE, deltac and DeltaB.
PolarizabilityQuartet apply_doppler(const QuartetFn& fn, const BroadeningSpec& spec,
                                    const ProbeDetunings& det);

// Homogeneous substitution plus Doppler average when doppler_sigma > 0.
PolarizabilityQuartet broadened_quartet(const SystemParams& p, const ProbeDetunings& det,
                                        const DarkStateSolution& dark,
                                        const BroadeningSpec& broadening);

// Nodes and weights for weight function exp(-t^2), weights sum to sqrt(pi).
void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct KkOptions {
  double edge_ratio = 1e-3;  // allowed |Im| at the edges relative to peak |Im|
};

// Samples on a uniform grid ordered by increasing probe frequency, symmetric
// about resonance. Compares Re - asymptote with the discrete Hilbert transform
// of Im (odd-kernel sum); max mismatch over the central half over peak |z|.
double kramers_kronig_residual(const std::vector<cd>& z, const KkOptions& opt = {});

enum class QuartetComponent { EE, EB, BE, BB };
cd component(const PolarizabilityQuartet& q, QuartetComponent c);

struct OmegacOptimum {
  double Omegac_abs = 0.0;  // rad/s
  double magnitude = 0.0;   // |alpha| at the optimum
};

// Scans |Omega_c| (log grid, golden refinement) for the largest |alpha| of the
// chosen component at fixed detuning.
OmegacOptimum omegac_optimum(const SystemParams& p, const ProbeDetunings& det,
                             const BroadeningSpec& broadening, QuartetComponent which,
                             double lo, double hi, int grid = 400);

}  // namespace nri

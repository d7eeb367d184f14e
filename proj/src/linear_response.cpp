#include "nri/linear_response.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace nri {

void BroadeningSpec::validate() const {
  if (!(gammap >= 0.0)) throw Error(ErrorCode::configuration, "gammap must be >= 0", gammap);
  if (!(doppler_sigma >= 0.0))
    throw Error(ErrorCode::configuration, "doppler_sigma must be >= 0", doppler_sigma);
  if (doppler_nodes < 1 || doppler_nodes % 2 == 0)
    throw Error(ErrorCode::configuration, "doppler_nodes must be odd and >= 1", doppler_nodes);
}

Denominators denominators(const SystemParams& p, const DetuningArgs& d, double gp) {
  const cd i(0.0, 1.0);
  Denominators D;
  D.D42 = p.gamma_ij(4, 2) + i * (d.DeltaE - d.deltac);
  D.D34 = p.gamma_ij(3, 4) + gp + i * d.DeltaE;
  D.D31 = p.gamma_ij(3, 1) + 2.0 * gp + i * (d.DeltaB + d.deltac);
  D.D21 = p.gamma_ij(2, 1) + gp + i * d.DeltaB;
  return D;
}

PolarizabilityQuartet quartet_kernel(const SystemParams& p, const DetuningArgs& d,
                                     const DarkStateSolution& dark, double gp) {
  const cd i(0.0, 1.0);
  const auto D = denominators(p, d, gp);
  const cd Oc = p.Omegac();
  const double Oc2 = p.Omegac_abs * p.Omegac_abs;
  const cd den_e = D.D42 * D.D34 + 0.25 * Oc2;
  const cd den_b = D.D31 * D.D21 + 0.25 * Oc2;
  if (den_e == 0.0 || den_b == 0.0)
    throw Error(ErrorCode::singular_response, "vanishing quartet denominator", d.DeltaE);

  PolarizabilityQuartet q;
  q.aEE = i / (2.0 * kHbar) * p.d34 * p.d34 * dark.rho44 * D.D42 / den_e;
  q.aBB = i / (2.0 * kHbar) * p.mu21 * p.mu21 * dark.rho11 * D.D31 / den_b;
  const double cross = -p.d34 * p.mu21 * dark.rho41 / (4.0 * kHbar);
  q.aEB = cross * Oc / den_e;
  q.aBE = cross * std::conj(Oc) / den_b;
  return q;
}

PolarizabilityQuartet polarizability_quartet(const SystemParams& p, const ProbeDetunings& det,
                                             const DarkStateSolution& dark,
                                             const BroadeningSpec& broadening) {
  require_resonance(p);
  broadening.validate();
  return quartet_kernel(p, DetuningArgs::of(det), dark, broadening.gammap);
}

void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw Error(ErrorCode::configuration, "quadrature needs at least one node", n);
  // Golub-Welsch on the symmetric Jacobi matrix of the Hermite recurrence
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(n);
  weights.resize(n);
  const double sqrt_pi = std::sqrt(kPi);
  for (int k = 0; k < n; ++k) {
    nodes[k] = es.eigenvalues()(k);
    const double v = es.eigenvectors()(0, k);
    weights[k] = sqrt_pi * v * v;
  }
  // odd rules: pin the middle node to exactly zero
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

PolarizabilityQuartet apply_doppler(const QuartetFn& fn, const BroadeningSpec& spec,
                                    const ProbeDetunings& det) {
  if (spec.doppler_nodes < 1)
    throw Error(ErrorCode::configuration, "doppler_nodes must be >= 1", spec.doppler_nodes);
  if (!(spec.doppler_sigma >= 0.0))
    throw Error(ErrorCode::configuration, "doppler_sigma must be >= 0", spec.doppler_sigma);
  std::vector<double> t, w;
  gauss_hermite(spec.doppler_nodes, t, w);
  const double norm = 1.0 / std::sqrt(kPi);
  PolarizabilityQuartet acc{};
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double x = spec.doppler_sigma * t[k];
    DetuningArgs a = DetuningArgs::of(det);
    a.DeltaE += x;
    a.deltac += x;
    a.DeltaB += x;
    const auto q = fn(a);
    const double wk = w[k] * norm;
    acc.aEE += wk * q.aEE;
    acc.aEB += wk * q.aEB;
    acc.aBE += wk * q.aBE;
    acc.aBB += wk * q.aBB;
  }
  return acc;
}

PolarizabilityQuartet broadened_quartet(const SystemParams& p, const ProbeDetunings& det,
                                        const DarkStateSolution& dark,
                                        const BroadeningSpec& broadening) {
  if (broadening.doppler_sigma <= 0.0) return polarizability_quartet(p, det, dark, broadening);
  require_resonance(p);
  broadening.validate();
  const double gp = broadening.gammap;
  return apply_doppler(
      [&](const DetuningArgs& a) { return quartet_kernel(p, a, dark, gp); }, broadening, det);
}

double kramers_kronig_residual(const std::vector<cd>& z, const KkOptions& opt) {
  const std::size_t n = z.size();
  if (n < 8) throw Error(ErrorCode::kk_truncation, "grid too short", static_cast<double>(n));
  double peak = 0.0, peak_im = 0.0;
  for (const auto& v : z) {
    peak = std::max(peak, std::abs(v));
    peak_im = std::max(peak_im, std::abs(v.imag()));
  }
  if (peak == 0.0) return 0.0;
  const double edge_im = std::max(std::abs(z.front().imag()), std::abs(z.back().imag()));
  if (edge_im > opt.edge_ratio * peak_im)
    throw Error(ErrorCode::kk_truncation, "imaginary part not decayed at the grid edges",
                edge_im / peak_im);

  const double asym = 0.5 * (z.front().real() + z.back().real());
  const std::size_t lo = n / 4, hi = n - n / 4;
  double worst = 0.0;
  for (std::size_t k = lo; k < hi; ++k) {
    double h = 0.0;
    // j - k odd
    for (std::size_t j = (k % 2 == 0) ? 1 : 0; j < n; j += 2) {
      const double dj = static_cast<double>(j) - static_cast<double>(k);
      h += z[j].imag() / dj;
    }
    h *= 2.0 / kPi;
    worst = std::max(worst, std::abs(z[k].real() - asym - h));
  }
  return worst / peak;
}

cd component(const PolarizabilityQuartet& q, QuartetComponent c) {
  switch (c) {
    case QuartetComponent::EE: return q.aEE;
    case QuartetComponent::EB: return q.aEB;
    case QuartetComponent::BE: return q.aBE;
    case QuartetComponent::BB: return q.aBB;
  }
  return {};
}

OmegacOptimum omegac_optimum(const SystemParams& p, const ProbeDetunings& det,
                             const BroadeningSpec& broadening, QuartetComponent which, double lo,
                             double hi, int grid) {
  if (!(lo > 0.0 && hi > lo) || grid < 3)
    throw Error(ErrorCode::configuration, "bad |Omega_c| scan range");
  const auto dark = dark_state(p);
  auto mag = [&](double logv) {
    SystemParams q = p;
    q.Omegac_abs = std::pow(10.0, logv);
    return std::abs(component(broadened_quartet(q, det, dark, broadening), which));
  };
  const double a = std::log10(lo), b = std::log10(hi);
  const double step = (b - a) / (grid - 1);
  int best = 0;
  double bestv = -1.0;
  for (int k = 0; k < grid; ++k) {
    const double v = mag(a + k * step);
    if (v > bestv) {
      bestv = v;
      best = k;
    }
  }
  // golden-section maximisation on the bracketing cells
  double x0 = a + std::max(0, best - 1) * step;
  double x3 = a + std::min(grid - 1, best + 1) * step;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = x3 - r * (x3 - x0), x2 = x0 + r * (x3 - x0);
  double f1 = mag(x1), f2 = mag(x2);
  for (int it = 0; it < 200 && (x3 - x0) > 1e-13 * std::max(1.0, std::abs(x0)); ++it) {
    if (f1 > f2) {
      x3 = x2;
      x2 = x1;
      f2 = f1;
      x1 = x3 - r * (x3 - x0);
      f1 = mag(x1);
    } else {
      x0 = x1;
      x1 = x2;
      f1 = f2;
      x2 = x0 + r * (x3 - x0);
      f2 = mag(x2);
    }
  }
  const double xm = 0.5 * (x0 + x3);
  return {std::pow(10.0, xm), mag(xm)};
}

}  // namespace nri

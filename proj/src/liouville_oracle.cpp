#include "nri/liouville_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace nri {

namespace {

constexpr std::array<std::array<int, 5>, 5> make_index() {
  std::array<std::array<int, 5>, 5> idx{};
  int k = 5;
  for (int i = 0; i < 5; ++i) {
    idx[i][i] = i;
    for (int j = i + 1; j < 5; ++j) {
      idx[i][j] = k;
      idx[j][i] = k + 10;
      ++k;
    }
  }
  return idx;
}
constexpr auto kIndex = make_index();

}  // namespace

int density_index(int i, int j) {
  if (i < 1 || i > 5 || j < 1 || j > 5)
    throw Error(ErrorCode::configuration, "density index out of range");
  return kIndex[i - 1][j - 1];
}

LiouvillianSystem build_liouvillian(const SystemParams& p, const ProbeDetunings& det, cd OmegaE,
                                    cd OmegaB, double gp) {
  require_resonance(p);
  const cd I(0.0, 1.0);

  // rotating-frame Hamiltonian / hbar, 0-based levels
  Eigen::Matrix<cd, 5, 5> H = Eigen::Matrix<cd, 5, 5>::Zero();
  H(1, 1) = det.DeltaB();
  H(2, 2) = det.DeltaE();
  auto couple = [&H](int i, int j, cd amp) {
    H(i, j) += -0.5 * amp;
    H(j, i) += -0.5 * std::conj(amp);
  };
  couple(2, 3, OmegaE);
  couple(1, 0, OmegaB);
  couple(4, 0, cd(p.Omega1, 0.0));
  couple(4, 3, cd(p.Omega2, 0.0));
  couple(2, 1, p.Omegac());

  // coherence damping: (gamma_i + gamma_j)/2 plus correlated-fluctuation dephasing
  std::array<std::array<double, 5>, 5> G{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) G[i][j] = p.gamma_ij(i + 1, j + 1);
  auto deph = [&G](int i, int j, double v) {
    G[i - 1][j - 1] += v;
    G[j - 1][i - 1] += v;
  };
  deph(3, 4, gp);
  deph(2, 1, gp);
  deph(3, 1, 2.0 * gp);
  deph(3, 2, gp);
  deph(3, 5, gp);
  deph(2, 5, gp);

  Matrix25 M = Matrix25::Zero();
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const int row = kIndex[i][j];
      // -i [H, rho]_ij
      for (int k = 0; k < 5; ++k) {
        if (H(i, k) != 0.0) M(row, kIndex[k][j]) += -I * H(i, k);
        if (H(k, j) != 0.0) M(row, kIndex[i][k]) += I * H(k, j);
      }
      M(row, row) -= i == j ? p.gamma[i] : G[i][j];
    }
  }
  // repopulation through the dipole-allowed channels
  auto feed = [&M](int src, int dst, double rate) {
    M(kIndex[dst - 1][dst - 1], kIndex[src - 1][src - 1]) += rate;
  };
  feed(2, 1, p.gamma[1]);
  feed(3, 4, p.gamma[2]);
  feed(5, 1, 0.5 * p.gamma[4]);
  feed(5, 4, 0.5 * p.gamma[4]);

  LiouvillianSystem sys;
  double scale = 0.0;
  for (int r = 1; r < 25; ++r) scale = std::max(scale, M.row(r).cwiseAbs().maxCoeff());
  if (scale == 0.0) scale = 1.0;
  sys.rate_scale = scale;
  M.bottomRows(24) /= scale;
  M.row(0).setZero();
  for (int i = 0; i < 5; ++i) M(0, i) = 1.0;
  sys.M = M;
  sys.a = Vector25::Zero();
  sys.a(0) = 1.0;
  return sys;
}

SteadyState steady_state(const LiouvillianSystem& sys, double cond_limit) {
  Eigen::PartialPivLU<Matrix25> lu(sys.M);
  const double rc = lu.rcond();
  double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  // the 1-norm estimator can miss exactly zero pivots, so bound it by the
  // pivot spread as well
  const auto piv = lu.matrixLU().diagonal().cwiseAbs();
  const double pmin = piv.minCoeff(), pmax = piv.maxCoeff();
  cond = std::max(cond, pmin > 0.0 ? pmax / pmin : std::numeric_limits<double>::infinity());
  if (!(cond <= cond_limit))
    throw Error(ErrorCode::ill_conditioned, "condition estimate above limit", cond);
  Vector25 x = lu.solve(sys.a);
  const Vector25 r = sys.a - sys.M * x;
  x += lu.solve(r);
  SteadyState out;
  out.rho.v = x;
  out.condition = cond;
  out.residual = (sys.M * x - sys.a).norm() / sys.a.norm();
  if (!(out.residual <= 1e-10))
    throw Error(ErrorCode::ill_conditioned, "linear-system residual above 1e-10", out.residual);
  return out;
}

DensityChecks check_density(const DensityVector25& rho) {
  DensityChecks c;
  cd tr = 0.0;
  for (int i = 1; i <= 5; ++i) {
    const cd v = rho(i, i);
    tr += v;
    c.population_imag = std::max(c.population_imag, std::abs(v.imag()));
    c.population_excess = std::max({c.population_excess, -v.real(), v.real() - 1.0});
    for (int j = i + 1; j <= 5; ++j)
      c.hermiticity = std::max(c.hermiticity, std::abs(rho(i, j) - std::conj(rho(j, i))));
  }
  c.trace_error = std::abs(tr - 1.0);
  return c;
}

PolarizabilityQuartet separated_polarizabilities(const SystemParams& p, const ProbeDetunings& det,
                                                 double E, double B, double gp) {
  if (E == 0.0 || B == 0.0)
    throw Error(ErrorCode::zero_field, "both probe amplitudes must be nonzero");
  const double OE = p.d34 * E / kHbar;
  const double OB = p.mu21 * B / kHbar;
  auto solve = [&](double e, double b) {
    return steady_state(build_liouvillian(p, det, e, b, gp)).rho;
  };
  const auto r_pp = solve(OE, OB);
  const auto r_pm = solve(OE, -OB);
  const auto r_mp = solve(-OE, OB);
  const cd f_pp = r_pp(3, 4), f_pm = r_pm(3, 4), f_mp = r_mp(3, 4);
  const cd g_pp = r_pp(2, 1), g_pm = r_pm(2, 1), g_mp = r_mp(2, 1);
  PolarizabilityQuartet q;
  q.aEE = p.d34 / (2.0 * E) * (f_pp + f_pm);
  q.aEB = p.d34 / (2.0 * B) * (f_pp + f_mp);
  q.aBE = p.mu21 / (2.0 * E) * (g_pp + g_pm);
  q.aBB = p.mu21 / (2.0 * B) * (g_pp + g_mp);
  return q;
}

PolarizabilityQuartet separated_polarizabilities_rabi(const SystemParams& p,
                                                      const ProbeDetunings& det, double OmegaE,
                                                      double OmegaB, double gp) {
  if (p.d34 == 0.0 || p.mu21 == 0.0)
    throw Error(ErrorCode::zero_field, "dipole moments must be nonzero");
  return separated_polarizabilities(p, det, OmegaE * kHbar / p.d34, OmegaB * kHbar / p.mu21, gp);
}

double deviation(cd exact, cd linear) {
  if (linear == 0.0) throw Error(ErrorCode::reference_zero, "linear reference is zero");
  const double v = std::abs(1.0 - exact / linear);
  return v > 0.0 ? std::max(-16.0, std::log10(v)) : -16.0;
}

double deviation_part(double exact, double linear, double scale, double zero_rel) {
  if (linear == 0.0 || std::abs(linear) <= zero_rel * std::abs(scale))
    throw Error(ErrorCode::reference_zero, "reference part vanishes", linear);
  const double v = std::abs(1.0 - exact / linear);
  return v > 0.0 ? std::max(-16.0, std::log10(v)) : -16.0;
}

}  // namespace nri

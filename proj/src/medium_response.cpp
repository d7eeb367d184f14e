#include "nri/medium_response.hpp"

#include <cmath>
#include <limits>

namespace nri {

const char* branch_flag_name(BranchFlag f) {
  switch (f) {
    case BranchFlag::principal: return "principal";
    case BranchFlag::flipped: return "flipped";
    case BranchFlag::gain_warning: return "gain-warning";
  }
  return "unknown";
}

cd local_field_denominator(const PolarizabilityQuartet& q, double density) {
  const double f = 4.0 * kPi / 3.0 * density;
  const cd X = q.aEB * q.aBE - q.aEE * q.aBB;
  return 1.0 - f * q.aEE - f * q.aBB - f * f * X;
}

MediumResponse local_field_correct(const PolarizabilityQuartet& q, double density) {
  const double f = 4.0 * kPi / 3.0 * density;
  const cd X = q.aEB * q.aBE - q.aEE * q.aBB;
  const cd L = local_field_denominator(q, density);
  if (!std::isfinite(L.real()) || !std::isfinite(L.imag()))
    throw Error(ErrorCode::singular_response, "local-field denominator overflowed", density);
  if (std::abs(L) < 1e-12)
    throw Error(ErrorCode::local_field_singularity, "polarization catastrophe", std::abs(L));
  const cd k = 4.0 * kPi * density / L;
  MediumResponse m;
  m.density = density;
  m.eps = 1.0 + k * (q.aEE + f * X);
  m.mu = 1.0 + k * (q.aBB + f * X);
  m.xiEH = k * q.aEB;
  m.xiHE = k * q.aBE;
  return m;
}

FomResult figure_of_merit(cd n) {
  if (n.imag() == 0.0) return {std::numeric_limits<double>::infinity(), false};
  return {-n.real() / n.imag(), true};
}

RefractiveResult passive_branch(cd radicand, cd add) {
  const cd s = std::sqrt(radicand);
  RefractiveResult r;
  const cd n1 = s + add;
  const cd n2 = -s + add;
  if (n1.imag() >= 0.0) {
    r.n = n1;
    r.branch = BranchFlag::principal;
  } else if (n2.imag() >= 0.0) {
    r.n = n2;
    r.branch = BranchFlag::flipped;
  } else {
    r.n = n2.imag() > n1.imag() ? n2 : n1;
    r.branch = BranchFlag::gain_warning;
  }
  const auto f = figure_of_merit(r.n);
  r.fom = f.value;
  r.fom_defined = f.defined;
  return r;
}

RefractiveResult refractive_index(const MediumResponse& m, Handedness h) {
  const cd S = m.xiEH + m.xiHE;
  const cd d = m.xiEH - m.xiHE;
  const double sign = h == Handedness::plus ? 1.0 : -1.0;
  return passive_branch(m.eps * m.mu - 0.25 * S * S, sign * cd(0.0, 0.5) * d);
}

cd fresnel_reflection(cd eps1, cd mu1, const MediumResponse& m2, Handedness h) {
  if (m2.mu == 0.0) throw Error(ErrorCode::degenerate_medium, "mu2 = 0");
  if (eps1 == 0.0) throw Error(ErrorCode::degenerate_medium, "eps1 = 0");
  const cd n2 = refractive_index(m2, h).n;
  const cd i(0.0, 1.0);
  const cd num = h == Handedness::plus ? n2 + i * m2.xiHE : n2 - i * m2.xiHE;
  const cd Y = std::sqrt(mu1 / eps1) * num / m2.mu;
  return (1.0 - Y) / (1.0 + Y);
}

cd inverse_impedance(const MediumResponse& m) {
  // 1/Z = (s + iS/2)/mu with s = +-sqrt(eps mu - S^2/4). Both signs solve the
  // impedance relation; the one sharing s with the passive index is the wave
  // that actually propagates, so it wins unless its real part is negative.
  const cd i(0.0, 1.0);
  const cd S = m.xiEH + m.xiHE;
  const cd s = refractive_index(m).n - 0.5 * i * (m.xiEH - m.xiHE);
  const cd z1 = (s + 0.5 * i * S) / m.mu;
  const cd z2 = (-s + 0.5 * i * S) / m.mu;
  auto ok = [](cd z) { return z.real() > 0.0 || (z.real() == 0.0 && z.imag() >= 0.0); };
  if (ok(z1)) return z1;
  if (ok(z2)) return z2;
  return z1.real() >= z2.real() ? z1 : z2;
}

double superlens_tolerance(double d, double dx) {
  if (!(dx > 0.0)) throw Error(ErrorCode::invalid_resolution, "dx must be > 0", dx);
  if (d < 0.0) throw Error(ErrorCode::invalid_resolution, "d must be >= 0", d);
  return std::exp(-2.0 * kPi * d / dx);
}

}  // namespace nri

#include "nri/anisotropy.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>

namespace nri {

Eigen::Matrix3cd circular_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix3cd U;
  U << cd(r, 0), cd(r, 0), cd(0, 0),
       cd(0, r), cd(0, -r), cd(0, 0),
       cd(0, 0), cd(0, 0), cd(1, 0);
  return U;
}

Eigen::Matrix3cd PolarTensor3::to_cartesian() const {
  const auto U = circular_basis();
  return U * m * U.adjoint();
}

PolarTensor3 PolarTensor3::from_cartesian(const Eigen::Matrix3cd& c) {
  const auto U = circular_basis();
  return {U.adjoint() * c * U};
}

PolarTensor3 PolarTensor3::isotropic(cd v) {
  return {v * Eigen::Matrix3cd::Identity()};
}

PolarTensor3 PolarTensor3::circular_diagonal(cd plus, cd minus, cd zz) {
  PolarTensor3 t;
  t.m.diagonal() << plus, minus, zz;
  return t;
}

double RabiComponents::norm2() const {
  return std::norm(Wpp) + std::norm(Wmm) + std::norm(Wp0) + std::norm(W0m) + std::norm(Wm0) +
         std::norm(W0p);
}

RabiComponents angle_rabi(cd Omegac0, const Orientation& o) {
  const double s = std::sin(o.theta), c = std::cos(o.theta);
  const double r = 1.0 / std::sqrt(2.0);
  RabiComponents w;
  w.Wpp = Omegac0 * c;
  w.Wmm = -w.Wpp;
  w.Wp0 = Omegac0 * r * s * std::polar(1.0, -o.phi);
  w.W0m = w.Wp0;
  w.Wm0 = Omegac0 * r * s * std::polar(1.0, o.phi);
  w.W0p = w.Wm0;
  return w;
}

PolarTensor3 cross_tensor(const Orientation& o, cd scalar) {
  const double s = std::sin(o.theta), c = std::cos(o.theta);
  const double r = 1.0 / std::sqrt(2.0);
  const cd em = std::polar(1.0, -o.phi), ep = std::polar(1.0, o.phi);
  PolarTensor3 t;
  t.m << c, 0.0, s * r * em,
         0.0, -c, s * r * ep,
         s * r * ep, s * r * em, 0.0;
  t.m *= scalar;
  return t;
}

namespace {

PolarTensor3 dressed_tensor(const Orientation& o, cd alpha, double Oc, cd Dprod) {
  if (Dprod == 0.0) throw Error(ErrorCode::singular_correction, "zero denominator product");
  const double s = std::sin(o.theta), c = std::cos(o.theta), s2 = std::sin(2.0 * o.theta);
  const double r2 = std::sqrt(2.0);
  const cd e1 = std::polar(1.0, o.phi), e2 = std::polar(1.0, 2.0 * o.phi);
  Eigen::Matrix3cd A;
  A << s * s / 8.0, -s * s * e2 / 8.0, -s * c * e1 / (4.0 * r2),
       -s * s * std::conj(e2) / 8.0, s * s / 8.0, s2 * std::conj(e1) / (8.0 * r2),
       -s * c * std::conj(e1) / (4.0 * r2), s2 * e1 / (8.0 * r2), c * c / 4.0;
  PolarTensor3 t;
  t.m = alpha * Eigen::Matrix3cd::Identity() + (alpha * Oc * Oc / Dprod) * A;
  return t;
}

}  // namespace

PolarTensor3 ee_tensor(const Orientation& o, cd alphaEE, double Omegac_abs, cd D42, cd D34) {
  return dressed_tensor(o, alphaEE, Omegac_abs, D42 * D34);
}

PolarTensor3 bb_tensor(const Orientation& o, cd alphaBB, double Omegac_abs, cd D31, cd D21) {
  return dressed_tensor(o, alphaBB, Omegac_abs, D31 * D21);
}

RefractiveResult index_vs_angle(cd eps, cd mu, cd xiEH, cd xiHE, double theta) {
  const double c = std::cos(theta);
  const cd d = xiEH - xiHE;
  return passive_branch(eps * mu - xiEH * xiHE - 0.25 * d * d * c * c, cd(0.0, 0.5) * d * c);
}

namespace {

Eigen::Matrix3cd cross_matrix(const Eigen::Vector3d& k) {
  Eigen::Matrix3cd K;
  K << 0.0, -k.z(), k.y(),
       k.z(), 0.0, -k.x(),
       -k.y(), k.x(), 0.0;
  return K;
}

cd horner(const std::vector<cd>& c, cd x) {
  cd v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<cd> derivative(const std::vector<cd>& c) {
  std::vector<cd> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

// a few guarded Newton steps
cd polish(const std::vector<cd>& c, cd x) {
  const auto dc = derivative(c);
  double fx = std::abs(horner(c, x));
  for (int it = 0; it < 4 && fx > 0.0; ++it) {
    const cd d = horner(dc, x);
    if (d == 0.0) break;
    const cd y = x - horner(c, x) / d;
    const double fy = std::abs(horner(c, y));
    if (!(fy < fx)) break;
    x = y;
    fx = fy;
  }
  return x;
}

}  // namespace

cd helmholtz_determinant(const Eigen::Matrix3cd& eps, const Eigen::Matrix3cd& mu_inv,
                         const Eigen::Matrix3cd& xiEH, const Eigen::Matrix3cd& xiHE,
                         const Eigen::Vector3d& khat, cd n) {
  const Eigen::Matrix3cd K = cross_matrix(khat);
  const Eigen::Matrix3cd A = eps + (xiEH + n * K) * mu_inv * (n * K - xiHE);
  return A.determinant();
}

HelmholtzResult helmholtz_index_numeric(const PolarTensor3& epsT, const PolarTensor3& muT,
                                        const PolarTensor3& xiEHT, const PolarTensor3& xiHET,
                                        const Eigen::Vector3d& khat_in) {
  const double kn = khat_in.norm();
  if (!(kn > 0.0)) throw Error(ErrorCode::configuration, "khat must be nonzero");
  const Eigen::Vector3d khat = khat_in / kn;
  const Eigen::Matrix3cd eps = epsT.to_cartesian(), mu = muT.to_cartesian();
  const Eigen::Matrix3cd xeh = xiEHT.to_cartesian(), xhe = xiHET.to_cartesian();

  Eigen::FullPivLU<Eigen::Matrix3cd> lu(mu);
  const double mun = mu.norm();
  if (mun == 0.0 || std::abs(mu.determinant()) < 1e-14 * mun * mun * mun)
    throw Error(ErrorCode::singular_permeability, "permeability tensor not invertible");
  const Eigen::Matrix3cd mu_inv = lu.inverse();

  HelmholtzResult res;
  const double r3 = std::sqrt(3.0);
  double h = std::sqrt(eps.norm() * mun) / r3 + 0.5 * (xeh.norm() + xhe.norm()) / r3;
  if (!(h > 0.0) || !std::isfinite(h)) h = 1.0;
  res.scale = h;

  std::array<cd, 5> pv;
  for (int k = 0; k < 5; ++k)
    pv[k] = helmholtz_determinant(eps, mu_inv, xeh, xhe, khat, h * static_cast<double>(k - 2));
  const cd pm2 = pv[0], pm1 = pv[1], p0 = pv[2], p1 = pv[3], p2 = pv[4];
  // exact quartic through t = -2..2, n = h t
  std::vector<cd> c = {
      p0,
      (pm2 - 8.0 * pm1 + 8.0 * p1 - p2) / 12.0,
      (-pm2 + 16.0 * pm1 - 30.0 * p0 + 16.0 * p1 - p2) / 24.0,
      (-pm2 + 2.0 * pm1 - 2.0 * p1 + p2) / 12.0,
      (pm2 - 4.0 * pm1 + 6.0 * p0 - 4.0 * p1 + p2) / 24.0,
  };
  double cmax = 0.0;
  for (const auto& v : c) cmax = std::max(cmax, std::abs(v));
  while (c.size() > 1 && std::abs(c.back()) < 1e-14 * cmax) {
    c.pop_back();
    res.reduced_order = true;
  }
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return res;

  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
  for (int k = 1; k < deg; ++k) C(k, k - 1) = 1.0;
  for (int k = 0; k < deg; ++k) C(k, deg - 1) = -c[k] / c[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cd> t(es.eigenvalues().data(), es.eigenvalues().data() + deg);

  // A double root splits by ~sqrt(eps) under rounding while the pair mean stays
  // accurate, so merge close pairs and refine them on p'.
  std::vector<bool> done(deg, false);
  const auto dc = derivative(c);
  for (int a = 0; a < deg; ++a) {
    if (done[a]) continue;
    int partner = -1;
    double best = 1e-6;
    for (int b = a + 1; b < deg; ++b) {
      if (done[b]) continue;
      const double dist = std::abs(t[a] - t[b]);
      if (dist < best) {
        best = dist;
        partner = b;
      }
    }
    if (partner >= 0) {
      const cd mid = polish(dc, 0.5 * (t[a] + t[partner]));
      t[a] = t[partner] = mid;
      done[a] = done[partner] = true;
      ++res.clustered;
    } else {
      t[a] = polish(c, t[a]);
      done[a] = true;
    }
  }

  for (const auto& v : t) res.roots.push_back(h * v);
  const double tol = 1e-9 * h;
  std::stable_sort(res.roots.begin(), res.roots.end(), [tol](cd x, cd y) {
    const bool px = x.imag() >= -tol, py = y.imag() >= -tol;
    if (px != py) return px;
    return x.real() > y.real();
  });
  return res;
}

cd select_physical_root(const std::vector<cd>& roots, std::optional<cd> previous) {
  if (roots.empty()) throw Error(ErrorCode::not_found, "no roots to select from");
  double scale = 0.0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));
  const double tol = 1e-9 * std::max(1.0, scale);
  std::vector<cd> pool;
  for (const auto& r : roots)
    if (r.imag() >= -tol) pool.push_back(r);
  if (pool.empty()) pool = roots;
  if (previous) {
    return *std::min_element(pool.begin(), pool.end(), [&](cd a, cd b) {
      return std::abs(a - *previous) < std::abs(b - *previous);
    });
  }
  return *std::max_element(pool.begin(), pool.end(),
                           [](cd a, cd b) { return a.real() < b.real(); });
}

}  // namespace nri

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nri/medium_response.hpp"

namespace nri {

struct Orientation {
  double theta = 0.0;  // angle between coupling polarization and probe wavevector
  double phi = 0.0;
};

// 3x3 tensor with rows/columns {+, -, z}, e+- = (e_x +- i e_y)/sqrt2.
struct PolarTensor3 {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();

  Eigen::Matrix3cd to_cartesian() const;
  static PolarTensor3 from_cartesian(const Eigen::Matrix3cd& c);
  static PolarTensor3 isotropic(cd v);
  // diag(plus, minus, zz) in the circular basis
  static PolarTensor3 circular_diagonal(cd plus, cd minus, cd zz);
};

// columns are e+, e-, e_z in Cartesian components
Eigen::Matrix3cd circular_basis();

struct RabiComponents {
  cd Wpp, Wmm, Wp0, W0m, Wm0, W0p;
  double norm2() const;
};

RabiComponents angle_rabi(cd Omegac0, const Orientation& o);

// Cross-coupling tensor structure times the scalar.
PolarTensor3 cross_tensor(const Orientation& o, cd scalar);

// Electric tensor: alphaEE (1 + |Oc|^2/(D42 D34) * angular matrix).
PolarTensor3 ee_tensor(const Orientation& o, cd alphaEE, double Omegac_abs, cd D42, cd D34);
// Magnetic tensor, same structure with D31 D21.
PolarTensor3 bb_tensor(const Orientation& o, cd alphaBB, double Omegac_abs, cd D31, cd D21);

// Closed-form index for isotropic eps, mu; same branch rule as refractive_index.
RefractiveResult index_vs_angle(cd eps, cd mu, cd xiEH, cd xiHE, double theta);

struct HelmholtzResult {
  std::vector<cd> roots;  // passive roots first, each group by decreasing Re
  bool reduced_order = false;
  int clustered = 0;  // roots merged as numerically coincident pairs
  double scale = 1.0;
};

// All n with det[eps + (xiEH + n K) mu^-1 (n K - xiHE)] = 0, K v = khat x v.
HelmholtzResult helmholtz_index_numeric(const PolarTensor3& epsT, const PolarTensor3& muT,
                                        const PolarTensor3& xiEHT, const PolarTensor3& xiHET,
                                        const Eigen::Vector3d& khat);

// Determinant itself, for diagnostics.
cd helmholtz_determinant(const Eigen::Matrix3cd& eps, const Eigen::Matrix3cd& mu_inv,
                         const Eigen::Matrix3cd& xiEH, const Eigen::Matrix3cd& xiHE,
                         const Eigen::Vector3d& khat, cd n);

// Passive roots preferred; nearest to previous when given, else largest Re.
cd select_physical_root(const std::vector<cd>& roots, std::optional<cd> previous = std::nullopt);

}  // namespace nri

#include "doctest.h"

#include <cmath>

#include "nri/linear_response.hpp"

using namespace nri;

namespace {

const SystemParams P = default_paper_params();
const double G2 = P.gamma[1];

PolarizabilityQuartet at(const SystemParams& p, double Delta, double gp) {
  return polarizability_quartet(p, ProbeDetunings::sweep(Delta), dark_state(p), {gp, 0.0, 41});
}

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("no coupling field: cross terms vanish and EE is a Lorentzian") {
  auto p = P;
  p.Omegac_abs = 0.0;
  const double gp = 1e3 * G2;
  for (double D : {-3e3 * G2, -10.0 * G2, 0.0, 250.0 * G2}) {
    const auto q = at(p, D, gp);
    CHECK(q.aEB == cd(0.0, 0.0));
    CHECK(q.aBE == cd(0.0, 0.0));
    const auto dark = dark_state(p);
    const cd lor = cd(0.0, 1.0) / (2.0 * kHbar) * p.d34 * p.d34 * dark.rho44 /
                   (p.gamma_ij(3, 4) + gp + cd(0.0, -D));
    CHECK(rel(q.aEE, lor) < 1e-14);
  }
}

TEST_CASE("perfect transparency on resonance without ground decoherence") {
  auto p = P;
  p.gamma[1] = 0.0;  // gamma42 = 0
  const auto q = at(p, 0.0, 1e3 * G2);
  CHECK(q.aEE == cd(0.0, 0.0));
}

TEST_CASE("on resonance the cross terms are imaginary with opposite signs") {
  for (double gp : {0.0, 1e3 * G2}) {
    const auto q = at(P, 0.0, gp);
    CHECK(std::abs(q.aEB.real()) <= 1e-12 * std::abs(q.aEB));
    CHECK(std::abs(q.aBE.real()) <= 1e-12 * std::abs(q.aBE));
    CHECK(q.aEB.imag() * q.aBE.imag() < 0.0);
  }
  // magnitudes agree only when |Oc|^2/4 dominates both denominators
  auto p = P;
  p.Omegac_abs = 1e7 * G2;
  const auto q = at(p, 0.0, 0.0);
  CHECK(std::abs(q.aEB) / std::abs(q.aBE) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("phase covariance of the cross terms") {
  const double gp = 1e3 * G2;
  for (double dphi : {0.3, kPi, 2.1}) {
    auto p2 = P;
    p2.Omegac_phase += dphi;
    for (double D : {-2e3 * G2, 0.0, 777.0 * G2}) {
      const auto a = at(P, D, gp);
      const auto b = at(p2, D, gp);
      CHECK(rel(b.aEB, a.aEB * std::polar(1.0, dphi)) < 1e-13);
      CHECK(rel(b.aBE, a.aBE * std::polar(1.0, -dphi)) < 1e-13);
      CHECK(rel(b.aEE, a.aEE) < 1e-15);
      CHECK(rel(b.aBB, a.aBB) < 1e-15);
    }
  }
  auto p3 = P;
  p3.Omegac_phase += kPi;
  const auto a = at(P, 123.0 * G2, gp), b = at(p3, 123.0 * G2, gp);
  CHECK(rel(b.aEB, -a.aEB) < 1e-15);
  CHECK(rel(b.aBE, -a.aBE) < 1e-15);
}

TEST_CASE("resonant absorption scales with ground decoherence") {
  const double gp = 1e3 * G2;
  auto p1 = P, p2 = P;
  p1.gamma[1] = 1e-3 * G2;
  p2.gamma[1] = 2e-3 * G2;
  const double a1 = at(p1, 0.0, gp).aEE.imag();
  const double a2 = at(p2, 0.0, gp).aEE.imag();
  CHECK(a2 / a1 == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("resonant EE value depends on gammap only through gamma34 + gammap") {
  for (double gp : {0.0, 1e2 * G2, 1e3 * G2, 1e4 * G2}) {
    const auto q = at(P, 0.0, gp);
    const double g42 = P.gamma_ij(4, 2);
    const cd expect = cd(0.0, 1.0) / (2.0 * kHbar) * P.d34 * P.d34 * dark_state(P).rho44 * g42 /
                      (g42 * (P.gamma_ij(3, 4) + gp) + 0.25 * P.Omegac_abs * P.Omegac_abs);
    CHECK(rel(q.aEE, expect) < 1e-14);
  }
}

TEST_CASE("all components vanish far from resonance") {
  // the dressed line is very wide, so compare two points deep in the wings
  const auto a = at(P, 1e12 * G2, 1e3 * G2);
  const auto b = at(P, 1e14 * G2, 1e3 * G2);
  CHECK(std::abs(b.aEE) < 2e-2 * std::abs(a.aEE));
  CHECK(std::abs(b.aEB) < 2e-2 * std::abs(a.aEB));
  CHECK(std::abs(b.aBE) < 2e-2 * std::abs(a.aBE));
  CHECK(std::abs(b.aBB) < 2e-2 * std::abs(a.aBB));
}

TEST_CASE("singular denominators are reported") {
  SystemParams p = P;
  p.gamma = {0.0, 0.0, 0.0, 0.0, 0.0};
  p.Omegac_abs = 0.0;
  CHECK_THROWS_AS(at(p, 0.0, 0.0), Error);
}

TEST_CASE("Gauss-Hermite rule") {
  std::vector<double> t, w;
  gauss_hermite(41, t, w);
  double s0 = 0, s2 = 0, s4 = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    s0 += w[k];
    s2 += w[k] * t[k] * t[k];
    s4 += w[k] * std::pow(t[k], 4);
  }
  CHECK(s0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(s2 == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-13));
  CHECK(s4 == doctest::Approx(3.0 * std::sqrt(kPi) / 4.0).epsilon(1e-12));
  CHECK(t[20] == 0.0);
  CHECK_THROWS_AS(gauss_hermite(0, t, w), Error);
}

TEST_CASE("Doppler average: zero width returns the input") {
  const auto dark = dark_state(P);
  for (double D : {-1e3 * G2, 0.0, 3.3e3 * G2}) {
    const auto det = ProbeDetunings::sweep(D);
    const BroadeningSpec b{1e3 * G2, 0.0, 41};
    const auto q0 = polarizability_quartet(P, det, dark, b);
    const auto q1 = apply_doppler(
        [&](const DetuningArgs& a) { return quartet_kernel(P, a, dark, b.gammap); }, b, det);
    CHECK(rel(q1.aEE, q0.aEE) <= 1e-12);
    CHECK(rel(q1.aEB, q0.aEB) <= 1e-12);
    CHECK(rel(q1.aBE, q0.aBE) <= 1e-12);
    CHECK(rel(q1.aBB, q0.aBB) <= 1e-12);
  }
  const BroadeningSpec bad{0.0, 1.0, 0};
  CHECK_THROWS_AS(apply_doppler([&](const DetuningArgs& a) { return quartet_kernel(P, a, dark, 0.0); },
                                bad, ProbeDetunings::sweep(0.0)),
                  Error);
}

TEST_CASE("Doppler average of the magnetic Lorentzian equals the Voigt value") {
  auto p = P;
  p.Omegac_abs = 0.0;
  const BroadeningSpec b{1e3 * G2, 2e3 * G2, 81};
  const auto q = broadened_quartet(p, ProbeDetunings::sweep(0.0), dark_state(p), b);
  // Faddeeva-function evaluation, frozen
  CHECK(q.aBB.imag() == doctest::Approx(8.907017345048676e-20).epsilon(1e-6));
}

TEST_CASE("Doppler average broadens the magnetic line") {
  auto p = P;
  p.Omegac_abs = 0.0;
  auto width = [&](double sigma) {
    const BroadeningSpec b{0.0, sigma, 41};
    const auto dark = dark_state(p);
    const double peak = broadened_quartet(p, ProbeDetunings::sweep(0.0), dark, b).aBB.imag();
    double lo = 0.0, hi = 1e5 * G2;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double v = broadened_quartet(p, ProbeDetunings::sweep(mid), dark, b).aBB.imag();
      (v > 0.5 * peak ? lo : hi) = mid;
    }
    return 2.0 * lo;
  };
  const double w0 = width(0.0);
  CHECK(w0 == doctest::Approx(p.gamma[1]).epsilon(1e-9));
  CHECK(width(5.0 * G2) >= w0);
  CHECK(width(50.0 * G2) > w0);
}

TEST_CASE("Doppler quadrature converges with node doubling") {
  const BroadeningSpec b41{1e3 * G2, 1e3 * G2, 41}, b81{1e3 * G2, 1e3 * G2, 81};
  const auto dark = dark_state(P);
  for (double D : {-2e3 * G2, -300.0 * G2, 0.0, 50.0 * G2, 1.5e3 * G2}) {
    const auto det = ProbeDetunings::sweep(D);
    const auto a = broadened_quartet(P, det, dark, b41);
    const auto c = broadened_quartet(P, det, dark, b81);
    CHECK(rel(a.aEE, c.aEE) < 1e-6);
    CHECK(rel(a.aEB, c.aEB) < 1e-6);
    CHECK(rel(a.aBE, c.aBE) < 1e-6);
    CHECK(rel(a.aBB, c.aBB) < 1e-6);
  }
}

TEST_CASE("Kramers-Kronig residual") {
  const int n = 4001;
  std::vector<cd> lor(n), flat(n);
  const double g = 1.0;
  for (int k = 0; k < n; ++k) {
    // increasing probe frequency: one-photon detuning runs from +100 to -100
    const double dE = 100.0 * g - 200.0 * g * k / (n - 1);
    lor[k] = cd(0.0, 1.0) / (g + cd(0.0, dE));
    flat[k] = cd(2.5, 0.0);
  }
  CHECK(kramers_kronig_residual(lor) <= 1e-2);
  CHECK(kramers_kronig_residual(flat) <= 1e-12);

  // a response that has not decayed at the edges is rejected
  std::vector<cd> narrow(401);
  for (int k = 0; k < 401; ++k) {
    const double dE = 2.0 - 4.0 * k / 400.0;
    narrow[k] = cd(0.0, 1.0) / (g + cd(0.0, dE));
  }
  CHECK_THROWS_AS(kramers_kronig_residual(narrow), Error);

  // the reversed ordering is anti-causal and fails the check
  std::vector<cd> rev(lor.rbegin(), lor.rend());
  CHECK(kramers_kronig_residual(rev) > 0.1);
}

TEST_CASE("coupling-strength optimum of the cross terms") {
  const BroadeningSpec none{0.0, 0.0, 41};
  const auto det = ProbeDetunings::sweep(0.0);
  const auto eb = omegac_optimum(P, det, none, QuartetComponent::EB, 1.0 * G2, 1e6 * G2);
  const double expect_eb = 2.0 * std::sqrt(P.gamma_ij(4, 2) * P.gamma_ij(3, 4));
  CHECK(expect_eb == doctest::Approx(137.0 * G2).epsilon(1e-12));
  CHECK(eb.Omegac_abs == doctest::Approx(expect_eb).epsilon(1e-6));

  const double gp = 1e3 * G2;
  const BroadeningSpec hom{gp, 0.0, 41};
  const auto be = omegac_optimum(P, det, hom, QuartetComponent::BE, 1.0 * G2, 1e6 * G2);
  const double expect_be =
      2.0 * std::sqrt((P.gamma_ij(3, 1) + 2.0 * gp) * (P.gamma_ij(2, 1) + gp));
  CHECK(be.Omegac_abs == doctest::Approx(expect_be).epsilon(1e-6));
}

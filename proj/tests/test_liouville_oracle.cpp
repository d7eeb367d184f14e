#include "doctest.h"

#include <cmath>

#include "nri/liouville_oracle.hpp"

using namespace nri;

namespace {

const SystemParams P = default_paper_params();
const double G2 = P.gamma[1];

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("storage order") {
  CHECK(density_index(1, 1) == 0);
  CHECK(density_index(5, 5) == 4);
  CHECK(density_index(1, 2) == 5);
  CHECK(density_index(4, 5) == 14);
  CHECK(density_index(2, 1) == 15);
  CHECK(density_index(5, 4) == 24);
  CHECK(density_index(3, 4) == 12);
  CHECK(density_index(4, 3) == 22);
  CHECK_THROWS_AS(density_index(0, 1), Error);
}

TEST_CASE("system layout") {
  const auto s = build_liouvillian(P, ProbeDetunings::sweep(10.0 * G2), G2, G2 / 137.0);
  for (int c = 0; c < 25; ++c) CHECK(s.M(0, c) == (c < 5 ? cd(1.0, 0.0) : cd(0.0, 0.0)));
  CHECK(s.a(0) == cd(1.0, 0.0));
  CHECK(s.a.tail(24).isZero(0.0));
  CHECK(s.rate_scale > 0.0);
}

TEST_CASE("probe off: the dark state is the steady state") {
  for (double gp : {0.0, 1e3 * G2}) {
    const auto st = steady_state(build_liouvillian(P, ProbeDetunings::sweep(0.0), 0.0, 0.0, gp));
    const auto& r = st.rho;
    const auto d = dark_state(P);
    CHECK(std::abs(r(1, 1) - d.rho11) < 1e-10);
    CHECK(std::abs(r(4, 4) - d.rho44) < 1e-10);
    CHECK(std::abs(r(4, 1) - d.rho41) < 1e-10);
    CHECK(std::abs(r(1, 4) - d.rho41) < 1e-10);
    CHECK(std::abs(r(5, 5)) < 1e-10);
    CHECK(std::abs(r(5, 1)) < 1e-10);
    CHECK(std::abs(r(5, 4)) < 1e-10);
    CHECK(st.residual <= 1e-10);
  }
  auto p = P;
  p.Omega1 = 40.0 * G2;
  p.Omega2 = 130.0 * G2;
  const auto st = steady_state(build_liouvillian(p, ProbeDetunings::sweep(0.0), 0.0, 0.0));
  CHECK(st.rho(1, 1).real() == doctest::Approx(130.0 * 130.0 / (40.0 * 40.0 + 130.0 * 130.0)).epsilon(1e-10));
}

TEST_CASE("no drive at all leaves the steady state undetermined") {
  auto p = P;
  p.Omega1 = p.Omega2 = 0.0;
  p.Omegac_abs = 0.0;
  const auto s = build_liouvillian(p, ProbeDetunings::sweep(0.0), 0.0, 0.0);
  CHECK_THROWS_AS(steady_state(s), Error);
  try {
    steady_state(s);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ill_conditioned);
    CHECK(e.value() > 1e12);
  }
}

TEST_CASE("steady-state invariants with a strong probe") {
  for (double OE : {1e-3 * G2, G2, 10.0 * G2, 300.0 * G2})
    for (double D : {-5e3 * G2, -20.0 * G2, 0.0, 1.7e3 * G2})
      for (double gp : {0.0, 1e3 * G2}) {
        const auto st =
            steady_state(build_liouvillian(P, ProbeDetunings::sweep(D), OE, OE / 137.0, gp));
        const auto c = check_density(st.rho);
        CHECK(c.ok(1e-10));
        CHECK(st.residual <= 1e-10);
        CHECK(st.condition < 1e12);
      }
}

TEST_CASE("general detuning point with a coupling detuning") {
  const auto det = ProbeDetunings::from_components(-30.0 * G2, 12.0 * G2);
  const auto st = steady_state(build_liouvillian(P, det, 5.0 * G2, 0.05 * G2, 1e3 * G2));
  CHECK(check_density(st.rho).ok());
}

TEST_CASE("weak probe coherence matches the linear EE response") {
  const double OE = 1e-3 * G2;
  const double E = OE * kHbar / P.d34;
  for (double D : {-4e3 * G2, -100.0 * G2, 0.0, 60.0 * G2, 2.5e3 * G2}) {
    const auto det = ProbeDetunings::sweep(D);
    const auto st = steady_state(build_liouvillian(P, det, OE, 0.0));
    const cd lin = polarizability_quartet(P, det, dark_state(P), {}).aEE / P.d34;
    CHECK(rel(st.rho(3, 4) / E, lin) < 1e-6);
  }
}

TEST_CASE("weak-field separated quartet matches the linear formulas") {
  for (double D : {-5e3 * G2, -1e3 * G2, -10.0 * G2, 0.0, 333.0 * G2, 5e3 * G2}) {
    const auto det = ProbeDetunings::sweep(D);
    const auto ex = separated_polarizabilities_rabi(P, det, 1e-3 * G2, 1e-3 * G2 / 137.0);
    const auto li = polarizability_quartet(P, det, dark_state(P), {});
    CHECK(rel(ex.aEE, li.aEE) < 1e-6);
    CHECK(rel(ex.aEB, li.aEB) < 1e-6);
    CHECK(rel(ex.aBE, li.aBE) < 1e-6);
    CHECK(rel(ex.aBB, li.aBB) < 1e-6);
  }
}

TEST_CASE("odd parity of the probe coherences") {
  const auto det = ProbeDetunings::sweep(-250.0 * G2);
  const double OE = 10.0 * G2, OB = OE / 137.0;
  const auto a = steady_state(build_liouvillian(P, det, OE, OB)).rho;
  const auto b = steady_state(build_liouvillian(P, det, -OE, -OB)).rho;
  CHECK(std::abs(a(3, 4) + b(3, 4)) <= 1e-10 * std::abs(a(3, 4)));
  CHECK(std::abs(a(2, 1) + b(2, 1)) <= 1e-10 * std::abs(a(2, 1)));

  const double E = OE * kHbar / P.d34, B = OB * kHbar / P.mu21;
  const auto q1 = separated_polarizabilities(P, det, E, B);
  const auto q2 = separated_polarizabilities(P, det, -E, -B);
  CHECK(rel(q2.aEE, q1.aEE) < 1e-9);
  CHECK(rel(q2.aEB, q1.aEB) < 1e-9);
  CHECK(rel(q2.aBE, q1.aBE) < 1e-9);
  CHECK(rel(q2.aBB, q1.aBB) < 1e-9);
}

TEST_CASE("weak-field convergence is first order in probe intensity") {
  const auto det = ProbeDetunings::sweep(-40.0 * G2);
  const auto li = polarizability_quartet(P, det, dark_state(P), {});
  auto err = [&](double OE) {
    const auto ex = separated_polarizabilities_rabi(P, det, OE, OE / 137.0);
    return std::abs(ex.aEE / li.aEE - 1.0);
  };
  const double e1 = err(0.5 * G2), e2 = err(1.0 * G2);
  CHECK(e2 / e1 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("zero probe amplitude is rejected") {
  const auto det = ProbeDetunings::sweep(0.0);
  CHECK_THROWS_AS(separated_polarizabilities(P, det, 0.0, 1.0), Error);
  CHECK_THROWS_AS(separated_polarizabilities(P, det, 1.0, 0.0), Error);
}

TEST_CASE("deviation metric") {
  CHECK(deviation(cd(2.0, 1.0), cd(2.0, 1.0)) == -16.0);
  CHECK(deviation(1.01, 1.0) == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(deviation(0.0, cd(3.0, -1.0)) == 0.0);
  CHECK_THROWS_AS(deviation(1.0, 0.0), Error);
  CHECK(deviation_part(1.01, 1.0, 1.0) == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK_THROWS_AS(deviation_part(1.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(deviation_part(1.0, 1e-20, 1.0), Error);
}

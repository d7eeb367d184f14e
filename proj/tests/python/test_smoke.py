import cmath
import math

import numpy as np
import pytest

import nri


def cfg(**kw):
    c = nri.RunConfig()
    for k, v in kw.items():
        c.set(k, v)
    return c


def test_dipole_and_defaults():
    p = nri.default_paper_params()
    assert p.d34 == pytest.approx(9.0123134150014517546e-18, rel=1e-12)
    assert p.mu21 == pytest.approx(6.5783309598550742735e-20, rel=1e-12)
    ok, _ = nri.resonance_check(p)
    assert ok


def test_dark_state():
    d = nri.dark_state(40.0, 130.0)
    assert d["rho11"] + d["rho44"] == pytest.approx(1.0)
    assert d["rho41"] ** 2 == pytest.approx(d["rho11"] * d["rho44"])


def test_index_special_cases():
    n, flag = nri.refractive_index(2.0, 1.5)
    assert n == pytest.approx(math.sqrt(3.0))
    assert flag == "principal"
    n, flag = nri.refractive_index(-1 + 0.02j, -1 + 0.03j)
    assert n.real < 0 and n.imag >= 0
    assert nri.figure_of_merit(-1 + 0.01j) == pytest.approx(100.0)
    assert nri.inverse_impedance(1.0, 1.0) == 1.0
    assert nri.fresnel_reflection(1, 1, 4, 1) == pytest.approx(-1 / 3)
    assert nri.superlens_tolerance(1.0, 1.0) == pytest.approx(math.exp(-2 * math.pi))


def test_spectrum_sweep_signs():
    c = cfg(density_cm3=5e16)
    xs = np.linspace(-0.1, 0.1, 201) * c.gammap
    out = nri.sweep(c, "detuning", xs)
    assert out["n"].shape == (201,)
    assert all(e == "" for e in out["error"])
    assert out["n"].real.min() < 0
    low = nri.sweep(cfg(density_cm3=5e14), "detuning", xs)
    assert low["n"].real.min() > 0


def test_nonchiral_cross_terms_vanish():
    c = cfg(density_cm3=5e16)
    r = nri.evaluate(c, -0.045 * c.gammap, nonchiral=True)
    assert r["aEB"] == 0 and r["aBE"] == 0
    full = nri.evaluate(c, -0.045 * c.gammap)
    assert r["aEE"] == full["aEE"]


def test_linear_matches_exact_weak_probe():
    c = cfg(gammap_over_gamma2=0.0)
    g2 = c.gamma2
    lin = nri.quartet(c, -40 * g2)
    ex = nri.exact_quartet(c, -40 * g2, 1e-3 * g2, 1e-3 * g2 / 137)
    for k in ("aEE", "aEB", "aBE", "aBB"):
        assert abs(ex[k] / lin[k] - 1) < 1e-6


def test_angle_reduction():
    c = cfg(density_cm3=5e16)
    r = nri.evaluate(c, -0.035 * c.gammap)
    n0 = nri.index_vs_angle(r["eps"], r["mu"], r["xiEH"], r["xiHE"], 0.0)
    assert abs(n0 - r["n"]) < 1e-14
    n90 = nri.index_vs_angle(r["eps"], r["mu"], r["xiEH"], r["xiHE"], math.pi / 2)
    s = cmath.sqrt(r["eps"] * r["mu"] - r["xiEH"] * r["xiHE"])
    assert min(abs(n90 - s), abs(n90 + s)) < 1e-14


def test_errors_are_raised():
    with pytest.raises(nri.NriError):
        nri.superlens_tolerance(1.0, 0.0)
    with pytest.raises(nri.NriError):
        nri.parse_config("no_such_key = 1")
    with pytest.raises(nri.NriError):
        nri.sweep(nri.RunConfig(), "bogus", [0.0, 1.0])


def test_vacuum_impedance():
    r = nri.impedance_find(cfg(density_cm3=0.0), grid=5)
    assert r["found"]
    assert r["n"] == 1.0

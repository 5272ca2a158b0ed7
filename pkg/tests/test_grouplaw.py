import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from canonkern.errors import Singular, UnsupportedFamily
from canonkern.genfun import SplitGeneratingFunction, transform_point
from canonkern.grouplaw import (
    LinearShear,
    check_reciprocal_functional_equation,
    compose_stationary_phase,
    delta_limit_parity,
    mu_from_theta,
    mu_theta_convert,
    parity_factor,
    reciprocal_eigenvalue,
    rotation_decomposition,
    theta_from_mu,
)
from canonkern.phasecore import Family, Params
from canonkern.specfun import ExponentialState, LinearState, OscillatorState, bessel_k_imag


def test_mu_theta_examples(unit):
    assert mu_from_theta(np.pi / 2, unit) == pytest.approx(-2.0, rel=1e-15)
    assert mu_from_theta(np.pi, unit) == 0.0
    assert mu_from_theta(theta_from_mu(-2.0, unit), unit) == pytest.approx(-2.0, abs=1e-15)
    assert mu_theta_convert(mu=-2.0, params=unit) == pytest.approx(np.pi / 2, abs=1e-15)
    with pytest.raises(Singular):
        mu_from_theta(0.0, unit)


@given(st.floats(-50, 50).filter(lambda x: abs(x) > 1e-6))
def test_mu_theta_round_trip(muv):
    p = Params(m=1.3, lam=0.7)
    assert mu_from_theta(theta_from_mu(muv, p), p) == pytest.approx(muv, rel=1e-12)


def test_rotation_examples(unit):
    assert rotation_decomposition(np.pi / 2, unit) @ [1.0, 0.0] == pytest.approx([0.0, -1.0], abs=1e-15)
    assert rotation_decomposition(np.pi, unit) @ [0.3, -0.7] == pytest.approx([-0.3, 0.7], abs=1e-15)


@pytest.mark.parametrize("prm", [Params(), Params(m=2.0, lam=0.5)])
def test_rotation_matches_generating_function(prm):
    gf = SplitGeneratingFunction(Family.QUADRATIC, mu_from_theta(0.7, prm), prm)
    for pt in [(0.3, -0.2), (1.0, 0.5), (-0.8, 0.9)]:
        assert rotation_decomposition(0.7, prm) @ pt == pytest.approx(np.array(transform_point(gf, pt)), abs=1e-12)


def test_linear_shear_group(unit):
    s1, s2 = LinearShear(0.3, unit), LinearShear(0.45, unit)
    M, b = s1.affine_compose(s2)
    c = s1.compose(s2)
    assert np.array_equal(M, c.matrix)
    assert b == pytest.approx(c.shift, abs=1e-15)
    gf = SplitGeneratingFunction(Family.LINEAR, 2.0, unit)
    assert LinearShear.from_mu(2.0, unit)((0.4, -0.3)) == pytest.approx(np.array(transform_point(gf, (0.4, -0.3))), abs=1e-13)


def test_quadratic_composition_symbolic(unit):
    # Gaussian elimination of the intermediate variable by sympy
    q, x, Q, t = sp.symbols("q x Q t")
    F = lambda a, b, th: (sp.Rational(1, 2) / sp.sin(th)) * (2 * a * b - (a**2 + b**2) * sp.cos(th))
    phase = F(q, x, sp.pi / 4) + F(x, Q, sp.pi / 4)
    kappa = sp.diff(phase, x, 2)
    xbar = sp.solve(sp.diff(phase, x), x)[0]
    f_s = sp.simplify(phase.subs(x, xbar))
    assert sp.simplify(kappa) == -2
    assert sp.simplify(f_s - F(q, Q, sp.pi / 2)) == 0
    comp = compose_stationary_phase(*(2 * [SplitGeneratingFunction(Family.QUADRATIC, mu_from_theta(np.pi / 4), unit)]))
    assert comp.kappa == pytest.approx(-2.0, rel=1e-14)
    for qq, QQ in [(0.2, 0.9), (-1.0, 0.4)]:
        assert comp.f_s(qq, QQ) == pytest.approx(float(f_s.subs({q: qq, Q: QQ})), abs=1e-14)
        assert abs(comp.offset(qq, QQ) - comp.offset(0.0, 0.0)) < 1e-14


def test_linear_composition_offset(unit):
    n1, n2 = 0.3, 0.7
    comp = compose_stationary_phase(SplitGeneratingFunction(Family.LINEAR, 2 / n1, unit),
                                    SplitGeneratingFunction(Family.LINEAR, 2 / n2, unit))
    for qq, QQ in [(0.0, 0.0), (0.5, -1.2)]:
        assert comp.offset(qq, QQ) == pytest.approx(-n1 * n2 * (n1 + n2), abs=1e-13)


def test_identity_limit_composition(unit):
    f1 = SplitGeneratingFunction(Family.LINEAR, 2 / 0.6, unit)
    f2 = SplitGeneratingFunction(Family.LINEAR, 2 / 1e-7, unit)
    comp = compose_stationary_phase(f1, f2)
    assert comp.f_s(0.3, 0.8) == pytest.approx(f1(0.3, 0.8), abs=1e-5)


def test_composition_rejects_transcendental(unit):
    f = SplitGeneratingFunction(Family.SINUSOIDAL, 3.0, unit)
    with pytest.raises(UnsupportedFamily):
        compose_stationary_phase(f, f)


def test_reciprocal_examples(unit):
    N = reciprocal_eigenvalue(Family.QUADRATIC, OscillatorState(0), np.pi / 2, unit)
    assert N == pytest.approx(1 / np.sqrt(2 * np.pi), abs=1e-15)
    for E in (-1.0, 0.0, 2.5):
        assert abs(reciprocal_eigenvalue(Family.LINEAR, LinearState(E), 0.4, unit)) == pytest.approx(
            1 / np.sqrt(4 * np.pi * 0.4), rel=1e-14)
    N = reciprocal_eigenvalue(Family.EXPONENTIAL, ExponentialState(1.0), 4j, unit)
    assert N == pytest.approx(0.5 / bessel_k_imag(1.0, 1.0), rel=1e-12)


def test_functional_equations(unit):
    assert check_reciprocal_functional_equation(Family.QUADRATIC, 0.7, 0.9, OscillatorState(3), unit) < 1e-12
    assert check_reciprocal_functional_equation(Family.LINEAR, 0.5, 0.5, LinearState(1.0), unit) < 1e-12
    with pytest.raises(Singular):
        check_reciprocal_functional_equation(Family.QUADRATIC, 1.0, np.pi - 1.0, OscillatorState(0), unit)


@given(st.integers(0, 8), st.floats(0.1, 6.1), st.floats(0.1, 6.1))
@settings(max_examples=60)
def test_functional_equation_property(n, t1, t2):
    if min(abs(np.sin(t1)), abs(np.sin(t2)), abs(np.sin(t1 + t2))) < 1e-3:
        return
    assert check_reciprocal_functional_equation(Family.QUADRATIC, t1, t2, OscillatorState(n), Params()) < 1e-12


def test_parity_factor():
    for n in range(6):
        assert parity_factor(n) == (-1) ** n


def test_delta_limit_linear_rate(unit):
    q = np.linspace(-2.5, 2.5, 11)
    r = [delta_limit_parity(0, e, q, unit) for e in (0.05, 0.025, 0.0125)]
    assert r[0] < 5e-3
    assert r[1] / r[0] == pytest.approx(0.5, abs=0.05)
    assert r[2] / r[1] == pytest.approx(0.5, abs=0.05)
    r2 = [delta_limit_parity(2, e, q, unit) for e in (0.05, 0.025, 0.0125)]
    assert r2[2] / r2[0] == pytest.approx(0.25, abs=0.03)

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from canonkern.errors import BranchAmbiguity, NoRoot, UnsupportedFamily
from canonkern.genfun import (
    SplitGeneratingFunction,
    correction_free_residual,
    displacement,
    duality_residual,
    eval_F_and_momenta,
    free_generating_function,
    invariance_and_symplectic_residuals,
    large_mu_check,
    transform_point,
)
from canonkern.phasecore import TABLE_FAMILIES, TRANSCENDENTAL_FAMILIES, Family, Params

q, Q, mu = sp.symbols("q Q mu")
m, lam, a = sp.Rational(1), sp.Rational(3, 2), sp.Rational(7, 5)
s, d = q + Q, q - Q

# generating functions written independently as sympy expressions
SYMBOLIC = {
    Family.QUADRATIC: -m * lam * s**2 / (2 * mu) + mu * d**2 / 8,
    Family.LINEAR: -2 * m * lam * s / mu + mu * d**2 / 8,
    Family.SINUSOIDAL: -m * lam * sp.cos(a * s) / (mu * a**2) - mu * sp.cos(a * d) / (4 * a**2),
    Family.EVEN_HYPERBOLIC: -m * lam * sp.cosh(a * s) / (mu * a**2) + mu * sp.cosh(a * d) / (4 * a**2),
    Family.EXPONENTIAL: -2 * m * lam * sp.exp(a * s) / (mu * a) + mu * sp.cosh(a * d) / (4 * a**2),
    Family.ODD_HYPERBOLIC: -2 * m * lam * sp.sinh(a * s) / (mu * a) + mu * sp.cosh(a * d) / (4 * a**2),
}
POTENTIAL = {
    Family.QUADRATIC: lambda x: lam * x**2 / 2,
    Family.LINEAR: lambda x: lam * x,
    Family.SINUSOIDAL: lambda x: lam * sp.cos(2 * a * x) / (4 * a**2),
    Family.EVEN_HYPERBOLIC: lambda x: lam * sp.cosh(2 * a * x) / (4 * a**2),
    Family.EXPONENTIAL: lambda x: lam * sp.exp(2 * a * x) / (2 * a),
    Family.ODD_HYPERBOLIC: lambda x: lam * sp.sinh(2 * a * x) / (2 * a),
}
PRM = Params(m=1.0, lam=1.5, a=1.4)


@pytest.mark.parametrize("family", TABLE_FAMILIES)
def test_symbolic_form_preservation(family):
    # H(q, dF/dq) - H(Q, -dF/dQ) vanishes identically
    F = SYMBOLIC[family]
    V = POTENTIAL[family]
    expr = sp.diff(F, q) ** 2 / (2 * m) + V(q) - sp.diff(F, Q) ** 2 / (2 * m) - V(Q)
    assert sp.simplify(sp.expand(expr.rewrite(sp.exp))) == 0


@pytest.mark.parametrize("family", TABLE_FAMILIES)
def test_derivatives_match_sympy(family):
    F = SYMBOLIC[family]
    gf = SplitGeneratingFunction(family, 2.3, PRM)
    subs = {mu: 2.3, q: 0.37, Q: -0.61}
    for num, sym in [(gf(0.37, -0.61), F), (gf.dq(0.37, -0.61), sp.diff(F, q)),
                     (gf.dQ(0.37, -0.61), sp.diff(F, Q)), (gf.d2q(0.37, -0.61), sp.diff(F, q, 2)),
                     (gf.d2Q(0.37, -0.61), sp.diff(F, Q, 2)), (gf.dqdQ(0.37, -0.61), sp.diff(F, q, Q))]:
        assert num == pytest.approx(float(sym.subs(subs)), rel=1e-13, abs=1e-14)


def test_quadratic_momenta_example(unit):
    gf = SplitGeneratingFunction(Family.QUADRATIC, 2.0, unit)
    F, p, P = eval_F_and_momenta(gf, 1.0, 0.0)
    # the additive constant of F is immaterial; momenta are fixed
    assert (p, P) == pytest.approx((0.0, 1.0), abs=1e-15)
    assert F == pytest.approx(0.0, abs=1e-15)


def test_linear_momenta_example(unit):
    gf = SplitGeneratingFunction(Family.LINEAR, 2.0, unit)
    _, p, P = eval_F_and_momenta(gf, 0.0, 0.0)
    assert (p, P) == pytest.approx((-1.0, 1.0), abs=1e-15)


def test_free_theory_preserves_momentum():
    g = free_generating_function(lambda y: np.sin(y) + y**3, lambda y: np.cos(y) + 3 * y**2)
    for qq, QQ in [(0.2, -0.4), (1.0, 0.3)]:
        _, p, P = eval_F_and_momenta(g, qq, QQ)
        assert P == pytest.approx(p, abs=1e-14)


def test_transform_examples(unit):
    pt = transform_point(SplitGeneratingFunction(Family.QUADRATIC, -2.0, unit), (1.0, 0.0))
    assert pt == pytest.approx((0.0, -1.0), abs=1e-14)
    pt = transform_point(SplitGeneratingFunction(Family.LINEAR, 2.0, unit), (0.0, -1.0))
    assert pt == pytest.approx((0.0, 1.0), abs=1e-14)
    big = SplitGeneratingFunction(Family.SINUSOIDAL, 1e6, unit)
    Qv, Pv = transform_point(big, (0.4, 0.2))
    assert abs(Qv - 0.4) <= 1e-5 and abs(Pv - 0.2) <= 1e-5


def test_complex_mu_rejected(unit):
    with pytest.raises(ValueError):
        transform_point(SplitGeneratingFunction(Family.EXPONENTIAL, 2j, unit), (0.1, 0.1))


def test_free_family_has_no_mu(unit):
    with pytest.raises(UnsupportedFamily):
        SplitGeneratingFunction(Family.FREE, 1.0, unit)


def test_invariance_examples(unit):
    dH, dPB = invariance_and_symplectic_residuals(SplitGeneratingFunction(Family.QUADRATIC, 2.0, unit), (1.0, 0.0))
    assert dH < 1e-12
    dH, dPB = invariance_and_symplectic_residuals(SplitGeneratingFunction(Family.SINUSOIDAL, 3.0, unit), (0.4, 0.2))
    assert dH < 1e-10 and dPB < 1e-6


@given(st.sampled_from(TABLE_FAMILIES), st.floats(0.5, 20), st.floats(-1, 1), st.floats(-1, 1))
@settings(max_examples=60, deadline=None)
def test_invariance_property(family, muv, qv, pv):
    gf = SplitGeneratingFunction(family, muv, Params())
    try:
        dH, dPB = invariance_and_symplectic_residuals(gf, (qv, pv))
    except (NoRoot, BranchAmbiguity):
        assume(False)
    assert dH < 1e-9 and dPB < 1e-5


def test_correction_free_controls():
    assert correction_free_residual(lambda x, y: x * y**3, 1.0, 1.0) == pytest.approx(6.0, rel=1e-5)
    assert correction_free_residual(lambda x, y: x**2 + y**2, 0.3, -0.8) < 1e-9


@pytest.mark.parametrize("family", TABLE_FAMILIES)
def test_correction_free_table(family, unit):
    gf = SplitGeneratingFunction(family, 1.7, unit)
    g = np.linspace(-1, 1, 7)
    assert correction_free_residual(gf, *np.meshgrid(g, g)) <= 1e-12


def test_duality_examples(unit):
    assert duality_residual(Family.SINUSOIDAL, unit, 0.5, 0.3, 0.7) < 1e-14
    assert duality_residual(Family.EXPONENTIAL, unit, 0.2, 0.1, 0.4) < 1e-14


@pytest.mark.parametrize("family", TRANSCENDENTAL_FAMILIES)
def test_duality_symmetric_point(family, unit):
    assert duality_residual(family, unit, 0.35, 0.35, -0.2) < 1e-15


def test_large_mu(unit):
    assert large_mu_check(SplitGeneratingFunction(Family.SINUSOIDAL, 3.0, unit), (0.4, 0.2)) < 1e-10
    assert large_mu_check(SplitGeneratingFunction(Family.QUADRATIC, 2.0, unit), (1.0, 0.0)) < 1e-15
    for fam in TABLE_FAMILIES:
        dq, dp = displacement(SplitGeneratingFunction(fam, 1e6, unit), (0.4, 0.2))
        assert abs(dq) <= 10 / 1e6

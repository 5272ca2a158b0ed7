import mpmath
import numpy as np
import pytest
from scipy import special as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from canonkern.errors import Underflow
from canonkern.phasecore import Params
from canonkern.specfun import (
    ExponentialState,
    LinearState,
    OscillatorState,
    SinusoidalState,
    airy,
    airy_ai,
    bessel_j_orders,
    bessel_k_imag,
    eigenstate_psi,
    mathieu_char_and_fn,
    mathieu_eval,
    mathieu_solution,
    modified_mathieu_first,
    modified_mathieu_M1,
    oscillator_functions,
    oscillator_psi,
)

# values from mpmath at 30 digits
AIRY_REF = [
    (-9.5, 0.3191032477191282, -0.10809531881187123),
    (-3.2, -0.4174434205641514, 0.06503114699526291),
    (0.0, 0.3550280538878172, -0.2588194037928068),
    (1.7, 0.05432479273291947, -0.07737488952532504),
    (6.0, 9.947694360252889e-06, -2.4765200397034955e-05),
    (11.0, 4.2262758649603595e-12, -1.4111441246628517e-11),
]
K_REF = [
    (0.0, 1.0, 0.42102443824070833),
    (0.5, 1.0, 0.3840430169050927),
    (1.0, 2.0, 0.092385459890391182),
    (2.0, 0.7, 0.05969099416493129),
    (1.0, 10.0, 1.6950735948481494e-5),
]


@pytest.mark.parametrize("x,ai,aip", AIRY_REF)
def test_airy_reference(x, ai, aip):
    v, d = airy(x)
    assert v == pytest.approx(ai, rel=1e-12, abs=1e-15)
    assert d == pytest.approx(aip, rel=1e-12, abs=1e-15)


def test_airy_against_scipy_dense():
    x = np.linspace(-20, 15, 1401)
    ai, aip, *_ = sc.airy(x)
    ax = np.abs(x)
    env = np.where(x < 0, (1 + ax) ** -0.25, np.exp(-2 / 3 * ax**1.5) / (1 + ax) ** 0.25)
    assert np.max(np.abs(airy_ai(x) - ai) / env) < 1e-12


def test_airy_asymptotic_ratio():
    z = lambda x: 2 / 3 * x**1.5
    pred = np.exp(-(z(8) - z(7))) * (7 / 8) ** 0.25
    assert airy_ai(8.0) / airy_ai(7.0) == pytest.approx(pred, rel=1e-3)


@pytest.mark.parametrize("nu,x,ref", K_REF)
def test_k_imag_reference(nu, x, ref):
    assert bessel_k_imag(nu, x) == pytest.approx(ref, rel=1e-10)


@given(st.floats(0.0, 3.0), st.floats(0.05, 30.0))
@settings(max_examples=30, deadline=None)
def test_k_imag_vs_mpmath(nu, x):
    ref = float(mpmath.besselk(1j * nu, x).real)
    scale = float(mpmath.besselk(0, x))
    assert abs(bessel_k_imag(nu, x) - ref) <= 1e-10 * scale
    assert bessel_k_imag(-nu, x) == bessel_k_imag(nu, x)


def test_k_imag_underflow():
    with pytest.raises(Underflow):
        bessel_k_imag(1.0, 800.0)
    assert bessel_k_imag(1.0, 800.0, underflow="zero") == 0.0


def test_bessel_j_orders():
    x = np.array([0.1, 3.0, 17.5, 60.0])
    got = bessel_j_orders(40, x)
    assert np.max(np.abs(got - sc.jv(np.arange(41), x[:, None]))) < 1e-14


@pytest.mark.parametrize("kind,r,q", [("ce", 0, 0.5), ("ce", 2, 0.5), ("ce", 3, 25.0),
                                      ("se", 1, 0.5), ("se", 2, 3.0), ("se", 5, 100.0)])
def test_mathieu_against_scipy(kind, r, q):
    sol = mathieu_solution(kind, r, q)
    ref_a = (sc.mathieu_a if kind == "ce" else sc.mathieu_b)(r, q)
    assert sol.char_value == pytest.approx(ref_a, rel=1e-12, abs=1e-12)
    v = np.linspace(0, np.pi, 13)
    fn = sc.mathieu_cem if kind == "ce" else sc.mathieu_sem
    val, der = fn(r, q, np.degrees(v))
    assert np.max(np.abs(mathieu_eval(sol, v) - val)) < 1e-10
    assert np.max(np.abs(mathieu_eval(sol, v, deriv=1) - der)) < 1e-9


def test_mathieu_free_limit():
    v = np.linspace(0, 2 * np.pi, 17)
    ce0 = mathieu_char_and_fn(0, 0.0)
    assert ce0.char_value == 0.0
    assert np.allclose(mathieu_eval(ce0, v), 1 / np.sqrt(2), atol=1e-15)
    se1 = mathieu_char_and_fn(-1, 0.0)
    assert se1.char_value == 1.0
    assert np.allclose(mathieu_eval(se1, v), np.sin(v), atol=1e-15)


def test_mathieu_normalisation():
    for s in (0, 1, -1, 2, -2):
        sol = mathieu_char_and_fn(s, 0.5)
        v = np.linspace(0, 2 * np.pi, 257)[:-1]
        assert np.mean(mathieu_eval(sol, v) ** 2) * 2 * np.pi == pytest.approx(np.pi, rel=1e-13)


@pytest.mark.parametrize("kind,r,z,ref", [("ce", 0, 0.6, 0.626870945435677), ("se", 1, 0.6, 0.3823296980096502),
                                          ("ce", 2, 1.1, 0.39238982219059443)])
def test_modified_mathieu_reference(kind, r, z, ref):
    sol = mathieu_solution(kind, r, 0.5)
    assert modified_mathieu_first(sol, z).real == pytest.approx(ref, rel=1e-12)


def test_modified_mathieu_proportional_to_ce():
    x = np.linspace(0.2, 1.0, 9)
    sol = mathieu_solution("ce", 0, 0.5)
    ratio = modified_mathieu_M1(0, x, 0.5) / mathieu_eval(sol, 1j * x)
    assert np.max(np.abs(ratio - ratio[0])) < 1e-8
    assert np.max(np.abs(np.imag(modified_mathieu_M1(0, x, 0.5)))) < 1e-12


def test_oscillator_ground_state(unit):
    assert oscillator_psi(0, 0.0, unit) == pytest.approx(np.pi**-0.25, rel=1e-15)


def test_oscillator_against_hermite(unit):
    q = np.linspace(-5, 5, 41)
    got = oscillator_functions(12, q, unit)
    for n in range(13):
        ref = sc.eval_hermite(n, q) * np.exp(-q * q / 2) / np.sqrt(2.0**n * sc.factorial(n) * np.sqrt(np.pi))
        assert np.max(np.abs(got[:, n] - ref)) < 1e-12


def test_oscillator_orthonormal(unit):
    q = np.linspace(-12, 12, 2401)
    psi = oscillator_functions(8, q, unit)
    gram = np.trapezoid(psi[:, :, None] * psi[:, None, :], q, axis=0)
    assert np.max(np.abs(gram - np.eye(9))) < 1e-10


@given(st.integers(0, 30), st.floats(-6, 6))
def test_oscillator_parity(n, x):
    p = Params()
    assert oscillator_psi(n, -x, p) == pytest.approx((-1) ** n * oscillator_psi(n, x, p), abs=1e-14)


def test_linear_state_shift(unit):
    q = np.linspace(-4, 4, 9)
    assert np.allclose(eigenstate_psi(LinearState(1.0), q, unit), eigenstate_psi(LinearState(0.0), q - 1, unit),
                       atol=1e-15)


def test_exponential_state_decay(unit):
    vals = np.abs(eigenstate_psi(ExponentialState(1.0), np.array([2.0, 3.0, 4.0, 10.0]), unit))
    assert vals[0] > vals[1] > vals[2] and vals[3] == 0.0


def test_exponential_state_plane_wave_amplitude(unit):
    # far to the left psi_k ~ sqrt(2/pi) cos(k q + phase)
    q = np.linspace(-40, -40 + 2 * np.pi, 400)
    basis = np.column_stack([np.cos(q), np.sin(q)])
    coef, *_ = np.linalg.lstsq(basis, eigenstate_psi(ExponentialState(1.0), q, unit), rcond=None)
    amp = np.hypot(*coef)
    assert amp == pytest.approx(np.sqrt(2 / np.pi), rel=1e-6)


@pytest.mark.parametrize("s", [0, 1, -1, 2, -2, 3])
def test_sinusoidal_state_periodicity(s):
    p = Params(lam=2.0)
    q = np.linspace(0, 3, 7)
    sign = 1 if abs(s) % 2 == 0 else -1
    assert np.allclose(eigenstate_psi(SinusoidalState(s), q + np.pi, p),
                       sign * eigenstate_psi(SinusoidalState(s), q, p), atol=1e-14)

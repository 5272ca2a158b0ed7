import numpy as np
import pytest

from canonkern.errors import ConcomitantTooLarge
from canonkern.genfun import SplitGeneratingFunction
from canonkern.grouplaw import mu_from_theta
from canonkern.phasecore import Family, Params
from canonkern.quadrature import InfiniteLine, Periodic
from canonkern.specfun import ExponentialState, LinearState, OscillatorState, SinusoidalState, oscillator_psi
from canonkern.verify import (
    IntegralEquationCase,
    VerificationReport,
    apply_kernel,
    check_addition_theorem_ho,
    check_integral_equation,
    check_kernel_composition_ho,
    check_momentum_space_linear,
    check_nrm_symmetry,
    check_sifting_limit,
    exponential_bessel_identity,
    kernel_pde_residual,
    kernel_transform,
)


def test_report_pass_logic():
    assert VerificationReport("a", [1e-9, 2e-9], 1e-8).passed
    assert not VerificationReport("a", [1e-9, np.nan], 1e-8).passed
    assert not VerificationReport("a", [], 1e-8).passed
    assert VerificationReport("a", [3.0], 1e-8).to_dict()["sup_residual"] == 3.0


def test_pde_quarter_turn(unit):
    gf = SplitGeneratingFunction(Family.QUADRATIC, mu_from_theta(np.pi / 2), unit)
    assert kernel_pde_residual(gf, 0.4, 1.1) < 1e-8


def test_pde_sinusoidal(unit):
    assert kernel_pde_residual(SplitGeneratingFunction(Family.SINUSOIDAL, 3.0, unit), 0.4, 1.1) < 1e-6


def test_pde_negative_control(unit):
    assert kernel_pde_residual(lambda q, Q: q * Q**3, 0.7, 0.5, unit, Family.QUADRATIC) > 1e-2


def test_gaussian_fourier(unit):
    gf = SplitGeneratingFunction(Family.QUADRATIC, mu_from_theta(np.pi / 2), unit)
    psi = lambda x: oscillator_psi(0, x, unit)
    kv = kernel_transform(gf, psi, 0.7, InfiniteLine(L=12.0))
    # int e^{iqQ} psi_0(Q) dQ = sqrt(2 pi) psi_0(q)
    assert kv.value == pytest.approx(np.sqrt(2 * np.pi) * psi(0.7), abs=1e-13)
    assert kv.concomitant < 1e-14


def test_periodic_concomitant_zero():
    p = Params(lam=2.0)
    gf = SplitGeneratingFunction(Family.SINUSOIDAL, 2.5, p)
    kv = kernel_transform(gf, np.cos, 0.3, Periodic(2 * np.pi, nodes=512))
    assert kv.concomitant == 0.0


def test_concomitant_guard(unit):
    case = IntegralEquationCase(Family.QUADRATIC, OscillatorState(2), np.pi / 3, unit, domain=InfiniteLine(L=1.5))
    with pytest.raises(ConcomitantTooLarge):
        apply_kernel(case, 0.0)


@pytest.mark.parametrize("theta", [np.pi / 4, np.pi / 2, 2 * np.pi / 3, 4.0])
@pytest.mark.parametrize("n", [0, 1, 5, 8])
def test_ho_integral_equation(unit, theta, n):
    r = check_integral_equation(IntegralEquationCase(Family.QUADRATIC, OscillatorState(n), theta, unit))
    assert r.passed and r.sup_residual < 1e-10


@pytest.mark.parametrize("s", [0, 1, -1, 2])
def test_sinusoidal_integral_equation(s):
    p = Params(lam=2.0)  # delta = 0.5
    r = check_integral_equation(IntegralEquationCase(Family.SINUSOIDAL, SinusoidalState(s), 0.5, p))
    assert r.sup_residual < 1e-8


@pytest.mark.parametrize("w,k", [(1.0, 1.0), (2.0, 0.5)])
def test_exponential_integral_equation(unit, w, k):
    r = check_integral_equation(IntegralEquationCase(Family.EXPONENTIAL, ExponentialState(k), w, unit))
    assert r.sup_residual < 1e-8


def test_exponential_bessel_identity():
    assert exponential_bessel_identity(1.0, 1.0, np.geomspace(0.05, 5, 7)).sup_residual < 1e-8


def test_linear_integral_equation(unit):
    # hbar gamma^2 nu = 1
    r = check_integral_equation(IntegralEquationCase(Family.LINEAR, LinearState(0.0), 1 / unit.gamma**2, unit,
                                                     q_grid=tuple(np.linspace(-3, 1, 5))))
    assert r.sup_residual < 1e-4


def test_momentum_space(unit):
    r = check_momentum_space_linear(1.0, 0.5, np.linspace(-3, 3, 9), unit)
    assert r.sup_residual < 1e-12


def test_addition_theorem_weak(unit):
    r = check_addition_theorem_ho(np.pi / 2, 40, np.linspace(-1, 1, 5), unit, mode="weak")
    assert r.sup_residual < 1e-8


def test_addition_theorem_pointwise_is_slow(unit):
    # terms decay like n^(-1/2): the pointwise sum is far from converged at n_max = 40
    pair = np.array([[0.3, 0.5]])
    r10 = check_addition_theorem_ho(np.pi / 2, 10, pair, unit, mode="pointwise").sup_residual
    r40 = check_addition_theorem_ho(np.pi / 2, 40, pair, unit, mode="pointwise").sup_residual
    assert r40 < r10 and r40 > 1e-3


def test_nrm_symmetry(unit):
    mus = [4j * w for w in np.linspace(0.5, 2.0, 5)]
    assert check_nrm_symmetry(Family.EXPONENTIAL, mus, unit, ExponentialState(1.0)).sup_residual < 1e-9
    p = Params(lam=2.0)
    mus = [np.sqrt(8.0) * np.exp(z) for z in np.linspace(0.2, 0.8, 5)]
    assert check_nrm_symmetry(Family.SINUSOIDAL, mus, p, SinusoidalState(0)).sup_residual < 1e-8


def test_exponential_sifting_rate(unit):
    phi = lambda x: np.exp(-((np.asarray(x) - 0.2) ** 2))
    r = check_sifting_limit(Family.EXPONENTIAL, [4j * w for w in (5.0, 10.0, 20.0)], phi, 0.1, unit,
                            ExponentialState(1.0))
    res = r.notes["all_residuals"]
    assert r.passed
    assert res[-1] < res[0] / 3


def test_kernel_composition(unit):
    assert check_kernel_composition_ho(0.7, 0.9, [-1.0, 0.0, 0.6], unit).sup_residual < 1e-7

"""Group laws of the quadratic and linear families and the reciprocal eigenvalues.

The quadratic kernels form a rotation group in the angle theta, the linear
ones an abelian affine group in nu = 2/mu.  Composition through the
intermediate-variable integral is handled in the stationary-phase
approximation, which is exact for these quadratic-phase families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateStationaryPoint, Singular, UnsupportedFamily, ZeroDenominator
from .genfun import SplitGeneratingFunction
from .phasecore import Family, Params
from .quadrature import InfiniteLine, integrate
from .specfun import (
    ExponentialState,
    LinearState,
    OscillatorState,
    SinusoidalState,
    bessel_k_imag,
    modified_mathieu_first,
    oscillator_functions,
)

__all__ = [
    "mu_from_theta",
    "theta_from_mu",
    "mu_theta_convert",
    "rotation_decomposition",
    "LinearShear",
    "Composition",
    "compose_stationary_phase",
    "reciprocal_eigenvalue",
    "check_reciprocal_functional_equation",
    "parity_factor",
    "delta_limit_parity",
]

_TWO_PI = 2.0 * np.pi


def mu_from_theta(theta: float, params: Params = Params()) -> float:
    """mu = -2 sqrt(lam m) cot(theta / 2); theta = pi gives mu = 0 (delta kernel)."""
    theta = float(theta)
    if not 0.0 < theta < _TWO_PI:
        raise Singular(f"theta must lie in (0, 2 pi), got {theta!r}")
    if theta == np.pi:
        return 0.0
    return -2.0 * np.sqrt(params.lam * params.m) / np.tan(0.5 * theta)


def theta_from_mu(mu: float, params: Params = Params()) -> float:
    """Inverse of :func:`mu_from_theta`, valued in (0, 2 pi)."""
    return float(np.pi + 2.0 * np.arctan(float(mu) / (2.0 * np.sqrt(params.lam * params.m))))


def mu_theta_convert(theta=None, mu=None, params: Params = Params()) -> float:
    """Convert whichever of ``theta`` / ``mu`` is given into the other."""
    if (theta is None) == (mu is None):
        raise ValueError("give exactly one of theta and mu")
    return mu_from_theta(theta, params) if mu is None else theta_from_mu(mu, params)


def rotation_decomposition(theta: float, params: Params = Params()) -> np.ndarray:
    """Matrix of the quadratic-family map (q, p) -> (Q, P): D^-1 R(theta) D."""
    c, s = np.cos(theta), np.sin(theta)
    k = (params.m * params.lam) ** 0.25
    D = np.diag([k, 1.0 / k])
    Dinv = np.diag([1.0 / k, k])
    R = np.array([[c, s], [-s, c]])
    return Dinv @ R @ D


@dataclass(frozen=True)
class LinearShear:
    """Affine map (q, p) -> M (q, p) + b of the linear family, nu = 2 / mu."""

    nu: float
    params: Params = Params()

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[1.0, -2.0 * self.nu], [0.0, 1.0]])

    @property
    def shift(self) -> np.ndarray:
        c = 2.0 * self.params.m * self.params.lam * self.nu
        return c * np.array([-self.nu, 1.0])

    def __call__(self, pt):
        return self.matrix @ np.asarray(pt, dtype=float) + self.shift

    def compose(self, other: "LinearShear") -> "LinearShear":
        """self after other; the result is again a shear with nu = nu_1 + nu_2."""
        if other.params != self.params:
            raise ValueError("cannot compose shears with different parameters")
        return LinearShear(self.nu + other.nu, self.params)

    def affine_compose(self, other: "LinearShear"):
        """Explicit (matrix, shift) product, for checking :meth:`compose`."""
        M = self.matrix @ other.matrix
        b = self.matrix @ other.shift + self.shift
        return M, b

    @classmethod
    def from_mu(cls, mu: float, params: Params = Params()) -> "LinearShear":
        if mu == 0:
            raise Singular("mu = 0 has no shear")
        return cls(2.0 / mu, params)


# ---------------------------------------------------------------------------
# composition

@dataclass(frozen=True)
class Composition:
    f1: SplitGeneratingFunction
    f2: SplitGeneratingFunction
    kappa: float
    f_c: SplitGeneratingFunction

    def qbar(self, q, Q):
        """Stationary intermediate point; the phase is quadratic so one Newton step is exact."""
        g0 = self.f1.dQ(q, 0.0) + self.f2.dq(0.0, Q)
        return -g0 / self.kappa

    def f_s(self, q, Q):
        x = self.qbar(q, Q)
        return self.f1(q, x) + self.f2(x, Q)

    def dq(self, q, Q):
        # envelope theorem: the q_i dependence drops out at the stationary point
        return self.f1.dq(q, self.qbar(q, Q))

    def dQ(self, q, Q):
        return self.f2.dQ(self.qbar(q, Q), Q)

    def offset(self, q, Q):
        return self.f_s(q, Q) - self.f_c(q, Q)


def _composite_mu(f1, f2):
    p = f1.params
    if f1.family is Family.QUADRATIC:
        theta = (theta_from_mu(f1.mu, p) + theta_from_mu(f2.mu, p)) % _TWO_PI
        if theta == 0.0 or abs(theta - np.pi) < 1e-14:
            raise Singular("composite rotation is the identity or the inversion")
        return mu_from_theta(theta, p)
    nu = 2.0 / f1.mu + 2.0 / f2.mu
    if nu == 0:
        raise Singular("composite shear is the identity")
    return 2.0 / nu


def compose_stationary_phase(f1: SplitGeneratingFunction, f2: SplitGeneratingFunction,
                             tol: float = 1e-8) -> Composition:
    """Compose two generating functions by eliminating the intermediate variable.

    Only the quadratic and linear families qualify: their phases are
    quadratic in the intermediate variable, so the stationary point is
    unique and global.
    """
    if f1.family != f2.family or f1.params != f2.params:
        raise ValueError("both generating functions must share family and parameters")
    if f1.family not in (Family.QUADRATIC, Family.LINEAR):
        raise UnsupportedFamily(f"stationary-phase composition needs a unique stationary point; "
                                f"{f1.family.value} has several")
    if not (f1.is_real and f2.is_real):
        raise ValueError("composition is defined for real mu only")
    kappa = float(f1.d2Q(0.0, 0.0) + f2.d2q(0.0, 0.0))
    scale = max(abs(f1.d2Q(0.0, 0.0)), abs(f2.d2q(0.0, 0.0)))
    if abs(kappa) < tol * scale:
        raise DegenerateStationaryPoint(f"kappa = {kappa:.3g} vanishes relative to {scale:.3g}")
    mu_c = _composite_mu(f1, f2)
    return Composition(f1, f2, kappa, SplitGeneratingFunction(f1.family, mu_c, f1.params))


# ---------------------------------------------------------------------------
# reciprocal eigenvalues

def _ho_N(n, theta, params):
    # sqrt(1 + i cot theta) e^{-i n theta} coincides with the principal-branch
    # closed form on (0, pi) and continues it across pi as a 2 pi-periodic function.
    if np.isclose(np.sin(theta), 0.0, atol=1e-15):
        raise Singular(f"theta = {theta} is on the singular set")
    m, hbar, w = params.m, params.hbar, params.omega
    return np.sqrt(m * w / (_TWO_PI * hbar)) * np.sqrt(1 + 1j / np.tan(theta)) * np.exp(-1j * n * theta)


def _linear_N(E, nu, params):
    if nu == 0:
        raise Singular("nu = 0 is the identity")
    m, hbar, lam = params.m, params.hbar, params.lam
    return np.exp(1j / hbar * (2 * m * E * nu - m**2 * lam**2 * nu**3 / 3)) / np.sqrt(4j * np.pi * hbar * nu)


def bessel_k_complex(nu: float, w: complex) -> complex:
    """K_{i nu}(w) for complex w (mpmath); real positive w uses the quadrature."""
    w = complex(w)
    if w.imag == 0 and w.real > 0:
        return complex(bessel_k_imag(nu, w.real))
    import mpmath

    return complex(mpmath.besselk(1j * nu, w))


def _exp_N(k, mu, params):
    hbar, a = params.hbar, params.a
    w = complex(mu) / (4j * hbar * a**2)
    K = bessel_k_complex(k / a, w)
    if K == 0:
        raise ZeroDenominator(f"K_(i{k / a})({w}) vanishes")
    return (a / 2) / K


def _sin_N(state: SinusoidalState, mu, params):
    mu = float(mu)
    if not mu > 0:
        raise Singular("the sinusoidal reciprocal eigenvalue needs mu > 0")
    zeta = np.log(mu / np.sqrt(4 * params.m * params.lam))
    M = float(modified_mathieu_first(state.solution(params), zeta))
    if M == 0:
        raise ZeroDenominator(f"modified Mathieu function vanishes at zeta = {zeta}")
    return (1j) ** state.order * params.a / (_TWO_PI * M)


def reciprocal_eigenvalue(family, state, parameter, params: Params = Params()) -> complex:
    """N such that psi = N * int exp(i F / hbar) psi dQ.

    ``parameter`` is theta (quadratic), nu (linear) or mu (exponential,
    sinusoidal).
    """
    family = Family.parse(family)
    if family is Family.QUADRATIC and isinstance(state, OscillatorState):
        return complex(_ho_N(state.n, float(parameter), params))
    if family is Family.LINEAR and isinstance(state, LinearState):
        return complex(_linear_N(state.E, float(parameter), params))
    if family is Family.EXPONENTIAL and isinstance(state, ExponentialState):
        return complex(_exp_N(state.k, parameter, params))
    if family is Family.SINUSOIDAL and isinstance(state, SinusoidalState):
        return complex(_sin_N(state, parameter, params))
    raise UnsupportedFamily(f"no reciprocal eigenvalue for {family.value} with {state!r}")


def check_reciprocal_functional_equation(family, param1, param2, state,
                                         params: Params = Params()) -> float:
    """Relative residual of N(p1 + p2) = G(p1, p2) N(p1) N(p2).

    G is the Gaussian integral over the intermediate variable (principal
    root) times, for the linear family, the constant phase left over by
    the stationary point.
    """
    family = Family.parse(family)
    hbar = params.hbar
    if family is Family.QUADRATIC:
        t1, t2 = float(param1), float(param2)
        s1, s2, s12 = np.sin(t1), np.sin(t2), np.sin(t1 + t2)
        for s in (s1, s2, s12):
            if abs(s) < 1e-14:
                raise Singular("theta_1, theta_2 or their sum is a multiple of pi")
        kappa = -params.m * params.omega * s12 / (s1 * s2)
        gauss = np.sqrt(_TWO_PI * hbar * 1j / kappa)
        lhs = reciprocal_eigenvalue(family, state, (t1 + t2) % _TWO_PI, params)
        rhs = gauss * reciprocal_eigenvalue(family, state, t1, params) * reciprocal_eigenvalue(family, state, t2, params)
    elif family is Family.LINEAR:
        n1, n2 = float(param1), float(param2)
        if n1 == 0 or n2 == 0 or n1 + n2 == 0:
            raise Singular("nu_1, nu_2 and their sum must be non-zero")
        m, lam = params.m, params.lam
        gauss = np.sqrt(4j * np.pi * hbar * n1 * n2 / (n1 + n2))
        phase = np.exp(-1j * m**2 * lam**2 * n1 * n2 * (n1 + n2) / hbar)
        lhs = reciprocal_eigenvalue(family, state, n1 + n2, params)
        rhs = gauss * phase * reciprocal_eigenvalue(family, state, n1, params) * reciprocal_eigenvalue(family, state, n2, params)
    else:
        raise UnsupportedFamily("functional equations exist for the quadratic and linear families only")
    return float(abs(lhs - rhs) / abs(lhs))


def parity_factor(n: int) -> complex:
    """i exp(c_n pi) with c_n = -(n + 1/2) i; equals (-1)^n.

    exp(-i (n + 1/2) pi) = (-i)^(2n + 1), so the product is evaluated in
    powers of i and is exact.
    """
    return complex(1j * (-1j) ** ((2 * int(n) + 1) % 4))


def delta_limit_parity(n: int, eps: float, q_grid, params: Params = Params(),
                       admixture: float = 0.1, tol: float = 1e-11) -> float:
    """Sup-norm residual of N_n K_theta Phi against (-1)^n Phi(-q), theta = pi - eps.

    Phi = psi_n + admixture * psi_{n+1}.  For psi_n alone the kernel
    reproduces the parity image exactly at every theta; the admixed level
    picks up the phase exp(i theta) instead of -1, so the residual
    measures the approach to the delta kernel and is O(eps).
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    theta = np.pi - eps
    mu = mu_from_theta(theta, params)
    gf = SplitGeneratingFunction(Family.QUADRATIC, mu, params)
    N = reciprocal_eigenvalue(Family.QUADRATIC, OscillatorState(n), theta, params)
    hbar = params.hbar
    L = (np.sqrt(2 * n + 3) + 9) / np.sqrt(params.m * params.omega / hbar)

    def phi(x):
        f = oscillator_functions(n + 1, x, params)
        return f[..., n] + admixture * f[..., n + 1]

    q_grid = np.asarray(q_grid, dtype=float)
    out = np.empty(q_grid.shape, dtype=complex)
    for i, q in enumerate(q_grid.ravel()):
        res = integrate(lambda Q: np.exp(1j * gf(q, Q) / hbar) * phi(Q), InfiniteLine(L), tol=tol)
        out.ravel()[i] = N * res.value
    target = (-1) ** n * phi(-q_grid)
    return float(np.max(np.abs(out - target)) / np.max(np.abs(target)))

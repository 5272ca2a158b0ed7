"""Physical parameters, the standard potentials and their Hamiltonians.

Units are natural (``hbar = m = lam = a = 1``) unless a :class:`Params`
instance says otherwise.  Every potential is written in the reduced
standard form; translated or inverted variants are not represented.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import Unclassifiable

__all__ = [
    "Family",
    "TABLE_FAMILIES",
    "TRANSCENDENTAL_FAMILIES",
    "Params",
    "PhasePoint",
    "potential",
    "potential_derivative",
    "eval_hamiltonian",
    "classify_potential",
]


class Family(str, enum.Enum):
    FREE = "free"
    QUADRATIC = "quadratic"
    SINUSOIDAL = "sinusoidal"
    EVEN_HYPERBOLIC = "even_hyperbolic"
    LINEAR = "linear"
    EXPONENTIAL = "exponential"
    ODD_HYPERBOLIC = "odd_hyperbolic"

    @classmethod
    def parse(cls, name: "str | Family") -> "Family":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_").replace(" ", "_")
        aliases = {"ho": "quadratic", "oscillator": "quadratic", "airy": "linear",
                   "mathieu": "sinusoidal", "evenhyperbolic": "even_hyperbolic",
                   "oddhyperbolic": "odd_hyperbolic", "exp": "exponential"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown potential family {name!r}") from None


#: Families carrying a non-trivial generating function (everything but FREE).
TABLE_FAMILIES = (
    Family.QUADRATIC,
    Family.SINUSOIDAL,
    Family.EVEN_HYPERBOLIC,
    Family.LINEAR,
    Family.EXPONENTIAL,
    Family.ODD_HYPERBOLIC,
)

#: Families whose potential obeys V''' = rho V' with rho != 0.
TRANSCENDENTAL_FAMILIES = (
    Family.SINUSOIDAL,
    Family.EVEN_HYPERBOLIC,
    Family.EXPONENTIAL,
    Family.ODD_HYPERBOLIC,
)


@dataclass(frozen=True)
class Params:
    """Mass ``m``, action ``hbar``, strength ``lam`` and inverse length ``a``."""

    m: float = 1.0
    hbar: float = 1.0
    lam: float = 1.0
    a: float = 1.0

    def __post_init__(self):
        for name in ("m", "hbar", "lam", "a"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"parameter {name} must be finite and > 0, got {value!r}")

    @property
    def omega(self) -> float:
        """Oscillator frequency sqrt(lam/m)."""
        return float(np.sqrt(self.lam / self.m))

    @property
    def gamma(self) -> float:
        """Inverse Airy length (2 m lam / hbar^2)^(1/3)."""
        return float(np.cbrt(2.0 * self.m * self.lam / self.hbar**2))

    @property
    def delta(self) -> float:
        """Dimensionless Mathieu strength m lam / (4 hbar^2 a^4)."""
        return self.m * self.lam / (4.0 * self.hbar**2 * self.a**4)


class PhasePoint(NamedTuple):
    q: float
    p: float


def potential(family: Family, params: Params, x):
    """Standard-form potential V(x) of ``family``; vectorised over ``x``."""
    return potential_derivative(family, params, x, 0)


def potential_derivative(family: Family, params: Params, x, order: int = 1):
    """``order``-th derivative of the standard-form potential.

    Complex ``x`` is accepted (the duality relations need analytic
    continuation); the result is real for real input.
    """
    family = Family.parse(family)
    lam, a = params.lam, params.a
    x = np.asarray(x)
    k = int(order)
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if family is Family.FREE:
        return np.zeros_like(x, dtype=float) if not np.iscomplexobj(x) else np.zeros_like(x)
    if family is Family.QUADRATIC:
        coeffs = (0.5 * lam * x**2, lam * x, lam * np.ones_like(x))
        return coeffs[k] if k < 3 else np.zeros_like(coeffs[0])
    if family is Family.LINEAR:
        if k == 0:
            return lam * x
        return lam * np.ones_like(x) if k == 1 else np.zeros_like(x * 1.0)
    b = 2.0 * a
    scale = b**k
    if family is Family.SINUSOIDAL:
        # d^k/dx^k cos(bx) = b^k cos(bx + k pi/2)
        return lam / (4 * a**2) * scale * np.cos(b * x + k * np.pi / 2)
    if family is Family.EVEN_HYPERBOLIC:
        f = np.cosh if k % 2 == 0 else np.sinh
        return lam / (4 * a**2) * scale * f(b * x)
    if family is Family.EXPONENTIAL:
        return lam / (2 * a) * scale * np.exp(b * x)
    if family is Family.ODD_HYPERBOLIC:
        f = np.sinh if k % 2 == 0 else np.cosh
        return lam / (2 * a) * scale * f(b * x)
    raise ValueError(f"unhandled family {family}")


def eval_hamiltonian(family: Family, params: Params, pt) -> float:
    """H(q, p) = p^2 / 2m + V(q)."""
    q, p = pt
    return p * p / (2.0 * params.m) + potential(family, params, q)


def _d1(v, h, s):
    # 5-point first derivative with stride s (spacing s*h), interior points only
    n = len(v)
    i = np.arange(2 * s, n - 2 * s)
    return (v[i - 2 * s] - 8 * v[i - s] + 8 * v[i + s] - v[i + 2 * s]) / (12 * s * h), i


def _d3(v, h, s):
    n = len(v)
    i = np.arange(2 * s, n - 2 * s)
    return (-v[i - 2 * s] + 2 * v[i - s] - 2 * v[i + s] + v[i + 2 * s]) / (2 * (s * h) ** 3), i


def _richardson(v, h, stencil, order):
    """Raise the accuracy of a 5-point stencil by combining spacings h and 2h."""
    fine, i_f = stencil(v, h, 1)
    coarse, i_c = stencil(v, h, 2)
    keep = np.isin(i_f, i_c)
    w = 2.0**order
    return (w * fine[keep] - coarse) / (w - 1), i_c


def classify_potential(x, v, tol: float = 1e-6):
    """Identify the standard family of a sampled potential.

    Parameters
    ----------
    x, v : array_like
        Uniform grid and the potential sampled on it (at least 9 points).
    tol : float
        Relative tolerance for the residual of V''' = rho V'.

    Returns
    -------
    (Family, rho)
        ``rho`` is None for the polynomial families (V''' = 0).
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if x.ndim != 1 or x.shape != v.shape or len(x) < 9:
        raise ValueError("need matching 1-d grids with at least 9 samples")
    steps = np.diff(x)
    h = steps.mean()
    if not np.allclose(steps, h, rtol=1e-9, atol=0):
        raise ValueError("grid must be uniform")

    d1, _ = _richardson(v, h, _d1, 4)
    d3, _ = _richardson(v, h, _d3, 2)
    half_span = 0.5 * (x[-1] - x[0])
    n1 = np.sqrt(np.mean(d1**2))
    n3 = np.sqrt(np.mean(d3**2))

    if n1 <= tol * (np.abs(v).max() + 1.0) / half_span:
        return Family.FREE, None

    # V''' negligible compared with V'/L^2: polynomial of degree <= 2
    if n3 * half_span**2 <= tol * n1:
        c2, c1, _c0 = np.polyfit(x, v, 2)
        if abs(c2) * half_span <= tol * max(abs(c1), abs(c2) * half_span):
            return Family.LINEAR, None
        return Family.QUADRATIC, None

    # c + A e^{bx} + B e^{-bx} obeys the exact shift recurrence
    # (V[k+3] - V[k]) - (V[k+2] - V[k+1]) = 2C (V[k+2] - V[k+1]),  C = cosh(bh)
    lhs = (v[3:] - v[:-3]) - (v[2:-1] - v[1:-2])
    rhs = v[2:-1] - v[1:-2]
    two_c = float(np.dot(lhs, rhs) / np.dot(rhs, rhs))
    if np.sqrt(np.mean((lhs - two_c * rhs) ** 2)) > tol * np.sqrt(np.mean((lhs - 2 * rhs) ** 2)):
        raise Unclassifiable("V''' is not proportional to V' on this grid")
    C = 0.5 * two_c
    rho = float((np.arccosh(C) / h) ** 2 if C >= 1 else -((np.arccos(C) / h) ** 2))
    if rho < 0:
        return Family.SINUSOIDAL, rho

    # hyperbolic: V = c + A cosh(bx) + B sinh(bx); the sign of A^2 - B^2 picks the form
    b = np.sqrt(rho)
    basis = np.column_stack([np.ones_like(x), np.cosh(b * x), np.sinh(b * x)])
    (_, A, B), *_ = np.linalg.lstsq(basis, v, rcond=None)
    disc = A * A - B * B
    if abs(disc) <= 1e-6 * (A * A + B * B):
        return Family.EXPONENTIAL, rho
    return (Family.EVEN_HYPERBOLIC if disc > 0 else Family.ODD_HYPERBOLIC), rho

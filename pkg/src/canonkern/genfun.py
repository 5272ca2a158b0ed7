"""Correction-free generating functions and the canonical maps they induce.

Every family's generating function is stored as ``G_plus(q + Q) + G_minus(q - Q)``.
In terms of the half-sum/half-difference variables ``x = (q + Q)/2`` and
``y = (q - Q)/2`` this is ``F_plus(x) + F_minus(y)`` with
``F_plus(x) = G_plus(2x) = -(4m/mu) V(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import BranchAmbiguity, NoRoot, UnsupportedFamily
from .phasecore import (
    TRANSCENDENTAL_FAMILIES,
    Family,
    Params,
    PhasePoint,
    eval_hamiltonian,
    potential_derivative,
)

__all__ = [
    "SplitGeneratingFunction",
    "DualityParams",
    "duality_params",
    "eval_F_and_momenta",
    "transform_point",
    "invariance_and_symplectic_residuals",
    "correction_free_residual",
    "duality_residual",
    "large_mu_check",
    "free_generating_function",
    "displacement",
]


def _real_if_possible(mu):
    mu = complex(mu)
    if mu.imag == 0.0:
        return mu.real
    return mu


@dataclass(frozen=True)
class SplitGeneratingFunction:
    """The family member F_mu(q, Q) of a standard potential.

    ``mu`` may be complex; evaluators then return complex values.
    """

    family: Family
    mu: complex
    params: Params = Params()

    def __post_init__(self):
        fam = Family.parse(self.family)
        object.__setattr__(self, "family", fam)
        if fam is Family.FREE:
            raise UnsupportedFamily("the free theory has no mu family; use free_generating_function")
        mu = _real_if_possible(self.mu)
        if mu == 0:
            raise ValueError("mu must be non-zero")
        object.__setattr__(self, "mu", mu)

    @property
    def is_real(self) -> bool:
        return not isinstance(self.mu, complex)

    # -- the two d'Alembert pieces as functions of s = q + Q and d = q - Q --
    def _plus(self, s, k: int):
        """k-th derivative of G_plus(s)."""
        f, mu, P = self.family, self.mu, self.params
        m, lam, a = P.m, P.lam, P.a
        if f is Family.QUADRATIC:
            c = -m * lam / (2 * mu)
            return (c * s**2, 2 * c * s, 2 * c + 0 * s)[k]
        if f is Family.LINEAR:
            c = -2 * m * lam / mu
            return (c * s, c + 0 * s, 0 * s)[k]
        if f in (Family.SINUSOIDAL, Family.EVEN_HYPERBOLIC):
            c = -m * lam / (mu * a**2)
            if f is Family.SINUSOIDAL:
                return c * a**k * np.cos(a * s + k * np.pi / 2)
            return c * a**k * (np.cosh if k % 2 == 0 else np.sinh)(a * s)
        c = -2 * m * lam / (mu * a)
        if f is Family.EXPONENTIAL:
            return c * a**k * np.exp(a * s)
        return c * a**k * (np.sinh if k % 2 == 0 else np.cosh)(a * s)

    def _minus(self, d, k: int):
        """k-th derivative of G_minus(d)."""
        f, mu, a = self.family, self.mu, self.params.a
        if f in (Family.QUADRATIC, Family.LINEAR):
            c = mu / 8
            return (c * d**2, 2 * c * d, 2 * c + 0 * d)[k]
        if f is Family.SINUSOIDAL:
            return -mu / (4 * a**2) * a**k * np.cos(a * d + k * np.pi / 2)
        return mu / (4 * a**2) * a**k * (np.cosh if k % 2 == 0 else np.sinh)(a * d)

    # -- public evaluators --
    def __call__(self, q, Q):
        return self._plus(q + Q, 0) + self._minus(q - Q, 0)

    def dq(self, q, Q):
        return self._plus(q + Q, 1) + self._minus(q - Q, 1)

    def dQ(self, q, Q):
        return self._plus(q + Q, 1) - self._minus(q - Q, 1)

    def d2q(self, q, Q):
        return self._plus(q + Q, 2) + self._minus(q - Q, 2)

    def d2Q(self, q, Q):
        # (d/dQ)^2 of G_minus(q - Q) picks up (-1)^2
        return self._plus(q + Q, 2) + self._minus(q - Q, 2)

    def dqdQ(self, q, Q):
        return self._plus(q + Q, 2) - self._minus(q - Q, 2)

    def F_plus(self, x):
        """F_+(x) with x = (q + Q)/2."""
        return self._plus(2 * np.asarray(x), 0)

    def F_minus(self, y):
        """F_-(y) with y = (q - Q)/2."""
        return self._minus(2 * np.asarray(y), 0)

    def F_plus_prime(self, x):
        return 2 * self._plus(2 * np.asarray(x), 1)

    def F_minus_prime(self, y):
        return 2 * self._minus(2 * np.asarray(y), 1)

    def with_mu(self, mu) -> "SplitGeneratingFunction":
        return SplitGeneratingFunction(self.family, mu, self.params)


class FreeGeneratingFunction(NamedTuple):
    """F = F_-(q_-) (sign=+1, giving P = +p) or F_+(q_+) (sign=-1, P = -p)."""

    func: Callable
    deriv: Callable
    sign: int = +1

    def __call__(self, q, Q):
        arg = 0.5 * (q - Q) if self.sign > 0 else 0.5 * (q + Q)
        return self.func(arg)

    def dq(self, q, Q):
        arg = 0.5 * (q - Q) if self.sign > 0 else 0.5 * (q + Q)
        return 0.5 * self.deriv(arg)

    def dQ(self, q, Q):
        arg = 0.5 * (q - Q) if self.sign > 0 else 0.5 * (q + Q)
        return -0.5 * self.sign * self.deriv(arg)


def free_generating_function(func, deriv, sign: int = +1) -> FreeGeneratingFunction:
    return FreeGeneratingFunction(func, deriv, 1 if sign > 0 else -1)


def eval_F_and_momenta(gf, q, Q):
    """Return ``(F, p, P)`` with p = dF/dq and P = -dF/dQ."""
    return gf(q, Q), gf.dq(q, Q), -gf.dQ(q, Q)


def _require_real(gf: SplitGeneratingFunction):
    if not gf.is_real:
        raise ValueError("phase-space maps need real mu; got %r" % (gf.mu,))


def _scan_roots(g, lo, hi, n=4001):
    xs = np.linspace(lo, hi, n)
    vals = g(xs)
    roots = []
    exact = np.flatnonzero(vals == 0.0)
    roots.extend(xs[exact])
    change = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    for i in change:
        roots.append(brentq(g, xs[i], xs[i + 1], xtol=1e-15, rtol=1e-15, maxiter=200))
    return sorted(roots)


def transform_point(gf: SplitGeneratingFunction, pt) -> PhasePoint:
    """Image (Q, P) of the phase point (q, p) under the map generated by ``gf``.

    Solves p = dF/dq(q, Q) for Q.  For the sinusoidal family only the root
    with |a (Q - q)| <= pi/2 (principal arcsin branch) is accepted.
    """
    _require_real(gf)
    q, p = float(pt[0]), float(pt[1])
    fam, a = gf.family, gf.params.a

    def g(Q):
        return gf.dq(q, Q) - p

    if fam in (Family.QUADRATIC, Family.LINEAR):
        slope = gf.dqdQ(q, q)
        if slope == 0:
            raise NoRoot("map is degenerate for this mu")
        Q = q - g(q) / slope
        return PhasePoint(float(Q), float(-gf.dQ(q, Q)))

    if fam is Family.SINUSOIDAL:
        width = 2 * np.pi / a
        roots = _scan_roots(g, q - width, q + width)
        half = 0.5 * np.pi / a * (1 + 1e-12)
        roots = [r for r in roots if abs(r - q) <= half]
        roots = _dedupe(roots, 1e-10 / a)
    else:
        roots = _dedupe(_scan_roots(g, q - 10.0 / a, q + 10.0 / a), 1e-10 / a)

    if not roots:
        raise NoRoot(f"no solution of p = dF/dq for (q, p) = ({q}, {p})")
    if len(roots) > 1:
        raise BranchAmbiguity(f"{len(roots)} candidate images {roots} for (q, p) = ({q}, {p})")
    Q = roots[0]
    return PhasePoint(float(Q), float(-gf.dQ(q, Q)))


def _dedupe(roots, tol):
    out = []
    for r in roots:
        if not out or abs(r - out[-1]) > tol:
            out.append(r)
    return out


def invariance_and_symplectic_residuals(gf: SplitGeneratingFunction, pt, h: float = 1e-5):
    """``(|H(Q,P) - H(q,p)|, |{Q,P}_{q,p} - 1|)`` at ``pt``.

    The Poisson bracket uses central differences of :func:`transform_point`.
    """
    q, p = float(pt[0]), float(pt[1])
    Q, P = transform_point(gf, (q, p))
    H0 = eval_hamiltonian(gf.family, gf.params, (q, p))
    H1 = eval_hamiltonian(gf.family, gf.params, (Q, P))
    dH = abs(float(H1 - H0))

    Qqp, Pqp = transform_point(gf, (q + h, p))
    Qqm, Pqm = transform_point(gf, (q - h, p))
    Qpp, Ppp = transform_point(gf, (q, p + h))
    Qpm, Ppm = transform_point(gf, (q, p - h))
    Q_q, P_q = (Qqp - Qqm) / (2 * h), (Pqp - Pqm) / (2 * h)
    Q_p, P_p = (Qpp - Qpm) / (2 * h), (Ppp - Ppm) / (2 * h)
    dPB = abs(Q_q * P_p - Q_p * P_q - 1.0)
    return dH, dPB


def correction_free_residual(F, q, Q, h: float = 1e-3) -> float:
    """|d2F/dq2 - d2F/dQ2| at (q, Q).

    Uses the analytic second partials when ``F`` provides them, otherwise
    5-point central differences of the callable ``F(q, Q)``.
    """
    if hasattr(F, "d2q") and hasattr(F, "d2Q"):
        return float(np.max(np.abs(F.d2q(q, Q) - F.d2Q(q, Q))))
    w = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / (12 * h * h)
    off = np.array([-2, -1, 0, 1, 2]) * h
    fqq = sum(wi * F(q + oi, Q) for wi, oi in zip(w, off))
    fQQ = sum(wi * F(q, Q + oi) for wi, oi in zip(w, off))
    return float(np.max(np.abs(fqq - fQQ)))


@dataclass(frozen=True)
class DualityParams:
    """mu(z) = mu0 exp(sqrt_rho z), z(mu) = log(mu / mu0) / sqrt_rho."""

    mu0: complex
    sqrt_rho: complex

    def mu_of_z(self, z):
        return self.mu0 * np.exp(self.sqrt_rho * np.asarray(z, dtype=complex))

    def z_of_mu(self, mu):
        return np.log(np.asarray(mu, dtype=complex) / self.mu0) / self.sqrt_rho


def duality_params(family: Family, params: Params = Params()) -> DualityParams:
    family = Family.parse(family)
    m, lam, a = params.m, params.lam, params.a
    table = {
        Family.SINUSOIDAL: (2 * np.sqrt(m * lam), 1j * a),
        Family.EVEN_HYPERBOLIC: (2j * np.sqrt(m * lam), a),
        Family.EXPONENTIAL: (4j * np.sqrt(m * lam * a), a),
        Family.ODD_HYPERBOLIC: (2j * np.sqrt(2 * m * lam * a), a),
    }
    if family not in table:
        raise UnsupportedFamily(f"no duality parametrisation for {family.value}")
    mu0, sr = table[family]
    return DualityParams(complex(mu0), complex(sr))


def duality_residual(family: Family, params: Params, z, q, Q) -> float:
    """max of |F_mu(z)(q,Q) - F_mu(q)(z,Q)| and |F_mu(z)(q,Q) - F_mu(Q)(q,z)|."""
    family = Family.parse(family)
    if family not in TRANSCENDENTAL_FAMILIES:
        raise UnsupportedFamily(f"duality is not defined for {family.value}")
    dp = duality_params(family, params)

    def F(mu, x, y):
        return SplitGeneratingFunction(family, complex(mu), params)(x, y)

    base = F(dp.mu_of_z(z), q, Q)
    r1 = abs(base - F(dp.mu_of_z(q), z, Q))
    r2 = abs(base - F(dp.mu_of_z(Q), q, z))
    return float(max(r1, r2))


def large_mu_check(gf: SplitGeneratingFunction, pt) -> float:
    """|(P - p) - (4m/mu) V'(q_plus)|, an exact identity of the map."""
    q, p = float(pt[0]), float(pt[1])
    Q, P = transform_point(gf, (q, p))
    q_plus = 0.5 * (q + Q)
    rhs = 4 * gf.params.m / gf.mu * potential_derivative(gf.family, gf.params, q_plus, 1)
    return float(abs((P - p) - rhs))


def displacement(gf: SplitGeneratingFunction, pt):
    """(|Q - q|, |P - p|) for the image of ``pt``."""
    Q, P = transform_point(gf, pt)
    return abs(Q - pt[0]), abs(P - pt[1])

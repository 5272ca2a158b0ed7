"""Periodic Mathieu functions ce_r, se_r and the modified functions Mc_r^(1), Ms_r^(1).

Equation:  y'' + (a - 2 q cos 2v) y = 0.  Fourier coefficients come from
the symmetric tridiagonal recurrence matrices, normalised so that
``int_0^{2 pi} y^2 dv = pi`` with ``ce_r(0) > 0`` and ``se_r'(0) > 0``.

The modified functions of the first kind use Bessel-product series,
which converge for every real argument and carry the usual
normalisation (they tend to ``sqrt(2 / (pi h cosh z)) cos(...)`` for large z).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import ConvergenceFailure, SeriesDivergence
from .bessel import bessel_j_orders

__all__ = [
    "MathieuSolution",
    "mathieu_solution",
    "mathieu_eval",
    "modified_mathieu_first",
    "mathieu_char_and_fn",
    "modified_mathieu_M1",
]


@dataclass(frozen=True)
class MathieuSolution:
    """``kind`` is 'ce' or 'se'; the function is sum coeffs[k] * trig(orders[k] v)."""

    kind: str
    order: int
    q: float
    char_value: float
    orders: np.ndarray
    coeffs: np.ndarray

    @property
    def delta(self) -> float:
        return self.q

    @property
    def s(self) -> int:
        """Signed label: s >= 0 for ce_s, s < 0 for se_|s|."""
        return self.order if self.kind == "ce" else -self.order

    @property
    def fourier_coeffs(self) -> np.ndarray:
        return self.coeffs


def _matrix(kind, order, q, size):
    k = np.arange(size)
    off = np.full(size - 1, q, dtype=float)
    if kind == "ce" and order % 2 == 0:
        diag = (2.0 * k) ** 2
        off[0] *= np.sqrt(2.0)
        orders = 2 * k
    elif kind == "ce":
        diag = (2.0 * k + 1) ** 2
        diag[0] += q
        orders = 2 * k + 1
    elif order % 2 == 1:
        diag = (2.0 * k + 1) ** 2
        diag[0] -= q
        orders = 2 * k + 1
    else:
        diag = (2.0 * k + 2) ** 2
        orders = 2 * k + 2
    return diag, off, orders


def mathieu_solution(kind: str, order: int, q: float, tol: float = 1e-15) -> MathieuSolution:
    """Characteristic value and Fourier coefficients of ce_order or se_order."""
    if kind not in ("ce", "se"):
        raise ValueError("kind must be 'ce' or 'se'")
    order = int(order)
    if order < 0 or (kind == "se" and order == 0):
        raise ValueError(f"no Mathieu function {kind}_{order}")
    q = float(q)
    # position of the requested function among its symmetry class
    idx = order // 2 - 1 if (kind == "se" and order % 2 == 0) else order // 2
    size = max(40, idx + 30, int(2 * np.sqrt(abs(q))) + 30)
    while size <= 2000:
        diag, off, orders = _matrix(kind, order, q, size)
        w, v = eigh_tridiagonal(diag, off, select="i", select_range=(idx, idx))
        vec = v[:, 0]
        if np.max(np.abs(vec[-5:])) <= tol * np.max(np.abs(vec)):
            break
        size *= 2
    else:
        raise ConvergenceFailure(f"{kind}_{order} coefficients did not decay (q = {q})")
    coeffs = vec.copy()
    if kind == "ce" and order % 2 == 0:
        coeffs[0] /= np.sqrt(2.0)
    # trim the negligible tail
    keep = np.flatnonzero(np.abs(coeffs) > 1e-18 * np.abs(coeffs).max())
    n = keep[-1] + 1
    coeffs, orders = coeffs[:n], orders[:n]
    sign_ref = coeffs.sum() if kind == "ce" else (orders * coeffs).sum()
    if sign_ref < 0:
        coeffs = -coeffs
    return MathieuSolution(kind, order, q, float(w[0]), orders.astype(float), coeffs)


def mathieu_eval(sol: MathieuSolution, v, deriv: int = 0):
    """Evaluate the function (or its first or second derivative) at v; v may be complex."""
    v = np.asarray(v)
    arg = v[..., None] * sol.orders
    r = sol.orders
    if sol.kind == "ce":
        basis = (np.cos(arg), -r * np.sin(arg), -r * r * np.cos(arg))[deriv]
    else:
        basis = (np.sin(arg), r * np.cos(arg), -r * r * np.sin(arg))[deriv]
    return basis @ sol.coeffs


def _jn_signed(jtab, n):
    # J_n for possibly negative integer n, from a table of non-negative orders
    n = np.asarray(n)
    sign = np.where((n < 0) & (np.abs(n) % 2 == 1), -1.0, 1.0)
    return sign * jtab[..., np.abs(n)]


def modified_mathieu_first(sol: MathieuSolution, z):
    """Mc^(1) (for ce) or Ms^(1) (for se) at real z, via Bessel products.

    The shift index is taken at the largest Fourier coefficient to avoid
    dividing by a small one.
    """
    z = np.asarray(z, dtype=float)
    h = np.sqrt(sol.q)
    u1 = h * np.exp(-z)
    u2 = h * np.exp(z)
    c = sol.coeffs
    ell = np.arange(len(c))
    s = int(np.argmax(np.abs(c)))
    m = sol.order // 2 if not (sol.kind == "se" and sol.order % 2 == 0) else (sol.order - 2) // 2
    if sol.kind == "ce" and sol.order % 2 == 0:
        shift = 0
    elif sol.order % 2 == 1:
        shift = 1
    else:
        shift = 2
    nmax = len(c) + s + 3
    j1 = bessel_j_orders(nmax, u1)
    j2 = bessel_j_orders(nmax, u2)
    lo = ell - s
    hi = ell + s + shift
    a = _jn_signed(j1, lo) * _jn_signed(j2, hi)
    b = _jn_signed(j1, hi) * _jn_signed(j2, lo)
    comb = a + b if sol.kind == "ce" else a - b
    alt = (-1.0) ** ell
    terms = comb * (alt * c)
    head = np.max(np.abs(terms), axis=-1)
    tail = np.abs(terms[..., min(60, terms.shape[-1] - 1):]).max(axis=-1)
    if terms.shape[-1] > 60 and np.any(tail > 1e-15 * head):
        raise SeriesDivergence("Bessel-product terms have not decayed by index 60")
    total = terms.sum(axis=-1)
    eps = 2.0 if (sol.kind == "ce" and sol.order % 2 == 0 and s == 0) else 1.0
    return (-1.0) ** m * total / (eps * c[s])


def mathieu_char_and_fn(s: int, delta: float) -> MathieuSolution:
    """ce_s for s >= 0, se_|s| for s < 0."""
    return mathieu_solution("ce" if s >= 0 else "se", abs(int(s)), delta)


def modified_mathieu_M1(s: int, x, delta: float):
    """Mc^(1)_s for s >= 0, Ms^(1)_|s| for s < 0, at real x."""
    return modified_mathieu_first(mathieu_char_and_fn(s, delta), x)

"""Integer-order J_n and imaginary-order K_{i nu} for real positive argument."""

from __future__ import annotations

import numpy as np

from ..errors import Underflow

__all__ = ["bessel_j_orders", "bessel_k_imag", "bessel_k_imag_scaled"]

_UNDERFLOW_X = 700.0


def bessel_j_orders(nmax: int, x):
    """J_0 .. J_nmax at each x >= 0, by Miller's backward recurrence.

    Returns an array of shape ``x.shape + (nmax + 1,)``.  The recurrence
    is normalised with J_0 + 2 sum J_2k = 1.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("bessel_j_orders needs x >= 0")
    flat = x.ravel()
    xmax = float(flat.max()) if flat.size else 0.0
    start = int(max(nmax, xmax) + 30 + 12 * max(xmax, 1.0) ** (1 / 3))
    start += start % 2
    safe = np.where(flat > 0, flat, 1.0)
    out = np.zeros((flat.size, nmax + 1))
    nxt = np.zeros_like(safe)
    cur = np.full_like(safe, 1e-300)
    norm = np.zeros_like(safe)
    for n in range(start, 0, -1):
        # cur = j_n, nxt = j_{n+1}; produce j_{n-1}
        prev = 2 * n / safe * cur - nxt
        if n <= nmax:
            out[:, n] = cur
        if n % 2 == 0:
            norm += 2 * cur
        nxt, cur = cur, prev
        big = np.abs(cur) > 1e250
        if big.any():
            s = np.where(big, 1e-250, 1.0)
            cur *= s
            nxt *= s
            norm *= s
            out *= s[:, None]
    out[:, 0] = cur
    norm += cur
    out /= norm[:, None]
    zero = flat == 0
    if zero.any():
        out[zero] = 0.0
        out[zero, 0] = 1.0
    return out.reshape(x.shape + (nmax + 1,))


# Gauss-Legendre rule used for the K integral
_GL_X, _GL_W = np.polynomial.legendre.leggauss(200)


def bessel_k_imag_scaled(nu, x):
    """exp(x) K_{i nu}(x) from int_0^T exp(-x (cosh t - 1)) cos(nu t) dt.

    T is where the integrand has dropped below exp(-40); a 200-point
    Gauss-Legendre rule on [0, T] resolves the analytic integrand to
    roughly machine precision for |nu| <= 40 and x >= 1e-6.
    """
    nu = float(nu)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("bessel_k_imag needs x > 0")
    flat = x.ravel()
    T = np.arccosh(1.0 + 40.0 / flat)
    t = 0.5 * T[:, None] * (_GL_X[None, :] + 1.0)
    f = np.exp(-flat[:, None] * 2 * np.sinh(0.5 * t) ** 2) * np.cos(nu * t)
    val = 0.5 * T * (f @ _GL_W)
    return val.reshape(x.shape) if x.ndim else float(val[0])


def bessel_k_imag(nu, x, underflow: str = "raise"):
    """K_{i nu}(x) for real nu and x > 0.

    For x beyond ~700 the value underflows double precision; ``underflow``
    selects between raising :class:`Underflow` and returning 0.
    """
    x = np.asarray(x, dtype=float)
    over = x > _UNDERFLOW_X
    if over.any() and underflow == "raise":
        raise Underflow(f"K_(i nu)(x) underflows for x = {x[over].ravel()[0]:.6g}")
    xs = np.where(over, 1.0, x)
    val = bessel_k_imag_scaled(nu, xs) * np.exp(-xs)
    val = np.where(over, 0.0, val)
    return val if x.ndim else float(val)

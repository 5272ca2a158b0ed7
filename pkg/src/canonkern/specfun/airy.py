"""Airy function Ai and its derivative for real arguments.

Inside [-12, 10] values come from Taylor expansions about nodes spaced
0.25 apart.  The node values are produced once, at import, by Taylor
stepping: outward from the exact values at 0 on the oscillatory side, and
inward from the asymptotic expansion at 10 on the decaying side (the
direction in which Ai dominates the recessive error).  Outside the table
the asymptotic expansions are used directly.
"""

from __future__ import annotations

import numpy as np

__all__ = ["airy_ai", "airy_ai_prime", "airy"]

AI0 = 0.355028053887817239260063186004183
AIP0 = -0.258819403792806798405183560189203

_STEP = 0.25
_LO, _HI = -12.0, 10.0
_NTERMS = 40


def _asym_coeffs(n=60):
    u = [1.0]
    for k in range(1, n):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    u = np.array(u)
    k = np.arange(n)
    v = -(6 * k + 1) / (6 * k - 1) * u
    return u, v


_U, _V = _asym_coeffs()


def _truncated(coef, zeta_inv, signs):
    # sum coef_k signs_k zeta^-k, stopped before terms start growing
    total = np.zeros_like(zeta_inv)
    term_prev = np.full_like(zeta_inv, np.inf)
    active = np.ones_like(zeta_inv, dtype=bool)
    power = np.ones_like(zeta_inv)
    for k in range(len(coef)):
        term = coef[k] * power
        active &= np.abs(term) < np.abs(term_prev)
        total = total + np.where(active, signs[k] * term, 0.0)
        term_prev = term
        power = power * zeta_inv
    return total


def _asym_pos(x):
    zeta = 2.0 / 3.0 * x**1.5
    zi = 1.0 / zeta
    alt = (-1.0) ** np.arange(len(_U))
    su = _truncated(_U, zi, alt)
    sv = _truncated(_V, zi, alt)
    e = np.exp(-zeta) / (2 * np.sqrt(np.pi))
    return e * x**-0.25 * su, -e * x**0.25 * sv


def _asym_neg(x):
    z = -x
    zeta = 2.0 / 3.0 * z**1.5
    zi = 1.0 / zeta
    n = len(_U)
    # even / odd parts with alternating signs
    even_s = np.array([(-1.0) ** (k // 2) if k % 2 == 0 else 0.0 for k in range(n)])
    odd_s = np.array([(-1.0) ** (k // 2) if k % 2 == 1 else 0.0 for k in range(n)])
    ue = _truncated(_U, zi, even_s)
    uo = _truncated(_U, zi, odd_s)
    ve = _truncated(_V, zi, even_s)
    vo = _truncated(_V, zi, odd_s)
    c = np.cos(zeta - np.pi / 4)
    s = np.sin(zeta - np.pi / 4)
    ai = (c * ue + s * uo) / (np.sqrt(np.pi) * z**0.25)
    aip = z**0.25 * (s * ve - c * vo) / np.sqrt(np.pi)
    return ai, aip


def _taylor(x0, y0, yp0, t, nterms=_NTERMS):
    """Value and derivative at x0 + t of the solution of y'' = x y."""
    c = [np.asarray(y0, float), np.asarray(yp0, float), 0.5 * x0 * np.asarray(y0, float)]
    for k in range(1, nterms - 2):
        c.append((x0 * c[k] + c[k - 1]) / ((k + 2) * (k + 1)))
    y = np.zeros(np.broadcast(x0, t).shape)
    yp = np.zeros_like(y)
    for k in range(len(c) - 1, -1, -1):
        y = y * t + c[k]
        if k >= 1:
            yp = yp * t + k * c[k]
    return y, yp


def _build_table():
    nodes = np.arange(_LO, _HI + _STEP / 2, _STEP)
    vals = np.empty_like(nodes)
    ders = np.empty_like(nodes)
    i0 = int(round(-_LO / _STEP))
    vals[i0], ders[i0] = AI0, AIP0
    for i in range(i0, 0, -1):
        vals[i - 1], ders[i - 1] = _taylor(nodes[i], vals[i], ders[i], -_STEP)
    top = len(nodes) - 1
    a, ap = _asym_pos(np.array([_HI]))
    vals[top], ders[top] = a[0], ap[0]
    for i in range(top, i0 + 1, -1):
        vals[i - 1], ders[i - 1] = _taylor(nodes[i], vals[i], ders[i], -_STEP)
    return nodes, vals, ders


_NODES_X, _NODES_Y, _NODES_YP = _build_table()


def airy(x):
    """Return (Ai(x), Ai'(x)) for real ``x`` (scalar or array)."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    ai = np.empty_like(flat)
    aip = np.empty_like(flat)

    mid = (flat >= _LO) & (flat <= _HI)
    if mid.any():
        xm = flat[mid]
        idx = np.clip(np.rint((xm - _LO) / _STEP).astype(int), 0, len(_NODES_X) - 1)
        ai[mid], aip[mid] = _taylor(_NODES_X[idx], _NODES_Y[idx], _NODES_YP[idx], xm - _NODES_X[idx])
    pos = flat > _HI
    if pos.any():
        ai[pos], aip[pos] = _asym_pos(flat[pos])
    neg = flat < _LO
    if neg.any():
        ai[neg], aip[neg] = _asym_neg(flat[neg])
    if x.ndim == 0:
        return float(ai[0]), float(aip[0])
    return ai.reshape(x.shape), aip.reshape(x.shape)


def airy_ai(x):
    return airy(x)[0]


def airy_ai_prime(x):
    return airy(x)[1]

"""Integration engines for the kernel integrals.

* :func:`integrate` -- globally adaptive Gauss-Kronrod (10/21 point) on
  finite or truncated domains, equispaced trapezoid on periodic ones.
* :func:`integrate_regulated` -- Gaussian damping ``exp(-eps x^2)`` for
  conditionally convergent integrals, extrapolated to ``eps -> 0``.
* :func:`stationary_phase_leading` -- leading stationary-phase sum for
  ``int exp(i F(q, Q) / hbar) phi(Q) dQ``.

Integrands are vectorised: they take a float array and return a real or
complex array of the same shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DegenerateHessian,
    ExtrapolationUnstable,
    MaxSubdivisions,
    NonFinite,
    NoStationaryPoint,
)

__all__ = [
    "InfiniteLine",
    "HalfLine",
    "Interval",
    "Periodic",
    "Regulator",
    "QuadratureResult",
    "integrate",
    "integrate_regulated",
    "stationary_phase_leading",
    "exponential_leading",
    "sinusoidal_two_point",
    "sinusoidal_sifting_leading",
]

# Gauss-Kronrod 21-point abscissae (positive half, descending) and weights;
# every odd index (1, 3, ..., 9) is also a 10-point Gauss node.
_XGK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208292723490, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
_WK = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
_WG21 = np.zeros(21)
_WG21[1:10:2] = _WG
_WG21[11:20:2] = _WG[::-1]


@dataclass(frozen=True)
class InfiniteLine:
    """The real line, truncated to [center - L, center + L]."""

    L: float = 12.0
    center: float = 0.0

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError("truncation L must be > 0")

    @property
    def bounds(self):
        return self.center - self.L, self.center + self.L


@dataclass(frozen=True)
class HalfLine:
    """[start, start + L]; the half-line (start, infinity) truncated at L."""

    L: float = 50.0
    start: float = 0.0

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError("truncation L must be > 0")

    @property
    def bounds(self):
        return self.start, self.start + self.L


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.hi > self.lo:
            raise ValueError("need hi > lo")

    @property
    def bounds(self):
        return self.lo, self.hi


@dataclass(frozen=True)
class Periodic:
    """One period [start, start + period); ``nodes`` fixes the trapezoid size."""

    period: float
    start: float = 0.0
    nodes: int | None = None

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError("period must be > 0")
        if self.nodes is not None and self.nodes < 2:
            raise ValueError("need at least 2 nodes")

    @property
    def bounds(self):
        return self.start, self.start + self.period


@dataclass(frozen=True)
class Regulator:
    """Damping factors exp(-eps (x - center)^2), eps taken from ``epsilons``."""

    epsilons: Sequence[float] = (1e-2, 5e-3, 2.5e-3)
    center: float = 0.0

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        object.__setattr__(self, "epsilons", eps)
        if len(eps) < 3:
            raise ValueError("need at least three regulator values")
        if any(e <= 0 for e in eps):
            raise ValueError("regulator values must be positive")
        if any(b > 0.5 * a * (1 + 1e-12) for a, b in zip(eps, eps[1:])):
            raise ValueError("regulator values must decrease by a factor of at least 2")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error estimate must be non-negative")


def _kronrod_batch(f, lo, hi):
    """Apply the 21-point rule to many intervals at once."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel())).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        bad = x[~np.isfinite(fx)][0]
        raise NonFinite(f"integrand is not finite at x = {bad!r}")
    k = half * (fx @ _WK)
    g = half * (fx @ _WG21)
    return k, np.abs(k - g)


def _adaptive(f, a, b, tol, rtol, max_intervals):
    lo = np.array([a], dtype=float)
    hi = np.array([b], dtype=float)
    vals, errs = _kronrod_batch(f, lo, hi)
    nevals = 21
    while True:
        total = vals.sum()
        err = errs.sum()
        target = max(tol, rtol * abs(total))
        if err <= target:
            return QuadratureResult(complex(total), float(err), nevals)
        n = len(lo)
        if n >= max_intervals:
            raise MaxSubdivisions(
                f"{n} subintervals, error estimate {err:.3g} > {target:.3g}")
        # split every interval holding more than its share of the error budget
        split = errs > target / n
        if not split.any():
            split = errs >= errs.max()
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        nv, ne = _kronrod_batch(f, new_lo, new_hi)
        nevals += 21 * len(new_lo)
        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])


def _trapezoid(f, start, period, n):
    x = start + period * np.arange(n) / n
    fx = np.asarray(f(x))
    if not np.all(np.isfinite(fx)):
        raise NonFinite("integrand is not finite on the periodic grid")
    return period * fx.mean()


def _periodic(f, dom: Periodic, tol, rtol, max_nodes):
    start, period = dom.start, dom.period
    if dom.nodes is not None:
        n = int(dom.nodes)
        full = _trapezoid(f, start, period, n)
        # the odd-indexed half of the grid gives an independent coarse estimate
        half = _trapezoid(f, start, period, n // 2) if n >= 4 else full
        return QuadratureResult(complex(full), float(abs(full - half)), n + n // 2)
    n = 16
    coarse = _trapezoid(f, start, period, n)
    evals = n
    while True:
        n *= 2
        fine = _trapezoid(f, start, period, n)
        evals += n
        err = abs(fine - coarse)
        if err <= max(tol, rtol * abs(fine)):
            return QuadratureResult(complex(fine), float(err), evals)
        if n >= max_nodes:
            raise MaxSubdivisions(f"periodic rule not converged with {n} nodes (error {err:.3g})")
        coarse = fine


def integrate(f: Callable, domain, tol: float = 1e-12, rtol: float = 0.0,
              max_intervals: int = 20000, max_nodes: int = 1 << 16) -> QuadratureResult:
    """Integrate ``f`` over ``domain`` to absolute ``tol`` (or relative ``rtol``).

    Raises MaxSubdivisions when the requested accuracy is not reached.
    """
    if isinstance(domain, Periodic):
        return _periodic(f, domain, tol, rtol, max_nodes)
    a, b = domain.bounds
    return _adaptive(f, a, b, tol, rtol, max_intervals)


def _neville_zero(xs, ys):
    """Diagonal of the Neville table extrapolating ys(xs) to x = 0."""
    n = len(xs)
    table = [list(ys)]
    diag = [ys[0]]
    for k in range(1, n):
        prev = table[-1]
        row = []
        for i in range(n - k):
            # P(0) from points i..i+k
            row.append((xs[i] * prev[i + 1] - xs[i + k] * prev[i]) / (xs[i] - xs[i + k]))
        table.append(row)
        diag.append(row[0])
    return diag


def integrate_regulated(f: Callable, domain, regulator: Regulator = Regulator(),
                        tol: float = 1e-10, rtol: float = 0.0,
                        max_intervals: int = 200000):
    """Extrapolate the damped integrals to zero damping.

    Returns ``(QuadratureResult, values)`` where ``values`` are the damped
    integrals, one per regulator value.  The truncation of ``domain`` is
    shortened for each eps to where the damping falls below 1e-17.
    """
    c = regulator.center
    values = []
    evals = 0
    quad_err = 0.0
    for eps in regulator.epsilons:
        reach = np.sqrt(39.0 / eps)
        lo, hi = domain.bounds
        lo, hi = max(lo, c - reach), min(hi, c + reach)

        def damped(x, eps=eps):
            return f(x) * np.exp(-eps * (x - c) ** 2)

        res = _adaptive(damped, lo, hi, tol, rtol, max_intervals)
        values.append(res.value)
        evals += res.evaluations
        quad_err = max(quad_err, res.error_estimate)
    diag = _neville_zero(list(regulator.epsilons), values)
    steps = [abs(diag[k] - diag[k - 1]) for k in range(1, len(diag))]
    err = steps[-1] + quad_err
    if len(steps) >= 2 and steps[-1] > steps[-2] and steps[-1] > max(tol, rtol * abs(diag[-1])):
        raise ExtrapolationUnstable(
            f"extrapolation steps grow: {steps[-2]:.3g} -> {steps[-1]:.3g}")
    return QuadratureResult(complex(diag[-1]), float(err), evals), values


# --------------------------------------------------------------------------
# stationary phase

def _stationary_points(dF, lo, hi, n=4001):
    xs = np.linspace(lo, hi, n)
    g = np.asarray(dF(xs), dtype=complex)
    ref = g[np.argmax(np.abs(g))]
    if ref == 0:
        raise NoStationaryPoint("phase derivative vanishes identically")
    rot = np.conj(ref) / abs(ref)
    gr = g * rot
    if np.max(np.abs(gr.imag)) > 1e-8 * np.max(np.abs(gr.real)):
        raise NoStationaryPoint("phase derivative is not of constant complex argument")

    def h(x):
        return float((np.asarray(dF(x), dtype=complex) * rot).real)

    roots = list(xs[gr.real == 0])
    for i in np.flatnonzero(np.sign(gr.real[:-1]) * np.sign(gr.real[1:]) < 0):
        roots.append(brentq(h, xs[i], xs[i + 1], xtol=1e-15, rtol=1e-15))
    return sorted(roots)


def stationary_phase_leading(gf, test_fn: Callable, q: float, domain=None) -> complex:
    """Leading stationary-phase value of ``int exp(i F(q,Q)/hbar) test_fn(Q) dQ``.

    ``gf`` supplies ``__call__``, ``dQ`` and ``d2Q``.  Stationary points of
    ``F(q, .)`` in the domain are located numerically; each contributes
    ``sqrt(2 pi hbar i / F_QQ) exp(i F / hbar) test_fn(Q)`` (principal root,
    which reproduces the exp(+-i pi/4) phases for real F_QQ).
    """
    hbar = gf.params.hbar
    a = gf.params.a
    if domain is None:
        domain = InfiniteLine(L=20.0 / a, center=q)
    lo, hi = domain.bounds
    roots = _stationary_points(lambda Q: gf.dQ(q, Q), lo, hi)
    if isinstance(domain, Periodic):
        roots = [r for r in roots if r < hi - 1e-12 * domain.period]
    if not roots:
        raise NoStationaryPoint(f"no stationary point of F({q}, .) in [{lo}, {hi}]")
    total = 0j
    scale = abs(gf.mu) if hasattr(gf, "mu") else 1.0
    for Q in roots:
        fqq = complex(gf.d2Q(q, Q))
        if abs(fqq) < 1e-12 * max(scale, 1.0):
            raise DegenerateHessian(f"F_QQ vanishes at Q = {Q}")
        total += np.sqrt(2j * np.pi * hbar / fqq) * np.exp(1j * complex(gf(q, Q)) / hbar) * test_fn(Q)
    return complex(total)


def exponential_leading(mu, q, test_fn, params) -> complex:
    """sqrt(2 pi) sqrt(4 hbar i / mu) exp(-mu / (4 hbar i a^2)) phi(q)."""
    hbar, a = params.hbar, params.a
    mu = complex(mu)
    return complex(np.sqrt(2 * np.pi) * np.sqrt(4j * hbar / mu)
                   * np.exp(-mu / (4j * hbar * a**2)) * test_fn(q))


def sinusoidal_two_point(mu, q, test_fn, params) -> complex:
    """Two-point leading sum on [0, 2 pi / a] for real mu > 0."""
    hbar, a = params.hbar, params.a
    X = mu / (4 * hbar * a**2)
    sigma = 1.0 if q - np.pi / a >= 0 else -1.0
    amp = np.sqrt(8 * np.pi * hbar / mu)
    return complex(amp * (np.exp(-1j * X + 1j * np.pi / 4) * test_fn(q)
                          + np.exp(1j * X - 1j * np.pi / 4) * test_fn(q - sigma * np.pi / a)))


def sinusoidal_sifting_leading(mu, q, test_fn, parity: int, params) -> complex:
    """2 i^(-p) sqrt(8 pi hbar / mu) cos(X - (p + 1/2) pi / 2) phi(q), X = mu / (4 hbar a^2)."""
    hbar, a = params.hbar, params.a
    X = mu / (4 * hbar * a**2)
    p = int(parity)
    return complex(2 * (1j) ** (-p) * np.sqrt(8 * np.pi * hbar / mu)
                   * np.cos(X - (p + 0.5) * np.pi / 2) * test_fn(q))

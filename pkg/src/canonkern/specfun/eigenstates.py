"""Energy eigenfunctions of the four solvable families in position space."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..phasecore import Family, Params
from .airy import airy_ai
from .bessel import bessel_k_imag
from .mathieu import MathieuSolution, mathieu_eval, mathieu_solution

__all__ = [
    "OscillatorState",
    "LinearState",
    "ExponentialState",
    "SinusoidalState",
    "EigenState",
    "oscillator_functions",
    "oscillator_psi",
    "eigenstate_psi",
    "energy",
    "state_family",
]


@dataclass(frozen=True)
class OscillatorState:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("oscillator level must be a non-negative integer")


@dataclass(frozen=True)
class LinearState:
    E: float


@dataclass(frozen=True)
class ExponentialState:
    """Scattering state with E = hbar^2 k^2 / 2m, k > 0, normalised to delta(k - k')."""

    k: float

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError("exponential states need k > 0")


@dataclass(frozen=True)
class SinusoidalState:
    """Periodic state: s >= 0 selects ce_s, s < 0 selects se_|s|."""

    s: int

    def __post_init__(self):
        if int(self.s) != self.s:
            raise ValueError("Mathieu index must be an integer")

    @property
    def kind(self):
        return "ce" if self.s >= 0 else "se"

    @property
    def order(self):
        return abs(int(self.s))

    def solution(self, params: Params) -> MathieuSolution:
        return mathieu_solution(self.kind, self.order, params.delta)


EigenState = Union[OscillatorState, LinearState, ExponentialState, SinusoidalState]

_FAMILY = {
    OscillatorState: Family.QUADRATIC,
    LinearState: Family.LINEAR,
    ExponentialState: Family.EXPONENTIAL,
    SinusoidalState: Family.SINUSOIDAL,
}


def state_family(state) -> Family:
    return _FAMILY[type(state)]


def oscillator_functions(nmax: int, q, params: Params = Params()):
    """psi_0 .. psi_nmax at q; shape ``q.shape + (nmax + 1,)``.

    Three-term recurrence on the normalised Hermite functions, carried
    with a running exponent so large n and |q| neither overflow nor
    underflow prematurely.
    """
    q = np.asarray(q, dtype=float)
    alpha = np.sqrt(params.m * params.omega / params.hbar)
    xi = alpha * q.ravel()
    out = np.empty((xi.size, nmax + 1))
    logscale = -0.5 * xi**2
    prev = np.zeros_like(xi)
    cur = np.full_like(xi, np.pi**-0.25)
    out[:, 0] = cur * np.exp(logscale)
    for k in range(nmax):
        nxt = np.sqrt(2.0 / (k + 1)) * xi * cur - np.sqrt(k / (k + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > 1e100
        if big.any():
            cur = np.where(big, cur * 1e-100, cur)
            prev = np.where(big, prev * 1e-100, prev)
            logscale = np.where(big, logscale + 100 * np.log(10.0), logscale)
        out[:, k + 1] = cur * np.exp(logscale)
    out *= np.sqrt(alpha)
    return out.reshape(q.shape + (nmax + 1,))


def oscillator_psi(n: int, q, params: Params = Params()):
    """Normalised oscillator eigenfunction psi_n(q)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return oscillator_functions(n, q, params)[..., n]


def energy(state, params: Params = Params()) -> float:
    if isinstance(state, OscillatorState):
        return (state.n + 0.5) * params.hbar * params.omega
    if isinstance(state, LinearState):
        return float(state.E)
    if isinstance(state, ExponentialState):
        return params.hbar**2 * state.k**2 / (2 * params.m)
    if isinstance(state, SinusoidalState):
        sol = state.solution(params)
        return params.hbar**2 * params.a**2 * sol.char_value / (2 * params.m)
    raise TypeError(f"unknown state {state!r}")


def eigenstate_psi(state, q, params: Params = Params(), sol: MathieuSolution | None = None):
    """Position-space eigenfunction; complex ``q`` is accepted for the sinusoidal family."""
    if isinstance(state, OscillatorState):
        return oscillator_functions(state.n, q, params)[..., state.n]
    if isinstance(state, LinearState):
        g = params.gamma
        return g / np.sqrt(params.lam) * airy_ai(g * (np.asarray(q, dtype=float) - state.E / params.lam))
    if isinstance(state, ExponentialState):
        m, hbar, lam, a = params.m, params.hbar, params.lam, params.a
        nu = state.k / a
        y = np.sqrt(m * lam * a) * np.exp(a * np.asarray(q, dtype=float)) / (hbar * a**2)
        norm = np.sqrt(2 * nu * np.sinh(np.pi * nu)) / np.pi
        return norm * bessel_k_imag(nu, y, underflow="zero")
    if isinstance(state, SinusoidalState):
        if sol is None:
            sol = state.solution(params)
        return np.sqrt(params.a / np.pi) * mathieu_eval(sol, params.a * np.asarray(q))
    raise TypeError(f"unknown state {state!r}")

"""Named check groups run by the CLI and the acceptance tests.

Each group takes a flat configuration dict (dotted keys) and returns a
list of :class:`~canonkern.verify.VerificationReport`.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from . import genfun, grouplaw, verify
from .errors import BranchAmbiguity, NoRoot
from .phasecore import TABLE_FAMILIES, TRANSCENDENTAL_FAMILIES, Family, Params, potential
from .quadrature import InfiniteLine, integrate
from .specfun import (
    ExponentialState,
    LinearState,
    OscillatorState,
    SinusoidalState,
    airy_ai,
    bessel_k_imag,
    eigenstate_psi,
    energy,
    mathieu_eval,
    mathieu_solution,
    modified_mathieu_first,
)
from .verify import VerificationReport

# value of K_0(1), 17 significant digits
K0_AT_1 = 0.42102443824070834

DEFAULTS: dict = {
    "seed": 12345,
    "checks": None,
    "params.m": 1.0,
    "params.hbar": 1.0,
    "params.lam": 1.0,
    "params.a": 1.0,
    "suite.invariance.samples": 100,
    "suite.invariance.mu_range": [0.5, 20.0],
    "suite.invariance.qp_range": [-1.0, 1.0],
    "suite.pde.mu": [1.0, 3.0],
    "suite.ho.theta": [0.7853981633974483, 1.5707963267948966, 2.0943951023931953],
    "suite.ho.n_max": 8,
    "suite.ho.parity_eps": [0.05, 0.025, 0.0125],
    "suite.addition.theta": 1.5707963267948966,
    "suite.addition.n_max": 40,
    "suite.addition.mode": "weak",
    "suite.linear.E": 0.0,
    "suite.linear.s": 1.0,
    "suite.linear.nu": [0.3, 0.5],
    "suite.exponential.w": [1.0, 2.0],
    "suite.exponential.k": [0.5, 1.0],
    "suite.exponential.sifting_w": [5.0, 10.0, 20.0],
    "suite.sinusoidal.delta": 0.5,
    "suite.sinusoidal.zeta": [0.3, 0.7],
    "suite.sinusoidal.s": [0, 1, -1, 2],
    "report.timestamp": None,
}

CHECKS = {
    "classical_invariance": "H(Q,P) = H(q,p) and {Q,P} = 1 at seeded random phase points",
    "correction_free": "d2F/dq2 = d2F/dQ2 for every table family",
    "kernel_pde": "exp(iF/hbar) intertwines the Hamiltonian in q and in Q",
    "quadratic_group": "rotation group, oscillator reciprocal eigenvalues and integral equation",
    "addition_theorem": "bilinear oscillator expansion of the quadratic kernel",
    "linear_group": "shear group, momentum-space and Airy integral equations",
    "duality": "interchange of the parameter coordinate with q or Q",
    "exponential": "Bessel identity, integral equation, sifting limit, normalisation symmetry",
    "sinusoidal": "Mathieu integral equation, asymptotics, sifting limit, normalisation symmetry",
    "special_functions": "ODE and Schroedinger residuals of the special functions",
}


def params_of(cfg) -> Params:
    return Params(m=cfg["params.m"], hbar=cfg["params.hbar"], lam=cfg["params.lam"], a=cfg["params.a"])


def _grid(lo, hi, n):
    return np.linspace(lo, hi, n)


# ---------------------------------------------------------------------------

def classical_invariance(cfg):
    p = params_of(cfg)
    rng = np.random.default_rng(cfg["seed"])
    n = int(cfg["suite.invariance.samples"])
    mlo, mhi = cfg["suite.invariance.mu_range"]
    xlo, xhi = cfg["suite.invariance.qp_range"]
    out = []
    for fam in TABLE_FAMILIES:
        dHs, dPBs, rejected = [], [], 0
        while len(dHs) < n:
            mu, q, pp = rng.uniform(mlo, mhi), rng.uniform(xlo, xhi), rng.uniform(xlo, xhi)
            gf = genfun.SplitGeneratingFunction(fam, mu, p)
            try:
                dH, dPB = genfun.invariance_and_symplectic_residuals(gf, (q, pp))
            except (NoRoot, BranchAmbiguity):
                rejected += 1
                if rejected > 50 * n:
                    break
                continue
            dHs.append(dH)
            dPBs.append(dPB)
        notes = {"rejected_samples": rejected}
        out.append(VerificationReport(f"invariance.{fam.value}.energy", dHs, 1e-9, {"samples": n}, notes))
        out.append(VerificationReport(f"invariance.{fam.value}.bracket", dPBs, 1e-5, {"samples": n}, notes))
    return out


def correction_free(cfg):
    p = params_of(cfg)
    g = _grid(-1.5, 1.5, 11)
    qq, QQ = np.meshgrid(g, g)
    out = []
    for fam in TABLE_FAMILIES:
        res = []
        for mu in (0.7, 3.0, 11.0):
            gf = genfun.SplitGeneratingFunction(fam, mu, p)
            res.append(genfun.correction_free_residual(gf, qq, QQ))
        out.append(VerificationReport(f"correction_free.{fam.value}", res, 1e-12, {"mu": [0.7, 3.0, 11.0]}))
    return out


def kernel_pde(cfg):
    p = params_of(cfg)
    g = _grid(-1.0, 1.0, 10)
    out = []
    for fam in TABLE_FAMILIES:
        res = []
        for mu in cfg["suite.pde.mu"]:
            gf = genfun.SplitGeneratingFunction(fam, mu, p)
            res.extend(verify.kernel_pde_residual(gf, q, Q) for q in g for Q in g)
        out.append(VerificationReport(f"kernel_pde.{fam.value}", res, 1e-6, {"mu": list(cfg["suite.pde.mu"])}))
    neg = max(verify.kernel_pde_residual(lambda q, Q: q * Q**3, q, Q, p, Family.QUADRATIC)
              for q in g[::3] for Q in g[::3])
    out[0].notes["negative_control_qQ3"] = neg
    return out


def quadratic_group(cfg):
    p = params_of(cfg)
    out = []
    # rotation decomposition against the generating-function map
    rng = np.random.default_rng(cfg["seed"] + 1)
    res = []
    for theta in np.linspace(0.3, 6.0, 10):
        if abs(theta - np.pi) < 1e-3:
            continue
        gf = genfun.SplitGeneratingFunction(Family.QUADRATIC, grouplaw.mu_from_theta(theta, p), p)
        for q, pp in rng.uniform(-1, 1, size=(5, 2)):
            img = np.array(genfun.transform_point(gf, (q, pp)))
            res.append(float(np.max(np.abs(grouplaw.rotation_decomposition(theta, p) @ [q, pp] - img))))
    out.append(VerificationReport("group.rotation_vs_map", res, 1e-12))
    res = []
    for a, b in [(0.4, 1.1), (2.0, 3.5), (5.0, 4.0)]:
        lhs = grouplaw.rotation_decomposition(a, p) @ grouplaw.rotation_decomposition(b, p)
        res.append(float(np.max(np.abs(lhs - grouplaw.rotation_decomposition(a + b, p)))))
    out.append(VerificationReport("group.rotation_composition", res, 1e-13))
    # functional equation on a 10 x 10 grid
    res = []
    t1s = np.linspace(0.2, 6.0, 10)
    t2s = np.linspace(0.25, 5.9, 10)
    for n in range(int(cfg["suite.ho.n_max"]) + 1):
        for t1 in t1s:
            for t2 in t2s:
                if min(abs(np.sin(t1 + t2)), abs(np.sin(t1)), abs(np.sin(t2))) < 1e-6:
                    continue
                res.append(grouplaw.check_reciprocal_functional_equation(
                    Family.QUADRATIC, t1, t2, OscillatorState(n), p))
    out.append(VerificationReport("group.ho_functional_equation", res, 1e-12))
    # integral equation
    res, phases = [], []
    for theta in cfg["suite.ho.theta"]:
        for n in range(int(cfg["suite.ho.n_max"]) + 1):
            r = verify.check_integral_equation(verify.IntegralEquationCase(Family.QUADRATIC, OscillatorState(n), theta, p))
            res.append(r.sup_residual)
            phases.append(r.notes["residual_phase"])
    out.append(VerificationReport("integral_equation.quadratic", res, 1e-8,
                                  {"theta": list(cfg["suite.ho.theta"]), "n_max": cfg["suite.ho.n_max"]},
                                  {"max_abs_phase": float(np.max(np.abs(phases)))}))
    # parity limit theta -> pi
    eps = list(cfg["suite.ho.parity_eps"])
    qg = _grid(-2.5, 2.5, 11) / np.sqrt(p.m * p.omega / p.hbar)
    mags, rates, raw = [], [], {}
    for n in (0, 2):
        r = [grouplaw.delta_limit_parity(n, e, qg, p) for e in eps]
        raw[f"n{n}"] = r
        mags.append(r[0] * 0.05 / eps[0])
        rates.extend(abs(r[k + 1] / r[k] / (eps[k + 1] / eps[k]) - 1.0) for k in range(len(r) - 1))
    out.append(VerificationReport("group.parity_limit.magnitude", mags, 5e-3, {"eps": eps}, raw))
    out.append(VerificationReport("group.parity_limit.linear_rate", rates, 0.05, {"eps": eps}, raw))
    # operator-level composition
    out.append(verify.check_kernel_composition_ho(0.7, 0.9, [-1.0, 0.0, 0.6], p))
    return out


def addition_theorem(cfg):
    p = params_of(cfg)
    theta = cfg["suite.addition.theta"]
    nmax = int(cfg["suite.addition.n_max"])
    mode = cfg["suite.addition.mode"]
    if mode == "pointwise":
        g = _grid(-1.0, 1.0, 5)
        pairs = np.array([(a, b) for a in g for b in g] + [(0.3, 0.5)])
        return [verify.check_addition_theorem_ho(theta, nmax, pairs, p, mode="pointwise")]
    return [verify.check_addition_theorem_ho(theta, nmax, _grid(-1.5, 1.5, 7), p, mode="weak")]


def linear_group(cfg):
    p = params_of(cfg)
    out = []
    res = []
    for n1, n2 in [(0.3, 0.5), (-0.7, 0.2), (1.3, -1.3), (2.0, 0.25)]:
        s1, s2 = grouplaw.LinearShear(n1, p), grouplaw.LinearShear(n2, p)
        M, b = s1.affine_compose(s2)
        c = s1.compose(s2)
        M2, b2 = s2.affine_compose(s1)
        res.append(float(max(np.max(np.abs(M - c.matrix)), np.max(np.abs(b - c.shift)),
                             np.max(np.abs(M2 - M)), np.max(np.abs(b2 - b)))))
    out.append(VerificationReport("group.linear_shear_composition", res, 1e-14))
    res = []
    for n1, n2 in [(0.5, 0.5), (0.3, 0.9), (-0.4, 1.1)]:
        for E in (0.0, 1.0, -2.0):
            res.append(grouplaw.check_reciprocal_functional_equation(Family.LINEAR, n1, n2, LinearState(E), p))
    out.append(VerificationReport("group.linear_functional_equation", res, 1e-12))
    res = []
    for nu in cfg["suite.linear.nu"]:
        for E in (0.0, 1.0):
            res.extend(verify.check_momentum_space_linear(E, nu, _grid(-3, 3, 13), p).residuals)
    out.append(VerificationReport("momentum_space.linear", res, 1e-12, {"nu": list(cfg["suite.linear.nu"])}))
    nu = cfg["suite.linear.s"] / (p.hbar * p.gamma**2)
    r = verify.check_integral_equation(verify.IntegralEquationCase(Family.LINEAR, LinearState(cfg["suite.linear.E"]), nu, p))
    r.params["s"] = cfg["suite.linear.s"]
    out.append(r)
    return out


def duality(cfg):
    p = params_of(cfg)
    g = _grid(-0.9, 0.9, 5)
    out = []
    for fam in TRANSCENDENTAL_FAMILIES:
        res = [genfun.duality_residual(fam, p, z, q, Q) for z in g for q in g for Q in g]
        out.append(VerificationReport(f"duality.{fam.value}", res, 1e-12))
    return out


def exponential(cfg):
    p = params_of(cfg)
    out = []
    ws, ks = cfg["suite.exponential.w"], cfg["suite.exponential.k"]
    res = []
    for w in ws:
        for k in ks:
            res.extend(verify.exponential_bessel_identity(k / p.a, w, np.geomspace(0.05, 5.0, 9)).residuals)
    out.append(VerificationReport("exponential.bessel_identity", res, 1e-8, {"w": list(ws), "k": list(ks)}))
    res = []
    for w in ws:
        for k in ks:
            res.append(verify.check_integral_equation(
                verify.IntegralEquationCase(Family.EXPONENTIAL, ExponentialState(k), w, p)).sup_residual)
    out.append(VerificationReport("integral_equation.exponential", res, 1e-8, {"w": list(ws), "k": list(ks)}))
    sw = cfg["suite.exponential.sifting_w"]
    phi = lambda x: np.exp(-((np.asarray(x) - 0.2 / p.a) * p.a) ** 2)
    out.append(verify.check_sifting_limit(Family.EXPONENTIAL, [4j * p.hbar * p.a**2 * w for w in sw],
                                          phi, 0.1 / p.a, p, ExponentialState(ks[-1])))
    mus = [4j * p.hbar * p.a**2 * w for w in np.linspace(0.5, 2.0, 7)]
    out.append(verify.check_nrm_symmetry(Family.EXPONENTIAL, mus, p, ExponentialState(ks[-1]), tolerance=1e-9))
    out.append(verify.exponential_real_mu_spotcheck(ks[-1], 3.0, 0.0, p))
    return out


def sinusoidal_params(cfg) -> Params:
    p = params_of(cfg)
    delta = cfg["suite.sinusoidal.delta"]
    return replace(p, lam=4 * delta * p.hbar**2 * p.a**4 / p.m)


def sinusoidal(cfg):
    p = sinusoidal_params(cfg)
    out = []
    res = []
    for s in cfg["suite.sinusoidal.s"]:
        for z in cfg["suite.sinusoidal.zeta"]:
            res.append(verify.check_integral_equation(
                verify.IntegralEquationCase(Family.SINUSOIDAL, SinusoidalState(s), z, p)).sup_residual)
    out.append(VerificationReport("integral_equation.sinusoidal", res, 1e-8,
                                  {"s": list(cfg["suite.sinusoidal.s"]), "zeta": list(cfg["suite.sinusoidal.zeta"]),
                                   "delta": p.delta}))
    unit = 4 * p.hbar * p.a**2
    for s in cfg["suite.sinusoidal.s"]:
        st = SinusoidalState(s)
        par = st.order % 2
        # mu with mu/(4 hbar a^2) - (p + 1/2) pi/2 a multiple of 2 pi
        mus = [unit * (2 * np.pi * k + (par + 0.5) * np.pi / 2) for k in (4, 8, 16)]
        ratios = [verify.mathieu_asymptotic_ratio(st, mu, p) for mu in mus]
        r = np.abs(np.array(ratios) - 1)
        out.append(VerificationReport(f"sinusoidal.asymptotic.s{s}", [float(r[-1])],
                                      float(2 * r[0] * mus[0] / mus[-1]),
                                      {"mu": mus}, {"all_residuals": r.tolist()}))
        phi = (lambda x: np.cos(2 * p.a * np.asarray(x))) if par == 0 else (lambda x: np.cos(p.a * np.asarray(x)))
        rep = verify.check_sifting_limit(Family.SINUSOIDAL, mus, phi, 0.3 / p.a, p, st)
        rep.name = f"sifting.sinusoidal.s{s}"
        out.append(rep)
    mus = [np.sqrt(4 * p.m * p.lam) * np.exp(z) for z in np.linspace(0.2, 0.8, 7)]
    out.append(verify.check_nrm_symmetry(Family.SINUSOIDAL, mus, p, SinusoidalState(0)))
    return out


# ---------------------------------------------------------------------------
# special functions

_W7 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0


def _fd2(f, x, h):
    x = np.asarray(x, dtype=float)
    return sum(w * f(x + (k - 3) * h) for k, w in enumerate(_W7)) / (h * h)


def _fd1(f, x, h):
    x = np.asarray(x, dtype=float)
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def _schroedinger(state, fam, p, grid, h=1e-2):
    psi = lambda x: eigenstate_psi(state, x, p)
    hpsi = -p.hbar**2 / (2 * p.m) * _fd2(psi, grid, h) + potential(fam, p, grid) * psi(grid)
    return float(np.max(np.abs(hpsi - energy(state, p) * psi(grid))) / np.max(np.abs(psi(grid))))


def special_functions(cfg):
    p = params_of(cfg)
    out = []
    x = _grid(-8, 4, 241)
    ai = airy_ai(x)
    out.append(VerificationReport("specfun.airy_ode", [float(np.max(np.abs(_fd2(airy_ai, x, 1e-2) - x * ai)))], 1e-9))
    res = []
    for nu in (0.0, 0.5, 1.0, 2.0):
        f = lambda t, nu=nu: bessel_k_imag(nu, t)
        xs = _grid(0.5, 5.0, 19)
        y = f(xs)
        r = xs**2 * _fd2(f, xs, 1e-2) + xs * _fd1(f, xs, 1e-3) - (xs**2 - nu**2) * y
        res.append(float(np.max(np.abs(r) / np.maximum(np.abs(xs**2 * y) + np.abs(nu**2 * y), 1e-300))))
    out.append(VerificationReport("specfun.bessel_k_ode", res, 1e-8))
    quad = integrate(lambda t: np.exp(-np.cosh(t)), InfiniteLine(L=8.0), tol=1e-15).value.real / 2
    out.append(VerificationReport("specfun.k0_at_1", [abs(bessel_k_imag(0.0, 1.0) - K0_AT_1), abs(quad - K0_AT_1)], 1e-9))
    # Mathieu
    v = _grid(0, 2 * np.pi, 60)
    res = []
    for kind, r in (("ce", 0), ("ce", 1), ("ce", 2), ("se", 1), ("se", 2), ("se", 3)):
        sol = mathieu_solution(kind, r, 0.5)
        f = lambda t, sol=sol: mathieu_eval(sol, t)
        res.append(float(np.max(np.abs(_fd2(f, v, 1e-2) + (sol.char_value - 2 * 0.5 * np.cos(2 * v)) * f(v)))))
    out.append(VerificationReport("specfun.mathieu_ode", res, 1e-8))
    res = []
    for kind, r in (("ce", 0), ("ce", 1), ("se", 1), ("se", 2)):
        sol = mathieu_solution(kind, r, 0.5)
        f = lambda t, sol=sol: modified_mathieu_first(sol, t)
        z = _grid(0.0, 2.0, 21)
        y = f(z)
        res.append(float(np.max(np.abs(_fd2(f, z, 1e-3) - (sol.char_value - 2 * 0.5 * np.cosh(2 * z)) * y))
                         / np.max(np.abs((sol.char_value - 2 * 0.5 * np.cosh(2 * z)) * y))))
    out.append(VerificationReport("specfun.modified_mathieu_ode", res, 1e-6))
    res = []
    s0 = mathieu_solution("ce", 0, 0.0)
    res.append(abs(s0.char_value))
    res.append(float(np.max(np.abs(mathieu_eval(s0, v) - 1 / np.sqrt(2)))))
    s1 = mathieu_solution("se", 1, 0.0)
    res.append(abs(s1.char_value - 1))
    res.append(float(np.max(np.abs(mathieu_eval(s1, v) - np.sin(v)))))
    out.append(VerificationReport("specfun.mathieu_free_limit", res, 1e-15))
    # Schroedinger residuals of the eigenstates
    res = []
    alpha = np.sqrt(p.m * p.omega / p.hbar)
    for n in (0, 3, 8):
        res.append(_schroedinger(OscillatorState(n), Family.QUADRATIC, p, _grid(-6, 6, 61) / alpha))
    for E in (0.0, 1.5):
        res.append(_schroedinger(LinearState(E), Family.LINEAR, p, E / p.lam + _grid(-8, 3, 56) / p.gamma))
    for k in (0.5, 1.0):
        res.append(_schroedinger(ExponentialState(k), Family.EXPONENTIAL, p, _grid(-6, 2, 41) / p.a))
    ps = sinusoidal_params(cfg)
    for s in (0, 1, -1, 2):
        res.append(_schroedinger(SinusoidalState(s), Family.SINUSOIDAL, ps, _grid(0, 2 * np.pi, 41) / ps.a))
    out.append(VerificationReport("specfun.schroedinger", res, 1e-6))
    return out


GROUPS = {
    "classical_invariance": classical_invariance,
    "correction_free": correction_free,
    "kernel_pde": kernel_pde,
    "quadratic_group": quadratic_group,
    "addition_theorem": addition_theorem,
    "linear_group": linear_group,
    "duality": duality,
    "exponential": exponential,
    "sinusoidal": sinusoidal,
    "special_functions": special_functions,
}

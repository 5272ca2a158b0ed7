"""Command-line driver: ``canonkern run | dump | list-checks``."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__, suite
from .errors import CanonKernError, ConfigError
from .genfun import SplitGeneratingFunction, transform_point
from .grouplaw import mu_from_theta
from .phasecore import Family, Params
from .specfun import ExponentialState, LinearState, OscillatorState, SinusoidalState, eigenstate_psi

SCHEMA_VERSION = 1

_LIST_KEYS = {k for k, v in suite.DEFAULTS.items() if isinstance(v, list)}
_INT_KEYS = {"seed", "suite.invariance.samples", "suite.ho.n_max", "suite.addition.n_max"}
_POSITIVE = {"params.m", "params.hbar", "params.lam", "params.a", "suite.invariance.samples",
             "suite.sinusoidal.delta", "suite.linear.s"}


# ---------------------------------------------------------------------------
# configuration

def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        else:
            out[key] = v
    return out


def _is_num(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def validate_config(raw: dict) -> dict:
    """Merge ``raw`` (possibly nested) over the defaults; raise ConfigError on anything odd."""
    flat = _flatten(raw)
    cfg = dict(suite.DEFAULTS)
    tolerances = {}
    for key, val in sorted(flat.items()):
        if key.startswith("tolerance."):
            group = key[len("tolerance."):]
            if group != "all" and group not in suite.GROUPS:
                raise ConfigError(f"{key}: unknown check group {group!r}")
            if not _is_num(val) or not val > 0:
                raise ConfigError(f"{key}: tolerance must be a positive number")
            tolerances[group] = float(val)
            continue
        if key not in suite.DEFAULTS:
            raise ConfigError(f"unknown configuration key {key!r}")
        if key == "checks":
            if not isinstance(val, list) or not all(isinstance(c, str) for c in val):
                raise ConfigError("checks: expected a list of check names")
            bad = [c for c in val if c not in suite.GROUPS]
            if bad:
                raise ConfigError(f"checks: unknown check(s) {bad}")
        elif key == "report.timestamp":
            if not isinstance(val, str):
                raise ConfigError("report.timestamp: expected a string")
        elif key == "suite.addition.mode":
            if val not in ("weak", "pointwise"):
                raise ConfigError("suite.addition.mode: expected 'weak' or 'pointwise'")
        elif key in _LIST_KEYS:
            if not isinstance(val, list) or not val or not all(_is_num(x) for x in val):
                raise ConfigError(f"{key}: expected a non-empty list of numbers")
            if key == "suite.sinusoidal.s" and not all(isinstance(x, int) for x in val):
                raise ConfigError(f"{key}: Mathieu indices must be integers")
        elif key in _INT_KEYS:
            if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                raise ConfigError(f"{key}: expected a non-negative integer")
        elif not _is_num(val):
            raise ConfigError(f"{key}: expected a number")
        if key in _POSITIVE and not val > 0:
            raise ConfigError(f"{key}: must be positive")
        cfg[key] = val
    lo, hi = cfg["suite.invariance.mu_range"] if len(cfg["suite.invariance.mu_range"]) == 2 else (0, -1)
    if not 0 < lo < hi:
        raise ConfigError("suite.invariance.mu_range: expected [lo, hi] with 0 < lo < hi")
    if len(cfg["suite.ho.parity_eps"]) < 2:
        raise ConfigError("suite.ho.parity_eps: need at least two values")
    if any(not 0 < z for z in cfg["suite.exponential.w"] + cfg["suite.exponential.k"]):
        raise ConfigError("suite.exponential: w and k must be positive")
    cfg["tolerances"] = tolerances
    return cfg


def load_config(path) -> dict:
    if path is None:
        return validate_config({})
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return validate_config(raw)


# ---------------------------------------------------------------------------
# report

def _fmt(x):
    """JSON-ready copy with floats as 15-significant-digit strings."""
    if isinstance(x, dict):
        return {str(k): _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_fmt(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return "%.14e" % float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return ["%.14e" % x.real, "%.14e" % x.imag]
    if x is None or isinstance(x, str):
        return x
    return str(x)


def _run_group(args):
    name, cfg = args
    try:
        reports = suite.GROUPS[name](cfg)
    except CanonKernError as exc:
        reports = [suite.VerificationReport(f"{name}.error", [float("inf")], 0.0,
                                            notes={"error": f"{type(exc).__name__}: {exc}"})]
    override = cfg["tolerances"].get(name, cfg["tolerances"].get("all"))
    for r in reports:
        r.notes.setdefault("group", name)
        if override is not None:
            r.tolerance = override
    return [r.to_dict() for r in reports]


def run_suite(cfg: dict, jobs: int = 1, stamp: bool = False):
    """Run the selected groups; return (exit status, report dict)."""
    names = cfg["checks"] or list(suite.GROUPS)
    work = [(n, cfg) for n in names]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_run_group, work))
    else:
        chunks = [_run_group(w) for w in work]
    records = sorted((r for c in chunks for r in c), key=lambda r: r["name"])
    failed = [r["name"] for r in records if r["gating"] and not r["passed"]]
    timestamp = cfg["report.timestamp"]
    if stamp:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    echo = {k: v for k, v in cfg.items() if k != "tolerances"}
    echo.update({f"tolerance.{k}": v for k, v in cfg["tolerances"].items()})
    report = {
        "version": SCHEMA_VERSION,
        "canonkern": __version__,
        "timestamp": timestamp,
        "seed": cfg["seed"],
        "config": _fmt(echo),
        "passed": not failed,
        "failed": failed,
        "reports": [_fmt(r) for r in records],
    }
    return (0 if not failed else 1), report


def report_bytes(report: dict) -> bytes:
    return (json.dumps(report, indent=2, sort_keys=True) + "\n").encode()


# ---------------------------------------------------------------------------
# dumps

def _state_for(family: Family, label: float):
    if family is Family.QUADRATIC:
        return OscillatorState(int(label))
    if family is Family.LINEAR:
        return LinearState(float(label))
    if family is Family.EXPONENTIAL:
        return ExponentialState(float(label) if label else 1.0)
    if family is Family.SINUSOIDAL:
        return SinusoidalState(int(label))
    raise ConfigError(f"no eigenfunctions are implemented for family {family.value!r}")


def dump_rows(kind: str, family: Family, params: Params, grid: int, lo: float, hi: float,
              theta=None, mu=None, state=0.0):
    if grid < 1:
        raise ConfigError("grid must be nonempty")
    xs = np.linspace(lo, hi, grid)
    if kind == "eigenfunction":
        vals = eigenstate_psi(_state_for(family, state), xs, params)
        return ["q", "value"], [(x, v) for x, v in zip(xs, np.real(vals))]
    if mu is None:
        if theta is None:
            raise ConfigError("dump needs --mu (or --theta for the quadratic family)")
        if family is not Family.QUADRATIC:
            raise ConfigError("--theta only applies to the quadratic family")
        mu = mu_from_theta(theta, params)
    gf = SplitGeneratingFunction(family, mu, params)
    if kind == "kernel":
        rows = []
        for q in xs:
            k = np.exp(1j * gf(q, xs) / params.hbar)
            rows.extend((q, Q, v.real, v.imag) for Q, v in zip(xs, k))
        return ["q", "Q", "Re", "Im"], rows
    if kind == "phase-map":
        rows = []
        for q in xs:
            for p in xs:
                try:
                    Q, P = transform_point(gf, (q, p))
                except CanonKernError:
                    continue
                rows.append((q, p, Q, P))
        return ["q", "p", "Q", "P"], rows
    raise ConfigError(f"unknown dump kind {kind!r}")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows([repr(float(v)) for v in r] for r in rows)


# ---------------------------------------------------------------------------

def _parser():
    ap = argparse.ArgumentParser(prog="canonkern", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run verification checks and write a JSON report")
    r.add_argument("--config", help="TOML file with dotted keys")
    r.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    r.add_argument("--out", help="report path (default: standard output)")
    r.add_argument("--stamp", action="store_true", help="record the wall-clock time in the report")
    d = sub.add_parser("dump", help="write kernel, eigenfunction or phase-map samples as CSV")
    d.add_argument("--kind", required=True, choices=["kernel", "eigenfunction", "phase-map"])
    d.add_argument("--family", required=True)
    d.add_argument("--theta", type=float)
    d.add_argument("--mu", type=float)
    d.add_argument("--state", type=float, default=0.0,
                   help="n, E, k or Mathieu index s depending on the family")
    d.add_argument("--grid", type=int, default=50)
    d.add_argument("--range", type=float, nargs=2, default=(-2.0, 2.0), metavar=("LO", "HI"))
    for name in ("m", "hbar", "lam", "a"):
        d.add_argument(f"--{name}", type=float, default=1.0)
    d.add_argument("--out", required=True)
    sub.add_parser("list-checks", help="list check groups")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.cmd == "list-checks":
        for name, desc in suite.CHECKS.items():
            print(f"{name:22s} {desc}")
        return 0
    if args.cmd == "run":
        try:
            cfg = load_config(args.config)
        except ConfigError as exc:
            print(f"canonkern: config error: {exc}", file=sys.stderr)
            return 2
        status, report = run_suite(cfg, jobs=max(1, args.jobs), stamp=args.stamp)
        data = report_bytes(report)
        if args.out:
            try:
                with open(args.out, "wb") as fh:
                    fh.write(data)
            except OSError as exc:
                print(f"canonkern: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
                return 2
        else:
            sys.stdout.buffer.write(data)
        for name in report["failed"]:
            print(f"FAILED {name}", file=sys.stderr)
        return status
    try:
        family = Family.parse(args.family)
        params = Params(m=args.m, hbar=args.hbar, lam=args.lam, a=args.a)
        header, rows = dump_rows(args.kind, family, params, args.grid, *args.range,
                                 theta=args.theta, mu=args.mu, state=args.state)
        write_csv(args.out, header, rows)
    except (ConfigError, CanonKernError, ValueError) as exc:
        print(f"canonkern: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"canonkern: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

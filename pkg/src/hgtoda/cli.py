"""Command-line front end: eval-hgf, tau, laplace-trace and verify.

Every command merges defaults, an optional JSON config file and explicit
flags (in increasing priority), validates the result, runs, and writes a
report as JSON or CSV.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import hgf, laplace, oracles, report, toda, verify
from .chars import AlphaParams, Partition
from .hgf import DomainError, SlicePoint, SliceContour

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


GLOBAL_DEFAULTS = {"format": "json", "out": None, "tol": None, "seed": 7}

COMMAND_DEFAULTS = {
    "eval-hgf": {"preset": "gauss", "a": 0.4, "b": 0.5, "c": 1.7, "points": [0.1, 0.3, 0.5],
                 "partition": None, "alpha": None, "contour": None},
    "tau": {"preset": "gauss", "a": None, "b": None, "c": None, "partition": None, "alpha": None,
            "pair": None, "m_range": [-2, 2], "points": None, "num_points": 3, "A": 1.0},
    "laplace-trace": {"family": "epd", "alpha": 0.37, "beta": -1.21, "u": 0.1, "v": -1.3,
                      "point": [[1.2, 0.1], [-0.5, 0.05]], "n_range": [-3, 3], "base_order": laplace.DEFAULT_BASE_ORDER},
    "verify": {"suite": "all"},
}

DEFAULT_TOL = {"eval-hgf": 1e-8, "tau": 1e-6, "laplace-trace": 1e-9, "verify": None}
TODA_TE_THRESHOLD = 1e-8


# value parsing ------------------------------------------------------------

def parse_complex(v) -> complex:
    if isinstance(v, bool):
        raise ConfigError(f"expected a number, got {v!r}")
    if isinstance(v, (int, float, complex)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        try:
            return complex(v.replace(" ", ""))
        except ValueError:
            pass
    raise ConfigError(f"cannot read {v!r} as a complex number; use a number, \"re+imj\" or [re, im]")


def _split_list(text: str) -> list[str]:
    return [t for t in (s.strip() for s in text.split(",")) if t]


def _coord_groups(text: str) -> list[list[str]]:
    return [_split_list(g) for g in text.split(";") if g.strip()]


def _int_pair(v, name: str) -> list[int]:
    if isinstance(v, str):
        v = _split_list(v)
    try:
        out = [int(x) for x in v]
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be two integers") from None
    if len(out) != 2:
        raise ConfigError(f"{name} must be two integers")
    return out


# config ---------------------------------------------------------------------

def load_config_file(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def merge_config(command: str, file_cfg: dict, flags: dict) -> dict:
    """Defaults, then the config file, then explicit flags."""
    allowed = dict(GLOBAL_DEFAULTS, **COMMAND_DEFAULTS[command])
    cfg = dict(allowed)
    for src in (file_cfg, flags):
        for k, v in src.items():
            if k in ("command", "config"):
                continue
            if k not in allowed:
                raise ConfigError(f"unknown config key {k!r} for {command}")
            cfg[k] = v
    if cfg["format"] not in ("json", "csv"):
        raise ConfigError(f"format must be json or csv, got {cfg['format']!r}")
    if cfg["tol"] is not None:
        tol = float(cfg["tol"])
        if not (math.isfinite(tol) and tol > 0):
            raise ConfigError("tol must be a positive number")
        cfg["tol"] = tol
    cfg["seed"] = int(cfg["seed"])
    return cfg


def _tol(cfg: dict, command: str) -> float:
    return cfg["tol"] if cfg["tol"] is not None else DEFAULT_TOL[command]


def _partition_alpha(cfg: dict) -> tuple[Partition, AlphaParams]:
    lam = cfg["partition"]
    if isinstance(lam, str):
        lam = _split_list(lam)
    try:
        P = Partition([int(b) for b in lam])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid partition: {exc}") from None
    al = cfg["alpha"]
    if al is None:
        raise ConfigError("explicit input needs alpha (one value per coordinate)")
    if isinstance(al, str):
        al = _split_list(al)
    flat = [parse_complex(v) for v in al]
    if len(flat) != P.N:
        raise ConfigError(f"alpha needs {P.N} values for partition {P.blocks}, got {len(flat)}")
    try:
        return P, AlphaParams.from_flat(P, flat)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _slice_points(P: Partition, pts) -> list[SlicePoint]:
    out = []
    for p in pts:
        if not isinstance(p, (list, tuple)):
            raise ConfigError(f"each point needs {P.N} slice coordinates")
        coords = [parse_complex(v) for v in p]
        if len(coords) != P.N:
            raise ConfigError(f"each point needs {P.N} slice coordinates, got {len(coords)}")
        x = SlicePoint(P, coords)
        x.check()
        out.append(x)
    return out


# commands -------------------------------------------------------------------

def cmd_eval_hgf(cfg: dict) -> tuple[list[dict], int]:
    tol = _tol(cfg, "eval-hgf")
    pts = cfg["points"] or []
    rows = []
    if cfg["partition"] is None:
        if isinstance(pts, str):
            pts = _split_list(pts)
        params = {k: parse_complex(cfg[k]) for k in ("a", "b", "c")}
        try:
            pr = hgf.make_preset(cfg["preset"], **params)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        xs = [parse_complex(p) for p in pts]
        cfg.update(points=xs, **params)
        for x in xs:
            pr.check_domain(x)
        for x in xs:
            res = pr.evaluate(x, verify.QUAD_TOL, verify.QUAD_RTOL)
            ref = oracles.preset_reference(pr.name, x, **params)
            row = {"x": x, "value": res.value, "error_estimate": res.abs_error_estimate, "oracle": ref,
                   "oracle_residual": None if ref is None else abs(res.value - ref) / abs(ref),
                   "oracle_threshold": None if ref is None else tol}
            rows.append(row)
    else:
        P, alpha = _partition_alpha(cfg)
        plan = None
        if cfg["contour"] is not None:
            c = cfg["contour"]
            if not isinstance(c, dict) or c.get("kind") not in ("segment", "hankel", "rays"):
                raise ConfigError("contour must be an object with kind segment, hankel or rays")
            plan = SliceContour(c["kind"], c.get("zero_block"), c.get("one_block"), c.get("inf_block"))
        if isinstance(pts, str):
            pts = _coord_groups(pts)
        xs = _slice_points(P, pts)
        cfg.update(preset=None, a=None, b=None, c=None, partition=list(P.blocks), alpha=alpha.flat(),
                   points=[x.coords for x in xs])
        for x in xs:
            res = hgf.hgf_integral_slice(x, alpha, plan, verify.QUAD_TOL, verify.QUAD_RTOL)
            rows.append({"point": x.coords, "value": res.value, "error_estimate": res.abs_error_estimate})
    return rows, EXIT_OK


def cmd_tau(cfg: dict) -> tuple[list[dict], int]:
    tol = _tol(cfg, "tau")
    base = None
    if cfg["partition"] is None:
        name = str(cfg["preset"]).lower()
        defaults = verify.TAU_PRESETS.get(name)
        params = dict(defaults[0]) if defaults else {}
        for k in ("a", "b", "c"):
            if cfg[k] is not None:
                params[k] = parse_complex(cfg[k])
        try:
            pr = hgf.make_preset(name, **params)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        P, alpha = pr.partition, pr.alpha
        cfg.update({k: params.get(k) for k in ("a", "b", "c")})
        if defaults:
            pair, base = defaults[1], defaults[2]
        else:
            pair = None
    else:
        P, alpha = _partition_alpha(cfg)
        pair = None
        cfg["preset"] = None
    if cfg["pair"] is not None:
        pair = _int_pair(cfg["pair"], "pair")
    if pair is None:
        raise ConfigError("this input needs an explicit pair i,j")
    i, j = pair
    if not (0 <= i < P.length and 0 <= j < P.length and i != j):
        raise ConfigError(f"pair must name two distinct blocks in 0..{P.length - 1}")
    lo, hi = sorted(_int_pair(cfg["m_range"], "m_range"))
    cfg.update(pair=[i, j], m_range=[lo, hi], partition=list(P.blocks), alpha=alpha.flat())
    if cfg["points"] is not None:
        pts = cfg["points"]
        xs = _slice_points(P, _coord_groups(pts) if isinstance(pts, str) else pts)
    elif base is not None:
        rng = np.random.default_rng(cfg["seed"])
        xs = _slice_points(P, [verify._perturb(rng, base) for _ in range(int(cfg["num_points"]))])
    else:
        raise ConfigError("this input needs explicit points")
    # the residual at m uses m - 1 and m + 1, so a window of one m carries tau only
    window = (lo - 1, hi + 1) if lo < hi else (lo, hi)
    try:
        seq = toda.TauSequence(P, alpha, i, j, A=parse_complex(cfg["A"]), m_range=window,
                               tol=verify.QUAD_TOL, rtol=verify.QUAD_RTOL)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    rows = []
    for k, x in enumerate(xs):
        for m in range(lo, hi + 1):
            f = seq.factors(m, x)
            row = {"point_index": k, "point": x.coords, "m": m, "tau": f["C_m"] * f["t_m"] * f["g_m"] * f["F"],
                   **f, "thde_residual": None, "thde_threshold": None}
            if lo < hi:
                row["thde_residual"] = toda.thde_residual(seq, m, x)
                row["thde_threshold"] = tol
            rows.append(row)
    return rows, EXIT_OK


def cmd_laplace_trace(cfg: dict) -> tuple[list[dict], int]:
    tol = _tol(cfg, "laplace-trace")
    fam = cfg["family"]
    if fam not in laplace.FAMILIES:
        raise ConfigError(f"family must be one of {', '.join(laplace.FAMILIES)}, got {fam!r}")
    al, be, u, v = (parse_complex(cfg[k]) for k in ("alpha", "beta", "u", "v"))
    pt = cfg["point"]
    if isinstance(pt, str):
        pt = _split_list(pt)
    if not isinstance(pt, (list, tuple)) or len(pt) != 2:
        raise ConfigError("point must hold two coordinates x, y")
    pt = tuple(parse_complex(p) for p in pt)
    lo, hi = sorted(_int_pair(cfg["n_range"], "n_range"))
    cfg.update(alpha=al, beta=be, u=u, v=v, point=list(pt), n_range=[lo, hi])
    M = laplace.family_operator(fam, al, be, u, v)
    N0, _ = laplace.normalize(M)
    try:
        seq = laplace.NormalSeq(N0, range(lo, hi + 1), pt, base_order=int(cfg["base_order"]))
    except laplace.OrderBudgetError as exc:
        raise ConfigError(f"n-range [{lo}, {hi}] rejected: {exc}") from None
    rows = []
    for n in range(lo, hi + 1):
        e = seq[n]
        closed = laplace.family_normal(fam, al, be, n, u, v)
        ae, ce = complex(e.a.value), complex(e.c.value)
        ac, cc = closed.a.value(pt), closed.c.value(pt)
        row = {"n": n, "a_engine": ae, "a_closed": ac, "c_engine": ce, "c_closed": cc,
               "coefficient_residual": max(abs(ae - ac), abs(ce - cc)), "coefficient_threshold": tol,
               "toda_residual": None, "toda_threshold": None}
        if lo < n < hi:
            row["toda_residual"] = laplace.toda_te_residual(seq, n)
            row["toda_threshold"] = TODA_TE_THRESHOLD
        rows.append(row)
    return rows, EXIT_OK


def cmd_verify(cfg: dict) -> tuple[list[dict], int]:
    try:
        names = verify.resolve_suites(str(cfg["suite"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    checks = verify.run_suites(names, cfg["seed"])
    rows = [{"id": c.id, "suite": c.suite, "residual": c.residual, "threshold": c.threshold,
             "passed": c.passed, "detail": c.detail} for c in checks]
    return rows, EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


COMMANDS = {"eval-hgf": cmd_eval_hgf, "tau": cmd_tau, "laplace-trace": cmd_laplace_trace, "verify": cmd_verify}


# argument parsing -----------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser):
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="JSON config file; flags override its values")
    p.add_argument("--out", default=S, help="write the report here instead of stdout")
    p.add_argument("--format", default=S, choices=["json", "csv"])
    p.add_argument("--tol", type=float, default=S, help="pass threshold for the command's main residual")
    p.add_argument("--seed", type=int, default=S, help="seed for random point sampling")


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    parser = argparse.ArgumentParser(prog="hgtoda", description="Hypergeometric integrals, tau sequences "
                                     "and Laplace chains with self-checking reports.")
    _global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-hgf", help="evaluate a preset or an explicit slice integral")
    _global_flags(p)
    p.add_argument("--preset", default=S, choices=list(hgf.PRESET_NAMES))
    for k in ("a", "b", "c"):
        p.add_argument(f"--{k}", default=S)
    p.add_argument("--points", default=S, help="preset: x1,x2,...; explicit: coords;coords;...")
    p.add_argument("--partition", default=S, help="block sizes, e.g. 2,1,1")
    p.add_argument("--alpha", default=S, help="flat exponent list")

    p = sub.add_parser("tau", help="tau sequence with factor breakdown and bilinear residuals")
    _global_flags(p)
    p.add_argument("--preset", default=S, choices=list(hgf.PRESET_NAMES))
    for k in ("a", "b", "c"):
        p.add_argument(f"--{k}", default=S)
    p.add_argument("--partition", default=S)
    p.add_argument("--alpha", default=S)
    p.add_argument("--pair", default=S, help="block indices i,j")
    p.add_argument("--m-range", dest="m_range", default=S, help="lo,hi")
    p.add_argument("--points", default=S, help="slice coordinates per point: coords;coords;...")
    p.add_argument("--num-points", dest="num_points", type=int, default=S)
    p.add_argument("--A", dest="A", default=S, help="free constant of the seed")

    p = sub.add_parser("laplace-trace", help="Laplace sequence of a closed-form family")
    _global_flags(p)
    p.add_argument("--family", default=S, choices=list(laplace.FAMILIES))
    for k in ("alpha", "beta", "u", "v"):
        p.add_argument(f"--{k}", default=S)
    p.add_argument("--point", default=S, help="x,y")
    p.add_argument("--n-range", dest="n_range", default=S, help="lo,hi")
    p.add_argument("--base-order", dest="base_order", type=int, default=S)

    p = sub.add_parser("verify", help="run the verification suites")
    _global_flags(p)
    p.add_argument("--suite", default=S, help=f"all or a comma list of: {', '.join(verify.SUITES)}")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[str, int, dict]:
    """Parse, run and render; returns ``(text, exit_code, config)``."""
    parser = build_parser()
    ns = vars(parser.parse_args(argv))
    command = ns.pop("command")
    file_cfg = load_config_file(ns.get("config"))
    cfg = merge_config(command, file_cfg, ns)
    rows, code = COMMANDS[command](cfg)
    echo = {k: v for k, v in cfg.items() if k != "out"}
    return report.render(report.build(command, echo, rows), cfg["format"]), code, cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        text, code, cfg = run(argv)
    except (ConfigError, DomainError, toda.ResonanceError) as exc:
        print(f"hgtoda: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (laplace.VanishingInvariant, ArithmeticError) as exc:
        print(f"hgtoda: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

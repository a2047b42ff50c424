"""Verification suites: each check measures one residual against a threshold.

Suites draw their random inputs from a generator seeded by the run seed and
the suite name, so a given seed always produces the same checks in the same
order.  A check that raises becomes a failed row carrying the error text.
"""

from __future__ import annotations

import math
import warnings
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import chars, hgf, laplace, oracles, toda
from .chars import AlphaParams, Partition
from .hgf import SlicePoint
from .tjet import Jet, JetShape, jet_lift_point

QUAD_TOL = 1e-13
QUAD_RTOL = 1e-12


@dataclass
class Check:
    id: str
    suite: str
    residual: float
    threshold: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.residual) and self.residual <= self.threshold)


class _Recorder:
    def __init__(self, suite: str):
        self.suite = suite
        self.checks: list[Check] = []

    def add(self, cid: str, threshold: float, fn: Callable[[], float], **detail):
        try:
            res = float(fn())
        except Exception as exc:  # failures are report rows
            res = math.inf
            detail = dict(detail, error=f"{type(exc).__name__}: {exc}")
        self.checks.append(Check(f"{self.suite}/{cid}", self.suite, res, threshold, detail))


def _rng(seed: int, suite: str) -> np.random.Generator:
    return np.random.default_rng([int(seed), zlib.crc32(suite.encode())])


def _crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# jets -------------------------------------------------------------------

def _random_jet(rng, num_vars: int, order: int) -> Jet:
    shape = JetShape(num_vars, order)
    from .tjet import multi_indices

    degs = np.array([sum(m) for m in multi_indices(num_vars, order)])
    c = _crandn(rng, shape.size) * 0.4 ** degs
    c[0] = 1.2 + 0.5 * rng.random() + 0.3j * rng.random()
    return Jet(shape, c)


def _scaled_diff(a: Jet, b: Jet) -> float:
    scale = max(1.0, float(np.max(np.abs(a.coeffs))), float(np.max(np.abs(b.coeffs))))
    return float(np.max(np.abs(a.coeffs - b.coeffs))) / scale


def _jet_identities(rng, num_vars: int, order: int, trials: int) -> dict[str, float]:
    worst = {"ring": 0.0, "inverse": 0.0, "transcendental": 0.0}
    for _ in range(trials):
        a, b, c = (_random_jet(rng, num_vars, order) for _ in range(3))
        one = Jet.constant(1.0, a.shape)
        ring = max(_scaled_diff(a * b, b * a), _scaled_diff((a * b) * c, a * (b * c)),
                   _scaled_diff(a * (b + c), a * b + a * c), _scaled_diff((a - b) + b, a))
        inv = max(_scaled_diff(a * a.reciprocal(), one), _scaled_diff((a / b) * b, a), _scaled_diff(a / a, one))
        mu = complex(rng.uniform(-1.5, 1.5), rng.uniform(-0.5, 0.5))
        small = a - a.value + 0.3
        trans = max(_scaled_diff(a.log().exp(), a), _scaled_diff(small.exp().log(), small),
                    _scaled_diff(a.power(mu) * a.power(-mu), one), _scaled_diff(a ** 3, a * a * a))
        worst["ring"] = max(worst["ring"], ring)
        worst["inverse"] = max(worst["inverse"], inv)
        worst["transcendental"] = max(worst["transcendental"], trans)
    return worst


def _fd_check(rng, num_vars: int) -> float:
    w = rng.uniform(-0.6, 0.6, num_vars)
    p = rng.uniform(-0.5, 0.5, num_vars)

    def f(X):
        lin = sum(wk * Xk for wk, Xk in zip(w, X))
        quad_ = sum(Xk * Xk for Xk in X)
        return (lin * 1j).exp() * (quad_ + 1.5).power(0.5) + (X[0] * X[-1] + 2.0).log()

    J = f(jet_lift_point(list(p), 2))
    h = 1e-4
    worst = 0.0

    def fv(q):
        return complex(f(jet_lift_point([complex(v) for v in q], 0)).value)

    for i in range(num_vars):
        e = np.zeros(num_vars)
        e[i] = h
        fd = (fv(p + e) - fv(p - e)) / (2 * h)
        m = [0] * num_vars
        m[i] = 1
        worst = max(worst, abs(fd - complex(J.partial(m))) / max(1.0, abs(fd)))
    for i in range(num_vars):
        for j in range(i + 1, num_vars):
            ei, ej = np.zeros(num_vars), np.zeros(num_vars)
            ei[i], ej[j] = h, h
            fd = (fv(p + ei + ej) - fv(p + ei - ej) - fv(p - ei + ej) + fv(p - ei - ej)) / (4 * h * h)
            m = [0] * num_vars
            m[i] += 1
            m[j] += 1
            worst = max(worst, abs(fd - complex(J.partial(m))) / max(1.0, abs(fd)))
    return worst


def suite_jets(seed: int) -> list[Check]:
    rec = _Recorder("jets")
    for nv, order in ((2, 12), (6, 2)):
        rng = _rng(seed, f"jets-{nv}-{order}")
        worst = _jet_identities(rng, nv, order, 100)
        for name, val in worst.items():
            rec.add(f"{name}/{nv}v-order{order}", 1e-12, lambda v=val: v, jets=100)
        rec.add(f"finite-difference/{nv}v", 1e-6, lambda r=rng, n=nv: _fd_check(r, n))
    return rec.checks


# series and characters --------------------------------------------------

def suite_series(seed: int) -> list[Check]:
    rec = _Recorder("series")
    rng = _rng(seed, "series")
    n = 9

    def duality():
        worst = 0.0
        for _ in range(100):
            h = list(_crandn(rng, n) * 0.5)
            h[0] = complex(1.0 + rng.random(), rng.uniform(-0.5, 0.5))
            back = chars.series_exp(chars.theta_coeffs(h))
            worst = max(worst, max(abs(x - y) for x, y in zip(back, h)) / max(1.0, max(abs(v) for v in h)))
        return worst

    def inverse():
        worst = 0.0
        for _ in range(100):
            y = list(_crandn(rng, n) * 0.5)
            y[0] = complex(1.0 + rng.random(), rng.uniform(-0.5, 0.5))
            prod = chars.series_mul(chars.psi_coeffs(y), y)
            worst = max(worst, abs(prod[0] - 1), max(abs(v) for v in prod[1:]))
        return worst

    def homomorphism():
        worst = 0.0
        for lam, flat in (((2, 1, 1), [-1.3, 0.7, 0.4, -1.1]), ((3, 1), [-0.6, 0.3, 1.0, -1.4]),
                          ((4,), [-2.0, 0.5, 0.2, -1.0]), ((2, 2), [0.7, 1.0, -2.7, 1.0])):
            P = Partition(lam)
            al = AlphaParams.from_flat(P, flat)
            for _ in range(10):
                def near():
                    out = []
                    for nb in lam:
                        blk = list(0.15 * _crandn(rng, nb))
                        blk[0] += 1.0
                        out.append(blk)
                    return out

                h1, h2 = near(), near()
                prod = [chars.jordan_mul(a, b) for a, b in zip(h1, h2)]
                lhs = chars.char_eval(prod, al)
                rhs = chars.char_eval(h1, al) * chars.char_eval(h2, al)
                worst = max(worst, abs(lhs - rhs) / abs(rhs))
        return worst

    rec.add("theta-exp-duality/order8", 1e-12, duality, inputs=100)
    rec.add("psi-inverse/order8", 1e-12, inverse, inputs=100)
    rec.add("character-homomorphism", 1e-10, homomorphism)
    return rec.checks


# classical oracles ------------------------------------------------------

def suite_oracles(seed: int) -> list[Check]:
    rec = _Recorder("oracles")
    rng = _rng(seed, "oracles")
    par = {"a": 0.4, "b": 0.5, "c": 1.7}
    pts = {
        "gauss": [complex(r * math.cos(t), r * math.sin(t))
                  for r, t in zip(rng.uniform(0.1, 0.8, 5), rng.uniform(-math.pi, math.pi, 5))],
        "kummer": [complex(u, v) for u, v in zip(rng.uniform(0.2, 2.8, 5), rng.uniform(-0.5, 0.5, 5))],
        "bessel": [complex(u, v) for u, v in zip(rng.uniform(0.2, 2.8, 3), rng.uniform(-0.5, 0.5, 3))],
        "airy": [complex(u) for u in rng.uniform(0.6, 2.9, 3)],
    }
    for name, xs in pts.items():
        pr = hgf.make_preset(name, **par)
        for k, x in enumerate(xs):
            def rel(pr=pr, x=x, name=name):
                v = pr.evaluate(x, QUAD_TOL, QUAD_RTOL).value
                ref = oracles.preset_reference(name, x, **par)
                return abs(v - ref) / abs(ref)

            rec.add(f"{name}/point{k}", 1e-8, rel, x=[x.real, x.imag])
    return rec.checks


# covariance and contiguity ----------------------------------------------

_PRESET_POINTS = {"gauss": 0.35 + 0.1j, "kummer": 1.3 + 0.2j, "bessel": 1.1 + 0.2j, "hermite": 0.9 + 0.1j,
                  "airy": 1.4}


def _near_identity(rng, partition: Partition, scale: float = 0.1) -> list[list[complex]]:
    out = []
    for nb in partition.blocks:
        blk = list(scale * _crandn(rng, nb))
        blk[0] += 1.0
        out.append(blk)
    return out


def suite_covariance(seed: int) -> list[Check]:
    rec = _Recorder("covariance")
    rng = _rng(seed, "covariance")
    for name in hgf.PRESET_NAMES:
        pr = hgf.make_preset(name)
        z = pr.matrix(_PRESET_POINTS[name])
        for k in range(10):
            h = _near_identity(rng, pr.partition)
            rec.add(f"{name}/h{k}", 1e-8,
                    lambda z=z, h=h, pr=pr: hgf.covariance_residual(z, h, pr.alpha, pr.contour, QUAD_TOL, QUAD_RTOL))
    return rec.checks


CONTIGUITY_CASES = {
    (1, 1, 1, 1): ([1.3, 1.4, -2.2, -2.5], [2.5, 0.0, -1.0, -3.2]),
    (2, 1, 1): ([-4.7, 0.7, 1.3, 1.4], [2.5, 0.6, 0.0, -1.0]),
    (2, 2): ([-2.6, 0.7, 0.6, 1.1], [1.0, 0.8, -0.5, 0.6]),
}


def suite_contiguity(seed: int) -> list[Check]:
    rec = _Recorder("contiguity")
    for lam, (flat, pt) in CONTIGUITY_CASES.items():
        P = Partition(lam)
        al = AlphaParams.from_flat(P, flat)
        x = SlicePoint(P, pt)
        for i in range(P.length):
            for j in range(P.length):
                if i != j:
                    rec.add(f"{''.join(map(str, lam))}/{i}-{j}", 1e-6,
                            lambda al=al, x=x, i=i, j=j: hgf.contiguity_residual(x, al, i, j, None, QUAD_TOL,
                                                                                 QUAD_RTOL))
    return rec.checks


# reduced systems ---------------------------------------------------------

REDUCED_PRESETS = {"kummer": [2.5, 0.6, 0.0, -1.0], "bessel": [1.0, 0.8, -0.5, 0.6], "hermite": [1.0, 0.8, 0.3, -0.5]}


def _trig_test_fn(rng, n: int, terms: int = 3):
    ws = [rng.uniform(-1.2, 1.2, n) for _ in range(terms)]
    cs = list(_crandn(rng, terms))
    shift = rng.uniform(-0.5, 0.5, n)

    def f(X):
        out = Jet.constant(0.0, X[0].shape)
        for w, c in zip(ws, cs):
            out = out + c * (1j * sum(wk * (Xk + sk) for wk, Xk, sk in zip(w, X, shift))).exp()
        return out

    return f


def suite_reduced(seed: int) -> list[Check]:
    rec = _Recorder("reduced")
    rng = _rng(seed, "reduced")
    g = ((1.1, 0.2), (0.3, (1 + 0.2 * 0.3) / 1.1))
    for name, pt in REDUCED_PRESETS.items():
        pr = hgf.make_preset(name)
        x = SlicePoint(pr.partition, pt)
        ops = laplace.reduced_system(pr.partition.blocks, pr.alpha.flat())
        F = hgf.hgf_integral_slice(x.lifted([0, 1, 2, 3], 2), pr.alpha, None, QUAD_TOL, QUAD_RTOL).value
        y, cof = hgf.sl2_slice_act(g, x.lifted([0, 1, 2, 3], 2), pr.alpha)
        G = hgf.hgf_integral_slice(y, pr.alpha, None, QUAD_TOL, QUAD_RTOL).value * cof
        for key, op in ops.items():
            rec.add(f"{name}/M{key[0]}{key[1]}", 1e-6, lambda op=op, F=F, pt=pt: toda.scaled_residual(op, F, pt))
            rec.add(f"{name}/sl2-M{key[0]}{key[1]}", 1e-6, lambda op=op, G=G, pt=pt: toda.scaled_residual(op, G, pt))
    for kind, alpha in (("ideal_211", [-1.3, 0.4, 0.7, -1.4]), ("ideal_22", [-1.3, 0.4, 0.7, -1.8]),
                        ("ideal_31", [-1.3, 0.4, 0.7, -1.4])):
        for idx, label in enumerate(laplace.identity_labels(kind)):
            def worst(kind=kind, alpha=alpha, idx=idx):
                out = 0.0
                for _ in range(20):
                    pt = list(rng.uniform(-1, 1, 4) + 0.3j * rng.uniform(-1, 1, 4))
                    out = max(out, laplace.operator_identity_check(kind, _trig_test_fn(rng, 4), pt, alpha=alpha,
                                                                   which=idx))
                return out

            rec.add(f"{kind}/{idx}", 1e-9, worst, identity=label, test_functions=20)
    for lam, blocks in (((1, 1, 1, 1), [[-1.3], [0.4], [0.7], [-1.8]]), ((2, 1, 1), [[-1.3, 0.4], [0.7], [-1.4]]),
                        ((2, 2), [[-1.3, 0.4], [0.7, -1.8]]), ((3, 1), [[-0.6, 0.3, 1.0], [-1.4]])):
        L = len(lam)
        for i in range(L):
            for j in range(L):
                if i == j:
                    continue

                def worst(lam=lam, blocks=blocks, i=i, j=j):
                    out = 0.0
                    for _ in range(20):
                        pt = list(rng.uniform(-1, 1, 4) + 0.3j * rng.uniform(-1, 1, 4))
                        out = max(out, laplace.operator_identity_check("redu4", _trig_test_fn(rng, 4), pt,
                                                                       alpha=blocks, partition=lam, pair=(i, j)))
                    return out

                rec.add(f"redu4/{''.join(map(str, lam))}/{i}-{j}", 1e-9, worst, test_functions=20)
    return rec.checks


# Laplace engine ---------------------------------------------------------

FAMILY_PARAMS = {"epd": (0.37, -1.21), "confluent": (0.37, -1.21), "doubly-confluent": (0.62, 0.83)}


def _family_point(rng) -> tuple[complex, complex, complex, complex]:
    x = complex(rng.uniform(0.8, 1.6), rng.uniform(-0.3, 0.3))
    y = complex(rng.uniform(-0.8, -0.2), rng.uniform(-0.3, 0.3))
    u = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
    v = complex(rng.uniform(-1.6, -1.0), rng.uniform(-0.3, 0.3))
    return x, y, u, v


def coefficient_residual(entry, closed: laplace.HyperOp, point, order: int = 2) -> float:
    K = min(order, entry.a.order)
    return max(_scaled_diff(entry.a.truncate(K), closed.a.jet(point, K)),
               _scaled_diff(entry.c.truncate(K), closed.c.jet(point, K)))


def _generic_operator(rng) -> laplace.HyperOp:
    w = rng.uniform(-0.5, 0.5, 9)
    a = laplace.ScalarField.from_expr(lambda X, Y: 0.8 + w[0] * X * Y + w[1] * (w[2] * X + Y).exp())
    b = laplace.ScalarField.from_expr(lambda X, Y: -0.6 + w[3] * X + w[4] * (X * Y * w[5]).exp())
    c = laplace.ScalarField.from_expr(lambda X, Y: 1.1 + w[6] * Y * Y + w[7] * (X + w[8] * Y).exp())
    return laplace.HyperOp(a, b, c)


def _invariant_relations(M: laplace.HyperOp, point) -> float:
    K = 2
    h, k = laplace.invariants(M, point, K + 2)
    up = laplace.laplace_up(M)
    hp, kp = laplace.invariants(up, point, K)
    lhs = (2 * h - k).truncate(K) - h.log().diff(0).diff(1).truncate(K)
    r1 = max(np.max(np.abs((hp - lhs.truncate(K)).coeffs)), np.max(np.abs((kp - h.truncate(K)).coeffs)))
    down = laplace.laplace_down(M)
    hm, km = laplace.invariants(down, point, K)
    rhs = (2 * k - h).truncate(K) - k.log().diff(0).diff(1).truncate(K)
    r2 = max(np.max(np.abs((hm - k.truncate(K)).coeffs)), np.max(np.abs((km - rhs.truncate(K)).coeffs)))
    return float(max(r1, r2))


def suite_laplace(seed: int) -> list[Check]:
    rec = _Recorder("laplace")
    rng = _rng(seed, "laplace")
    for fam, (al, be) in FAMILY_PARAMS.items():
        for k in range(5):
            x, y, u, v = _family_point(rng)
            pt = (x, y)
            M = laplace.family_operator(fam, al, be, u, v)
            N0, _ = laplace.normalize(M)
            seq = laplace.NormalSeq(N0, range(-3, 4), pt)
            for m in range(-3, 4):
                rec.add(f"{fam}/p{k}/closed-form/m{m:+d}", 1e-9,
                        lambda seq=seq, m=m, fam=fam, u=u, v=v, pt=pt: coefficient_residual(
                            seq[m], laplace.family_normal(fam, al, be, m, u, v), pt))
            rec.add(f"{fam}/p{k}/toda", 1e-8,
                    lambda seq=seq: max(max(laplace.toda_te_residual(seq, n), laplace.toda_pair_residual(seq, n))
                                        for n in range(-2, 3)))
    for k in range(5):
        M = _generic_operator(rng)
        pt = (complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.2, 0.2)),
              complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.2, 0.2)))
        rec.add(f"generic/p{k}/invariant-recurrences", 1e-9, lambda M=M, pt=pt: _invariant_relations(M, pt))
        f = _trig_test_fn(rng, 2)
        rec.add(f"generic/p{k}/factorization", 1e-10,
                lambda M=M, pt=pt, f=f: laplace.factorization_residual(M, f(jet_lift_point(list(pt), 4)), pt))
    return rec.checks


# seeds and tau -----------------------------------------------------------

SEED_CASES = {
    "Case11": ((1, 1, 1, 1), [-0.8, -0.6, -0.1, -0.5], (2, 3), [0.0, 1.0, 2.3, -1.4]),
    "Case1N": ((2, 1, 1), [-6.4, 1.0, 2.3, 2.1], (1, 0), [2.5, 0.6, 0.0, -1.0]),
    "CaseNN": ((2, 2), [0.7, 1.0, -2.7, 1.0], (0, 1), [1.0, 0.8, -0.5, 0.6]),
}

TAU_PRESETS = {
    "gauss": ({"a": 0.4, "b": 0.5, "c": 1.3}, (2, 3), [0.0, 1.0, 2.3, -1.4]),
    "kummer": ({"a": 3.3, "c": 6.4}, (1, 0), [2.5, 0.6, 0.0, -1.0]),
    "bessel": ({"c": 1.7}, (0, 1), [1.0, 0.8, -0.5, 0.6]),
}


def _perturb(rng, pt, scale=0.15):
    return [complex(v) + complex(rng.uniform(-scale, scale), rng.uniform(-scale / 3, scale / 3)) for v in pt]


def suite_seeds(seed: int) -> list[Check]:
    rec = _Recorder("seeds")
    rng = _rng(seed, "seeds")
    conv = toda.seed_conventions()
    for name, (lam, flat, (i, j), base) in SEED_CASES.items():
        P = Partition(lam)
        case = toda.classify(P, i, j)
        a, b = toda.seed_parameters(case, AlphaParams.from_flat(P, flat))
        s = toda.SeedSolution(case, a, b, A=1.3)
        for k in range(5):
            pt = _perturb(rng, base, 0.3)
            rec.add(f"{name}/p{k}", 1e-9,
                    lambda s=s, pt=pt: max(toda.seed_thde_residual(s, m, pt) for m in range(-3, 4)),
                    exponent=conv[name]["exponent"], sign=conv[name]["sign"])
    return rec.checks


def suite_tau(seed: int) -> list[Check]:
    rec = _Recorder("tau")
    rng = _rng(seed, "tau")
    for name, (params, (i, j), base) in TAU_PRESETS.items():
        pr = hgf.make_preset(name, **params)
        seq = toda.TauSequence(pr.partition, pr.alpha, i, j, m_range=(-3, 3), tol=QUAD_TOL, rtol=QUAD_RTOL)
        for k in range(3):
            x = SlicePoint(pr.partition, _perturb(rng, base))
            for m in range(-2, 3):
                rec.add(f"{name}/p{k}/thde/m{m:+d}", 1e-6, lambda seq=seq, m=m, x=x: toda.thde_residual(seq, m, x))
            for m in range(-2, 2):
                rec.add(f"{name}/p{k}/roundtrip/m{m:+d}", 1e-6,
                        lambda seq=seq, m=m, x=x: toda.backlund_roundtrip(seq, m, x))
            rec.add(f"{name}/p{k}/chain", 1e-6,
                    lambda seq=seq, x=x: max(toda.chain_mechanism_residual(seq, m, x) for m in range(-2, 3)))
            rec.add(f"{name}/p{k}/reduced-hyperbolic", 1e-6,
                    lambda seq=seq, x=x: max(toda.reduced_hyperbolic_residual(seq, m, x) for m in range(-2, 3)))
    return rec.checks


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "jets": suite_jets,
    "series": suite_series,
    "oracles": suite_oracles,
    "covariance": suite_covariance,
    "contiguity": suite_contiguity,
    "reduced": suite_reduced,
    "laplace": suite_laplace,
    "seeds": suite_seeds,
    "tau": suite_tau,
}


def resolve_suites(selection: str) -> list[str]:
    names = [s.strip() for s in selection.split(",") if s.strip()]
    if not names:
        raise ValueError("no suite selected")
    if names == ["all"]:
        return list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choose from all, {', '.join(SUITES)}")
    return names


def run_suites(names: list[str], seed: int) -> list[Check]:
    out: list[Check] = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in names:
            out.extend(SUITES[name](seed))
    return sorted(out, key=lambda c: c.id)

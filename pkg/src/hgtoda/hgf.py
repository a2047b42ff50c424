"""Hypergeometric integrals of Jordan-group characters on 2 x N matrices and on the slice.

The integrand at a matrix ``z`` is ``chi((1, s) z; alpha)``: block ``j`` of the
row vector ``(1, s) z`` is read as a Jordan element and fed to the character.

Slice evaluation first moves the integration variable by a Mobius map that
sends the singular points chosen as contour anchors to ``0``, ``1`` or
``infinity``.  The map depends on the slice coordinates, so when those are
jets the contour follows the singular points and derivatives can be taken
under the integral sign without boundary terms.  Because the ``alpha_0`` sum
is -2, the map only contributes the constant factor ``det g``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import quad, tjet
from .chars import AlphaParams, JordanElement, Partition, block_log_char, char_eval, char_eval_jet, psi_coeffs
from .chars import series_inverse, series_mul
from .tjet import Jet, JetShape

GUARD_DISTANCE = 1e-3


class DomainError(ValueError):
    pass


def _is_zero(v) -> bool:
    if isinstance(v, Jet):
        return not np.any(v.coeffs)
    return v == 0


def _val(v) -> complex:
    return complex(tjet.value_of(v))


@dataclass
class MatrixPoint:
    partition: Partition
    row0: list
    row1: list

    def __post_init__(self):
        if len(self.row0) != self.partition.N or len(self.row1) != self.partition.N:
            raise ValueError(f"matrix rows must have {self.partition.N} entries")

    def blocks(self) -> list[tuple[list, list]]:
        return list(zip(self.partition.split(self.row0), self.partition.split(self.row1)))

    def generic_violations(self, eps: float = 1e-14) -> list[str]:
        out = []
        bl = self.blocks()
        for i, (r0, r1) in enumerate(bl):
            if len(r0) >= 2 and abs(_val(r0[0]) * _val(r1[1]) - _val(r0[1]) * _val(r1[0])) <= eps:
                out.append(f"det(z0^({i}), z1^({i})) = 0")
            for j in range(i + 1, len(bl)):
                a0, b0 = bl[j][0][0], bl[j][1][0]
                if abs(_val(r0[0]) * _val(b0) - _val(a0) * _val(r1[0])) <= eps:
                    out.append(f"det(z0^({i}), z0^({j})) = 0")
        return out

    def in_generic_stratum(self) -> bool:
        return not self.generic_violations()

    def times_h(self, h: Sequence) -> "MatrixPoint":
        """Right action of the block group: each row is multiplied as a series."""
        r0, r1 = [], []
        for (a, b), hb in zip(self.blocks(), h):
            coeffs = hb.coeffs if isinstance(hb, JordanElement) else list(hb)
            r0.extend(series_mul(a, coeffs))
            r1.extend(series_mul(b, coeffs))
        return MatrixPoint(self.partition, r0, r1)


@dataclass
class SlicePoint:
    """Point of the slice: block ``j`` has rows ``(x_0 .. x_{n-1})`` and ``(1, 0, .., 0)``."""

    partition: Partition
    coords: list

    def __post_init__(self):
        if len(self.coords) != self.partition.N:
            raise ValueError(f"slice point needs {self.partition.N} coordinates")

    def blocks(self) -> list[list]:
        return self.partition.split(self.coords)

    def violations(self, eps: float = 1e-14) -> list[str]:
        out = []
        bl = self.blocks()
        for i, b in enumerate(bl):
            if len(b) >= 2 and abs(_val(b[1])) <= eps:
                out.append(f"x_1^({i}) = 0")
            for j in range(i + 1, len(bl)):
                if abs(_val(b[0]) - _val(bl[j][0])) <= eps:
                    out.append(f"x_0^({i}) = x_0^({j})")
        return out

    def check(self):
        bad = self.violations()
        if bad:
            raise DomainError("slice point off the generic stratum: " + ", ".join(bad))

    def to_matrix(self) -> MatrixPoint:
        row1 = []
        for n in self.partition.blocks:
            row1.extend([1.0] + [0.0] * (n - 1))
        return MatrixPoint(self.partition, list(self.coords), row1)

    def index(self, block: int, k: int) -> int:
        return self.partition.offsets()[block] + k

    def lifted(self, var_coords: Sequence[int], order: int) -> "SlicePoint":
        shape = JetShape(max(1, len(var_coords)), order)
        coords = [Jet.constant(_val(c), shape) for c in self.coords]
        for v, ci in enumerate(var_coords):
            coords[ci] = Jet.variable(_val(self.coords[ci]), v, shape)
        return SlicePoint(self.partition, coords)


# integrand --------------------------------------------------------------

def _block_terms(A: list, B: list, alpha_block, nodes: quad.Nodes, contour):
    """log chi_n of the block ``A + s B`` at the nodes."""
    n = len(A)
    if isinstance(contour, quad.Segment):
        a, b = complex(contour.a), complex(contour.b)
        Ea = [A[k] + B[k] * a for k in range(n)]
        Eb = [A[k] + B[k] * b for k in range(n)]
        h = [Ea[k] * nodes.tc + Eb[k] * nodes.t for k in range(n)]
        if _is_zero(Ea[0]):
            h[0] = Eb[0] * nodes.t
            lg0 = tjet.log(Eb[0]) + np.log(nodes.t)
        elif _is_zero(Eb[0]):
            h[0] = Ea[0] * nodes.tc
            lg0 = tjet.log(Ea[0]) + np.log(nodes.tc)
        else:
            ratio = Eb[0] / Ea[0]
            lg0 = tjet.log(Ea[0]) + tjet.log(nodes.tc + ratio * nodes.t)
        return block_log_char(h, alpha_block, lg0)
    s = nodes.s
    c = complex(getattr(contour, "center", 0.0))
    h = [A[k] + B[k] * s for k in range(n)]
    E = A[0] + B[0] * c
    if nodes.logw is not None and _is_zero(E) and not _is_zero(B[0]):
        h[0] = B[0] * (s - c)
        lg0 = tjet.log(B[0]) + nodes.logw
    else:
        v = np.asarray(tjet.value_of(h[0]))
        if v.ndim and v.size > 1:
            crossing = (v.real[:-1] < 0) & (v.real[1:] < 0) & (np.sign(v.imag[:-1]) * np.sign(v.imag[1:]) < 0)
            if np.any(crossing):
                raise DomainError("the contour crosses the branch cut of an unpinned block")
        lg0 = None
    return block_log_char(h, alpha_block, lg0)


def _make_integrand(blocks: list[tuple[list, list]], alpha: AlphaParams, contour):
    def g(nodes: quad.Nodes):
        total = 0
        for (A, B), a in zip(blocks, alpha.blocks):
            total = total + _block_terms(A, B, a, nodes, contour)
        return tjet.exp(total) * nodes.ds

    return g


def _check_guard(blocks, contour, guard: float):
    """Reject contours that pass near an unpinned finite singular point."""
    pieces = quad._pieces(contour, getattr(contour, "truncation_radius", None) or quad._OPEN_DEFAULT_RADIUS)
    t = np.linspace(0.0, 1.0, 801)
    pts = np.concatenate([pc.nodes(t, 1.0 - t).s for pc in pieces])
    for j, (A, B) in enumerate(blocks):
        a0, b0 = _val(A[0]), _val(B[0])
        if b0 == 0:
            continue
        sing = -a0 / b0
        d = np.min(np.abs(pts - sing))
        if d < guard:
            pinned = False
            if isinstance(contour, quad.Segment):
                pinned = _is_zero(A[0] + B[0] * complex(contour.a)) or _is_zero(A[0] + B[0] * complex(contour.b))
            else:
                pinned = _is_zero(A[0] + B[0] * complex(getattr(contour, "center", 0.0)))
            if not pinned:
                raise DomainError(f"contour passes within {d:.2e} of the singular point of block {j}")


@dataclass
class HGFResult:
    value: object  # complex or Jet
    abs_error_estimate: float
    evaluations: int
    endpoint_decay: float


def _integrate_blocks(blocks, alpha: AlphaParams, contour, tol: float, rtol: float, guard: float) -> HGFResult:
    _check_guard(blocks, contour, guard)
    g = _make_integrand(blocks, alpha, contour)
    shape = None
    for A, B in blocks:
        for v in list(A) + list(B):
            if isinstance(v, Jet):
                shape = v.shape
    value, err, evals, decay = quad.integrate_nodes(g, contour, tol, rtol)
    if shape is not None:
        value = Jet(shape, value)
    else:
        value = complex(value)
    return HGFResult(value, err, evals, decay)


def hgf_eval_raw(z: MatrixPoint, alpha: AlphaParams, contour: quad.Contour,
                 tol: float = quad.ABS_TOL, rtol: float = quad.REL_TOL,
                 guard: float = GUARD_DISTANCE) -> complex:
    """Integral of ``chi((1, s) z; alpha)`` along ``contour``."""
    return hgf_integral_raw(z, alpha, contour, tol, rtol, guard).value


def hgf_integral_raw(z: MatrixPoint, alpha: AlphaParams, contour: quad.Contour,
                     tol: float = quad.ABS_TOL, rtol: float = quad.REL_TOL,
                     guard: float = GUARD_DISTANCE) -> HGFResult:
    if z.partition != alpha.partition:
        raise ValueError("matrix and alpha partitions differ")
    return _integrate_blocks(z.blocks(), alpha, contour, tol, rtol, guard)


# slice contours ---------------------------------------------------------

@dataclass(frozen=True)
class SliceContour:
    """Which singular points anchor the integration cycle on the slice.

    ``segment``: from the point of ``zero_block`` to the point of ``one_block``.
    ``hankel``: loop around the point of ``zero_block``; ``inf_block`` is sent
    to infinity where its exponential factor decays.
    ``rays``: two rays to the point of ``inf_block`` in decaying sectors.
    """

    kind: str
    zero_block: Optional[int] = None
    one_block: Optional[int] = None
    inf_block: Optional[int] = None


def default_slice_contour(partition: Partition) -> SliceContour:
    blocks = partition.blocks
    ones = [i for i, n in enumerate(blocks) if n == 1]
    if len(ones) >= 2:
        return SliceContour("segment", zero_block=ones[0], one_block=ones[1])
    if len(blocks) >= 2:
        return SliceContour("hankel", zero_block=len(blocks) - 1, inf_block=0)
    return SliceContour("rays", inf_block=0)


def _decay_scale(xq: list, c, alpha_q) -> complex:
    """Mobius scale making the top exponential term of the infinity block standard.

    The block sent to infinity contributes ``exp(p(sigma))`` with ``p`` of
    degree ``n - 1``.  The scale fixes the leading term to ``sigma`` (n = 2),
    ``-sigma^2 / 2`` (n = 3) or ``-sigma^(n-1) / (n-1)``.
    """
    n = len(xq)
    target = 1.0 if n == 2 else -1.0 / (n - 1)
    ratio = target * (n - 1) * (-1) ** n / alpha_q[n - 1]
    return (c / xq[1]) * complex(ratio) ** (1.0 / (n - 1))


def _ray_angles(n: int) -> tuple[float, float]:
    if n == 3:
        return math.pi, 0.0
    step = 2 * math.pi / (n - 1)
    return -step, step


def normalize_slice(x: SlicePoint, alpha: AlphaParams, plan: SliceContour):
    """Blocks ``(A, B)`` of ``g x`` in the moved variable, ``det g`` and the contour."""
    bl = x.blocks()
    if plan.kind == "segment":
        p, q = plan.zero_block, plan.one_block
        if p is None or q is None or p == q:
            raise ValueError("segment contour needs two distinct anchor blocks")
        if len(bl[p]) != 1 or len(bl[q]) != 1:
            raise ValueError("segment anchors must be blocks of size 1")
        P = -bl[p][0]
        D = bl[p][0] - bl[q][0]
        blocks = []
        for j, xb in enumerate(bl):
            A = [xb[0] + P] + list(xb[1:])
            B = [D] + [0.0] * (len(xb) - 1)
            if j == p:
                A[0] = 0.0 * D
            if j == q:
                B[0] = -A[0]
            blocks.append((A, B))
        return blocks, D, quad.Segment(0.0, 1.0)

    q = plan.inf_block
    if q is None or len(bl[q]) < 2:
        raise ValueError("the block sent to infinity must have size >= 2")
    xq = bl[q]
    if plan.kind == "hankel":
        p = plan.zero_block
        if p is None or p == q:
            raise ValueError("hankel contour needs a loop block distinct from the infinity block")
        P = -bl[p][0]
    elif plan.kind == "rays":
        p = None
        P = 1.0 - xq[0]
    else:
        raise ValueError(f"unknown slice contour kind {plan.kind!r}")
    Q = -xq[0]
    c = _val(xq[0]) + _val(P)
    mu = _decay_scale([_val(v) for v in xq], c, alpha.blocks[q])
    blocks = []
    for j, xb in enumerate(bl):
        A = [xb[0] + P] + list(xb[1:])
        B = [mu * (xb[0] + Q)] + [mu * v for v in xb[1:]]
        if j == p:
            A[0] = 0.0 * A[0]
        if j == q:
            B[0] = 0.0 * B[0]
        blocks.append((A, B))
    det = mu * (Q - P)
    if plan.kind == "rays":
        a1, a2 = _ray_angles(len(xq))
        return blocks, det, quad.RayPair(a1, a2)
    r = 1.0
    if len(bl[p]) >= 2:
        Bp = _val(blocks[p][1][0])
        for k in range(1, len(bl[p])):
            ak = alpha.blocks[p][k]
            if ak != 0:
                r = max(r, abs(ak) ** (1.0 / k) * abs(_val(bl[p][1]) / Bp))
    return blocks, det, quad.HankelLoop(inner_radius=r)


def hgf_integral_slice(x: SlicePoint, alpha: AlphaParams, plan: Optional[SliceContour] = None,
                       tol: float = quad.ABS_TOL, rtol: float = quad.REL_TOL,
                       guard: float = GUARD_DISTANCE) -> HGFResult:
    if x.partition != alpha.partition:
        raise ValueError("slice point and alpha partitions differ")
    x.check()
    plan = plan or default_slice_contour(x.partition)
    blocks, det, contour = normalize_slice(x, alpha, plan)
    res = _integrate_blocks(blocks, alpha, contour, tol, rtol, guard)
    res.value = det * res.value
    return res


def hgf_eval_slice(x: SlicePoint, alpha: AlphaParams, plan: Optional[SliceContour] = None,
                   tol: float = quad.ABS_TOL, rtol: float = quad.REL_TOL) -> complex:
    """Value of the HGF at a slice point along the anchored cycle ``plan``."""
    return complex(hgf_integral_slice(x, alpha, plan, tol, rtol).value)


def hgf_jet(x: SlicePoint, alpha: AlphaParams, var_coords: Sequence[int], order: int,
            plan: Optional[SliceContour] = None, tol: float = quad.ABS_TOL,
            rtol: float = quad.REL_TOL) -> Jet:
    """Taylor jet of the HGF in the listed slice coordinates."""
    lifted = x.lifted(var_coords, order)
    return hgf_integral_slice(lifted, alpha, plan, tol, rtol).value


def hgf_partials(x: SlicePoint, alpha: AlphaParams, wanted: Sequence[Sequence[int]],
                 plan: Optional[SliceContour] = None, tol: float = quad.ABS_TOL,
                 rtol: float = quad.REL_TOL) -> dict[tuple[int, ...], complex]:
    """Partial derivatives in slice coordinates, keyed by length-N multi-index."""
    wanted = [tuple(int(k) for k in m) for m in wanted]
    for m in wanted:
        if len(m) != x.partition.N:
            raise ValueError(f"multi-index {m} must have length {x.partition.N}")
        if sum(m) > 2:
            raise ValueError(f"multi-index {m} exceeds the supported order 2")
    used = sorted({i for m in wanted for i, k in enumerate(m) if k})
    order = max([sum(m) for m in wanted] + [0])
    jet = hgf_jet(x, alpha, used, order, plan, tol, rtol)
    out = {}
    for m in wanted:
        out[m] = complex(jet.partial([m[i] for i in used] if used else [0]))
    return out


# presets ---------------------------------------------------------------

@dataclass
class ClassicalPreset:
    name: str
    partition: Partition
    params: dict
    alpha: AlphaParams
    contour: quad.Contour
    domain: str
    embed: object = field(repr=False)

    def matrix(self, x: complex) -> MatrixPoint:
        r0, r1 = self.embed(x)
        return MatrixPoint(self.partition, r0, r1)

    def check_domain(self, x: complex):
        x = complex(x)
        if self.name == "gauss":
            if x.imag == 0 and x.real >= 1:
                raise DomainError("gauss preset needs x outside [1, inf)")
        elif self.name == "airy":
            if not (x.imag == 0 and 0.5 < x.real < 3):
                raise DomainError("airy preset is evaluated for real x in (0.5, 3)")
        elif not 0 < x.real < 3:
            raise DomainError(f"{self.name} preset needs Re x in (0, 3)")

    def evaluate(self, x: complex, tol: float = quad.ABS_TOL, rtol: float = quad.REL_TOL) -> HGFResult:
        self.check_domain(x)
        return hgf_integral_raw(self.matrix(x), self.alpha, self.contour, tol, rtol)


PRESET_NAMES = ("gauss", "kummer", "bessel", "hermite", "airy")


def make_preset(name: str, a: complex = 0.4, b: complex = 0.5, c: complex = 1.7) -> ClassicalPreset:
    name = name.lower().replace("-", "_")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if name == "gauss":
            lam = Partition((1, 1, 1, 1))
            alpha = AlphaParams.from_flat(lam, [b - c, a - 1, c - a - 1, -b])
            return ClassicalPreset(name, lam, {"a": a, "b": b, "c": c}, alpha, quad.Segment(0.0, 1.0),
                                   "x not in [1, inf)", lambda x: ([1, 0, 1, 1], [0, 1, -1, -x]))
        if name == "kummer":
            lam = Partition((2, 1, 1))
            alpha = AlphaParams.from_flat(lam, [-c, 1, a - 1, c - a - 1])
            return ClassicalPreset(name, lam, {"a": a, "c": c}, alpha, quad.Segment(0.0, 1.0),
                                   "Re x in (0, 3)", lambda x: ([1, 0, 0, 1], [0, x, 1, -1]))
        if name == "bessel":
            lam = Partition((2, 2))
            alpha = AlphaParams.from_flat(lam, [c - 1, 1, -c - 1, 1])
            return ClassicalPreset(name, lam, {"c": c}, alpha, quad.HankelLoop(inner_radius=1.0),
                                   "Re x in (0, 3)", lambda x: ([1, 0, 0, -1], [0, x, 1, 0]))
        if name in ("hermite", "hermite_weber"):
            lam = Partition((3, 1))
            alpha = AlphaParams.from_flat(lam, [a - 1, 0, 1, -a - 1])
            return ClassicalPreset("hermite", lam, {"a": a}, alpha, quad.HankelLoop(inner_radius=1.0),
                                   "Re x in (0, 3)", lambda x: ([1, 0, 0, 0], [0, 1, x, 1]))
        if name == "airy":
            lam = Partition((4,))
            alpha = AlphaParams.from_flat(lam, [-2, 0, 0, -1])
            return ClassicalPreset(name, lam, {}, alpha, quad.RayPair(-2 * math.pi / 3, 2 * math.pi / 3),
                                   "x in (0.5, 3)", lambda x: ([1, 0, 0, 0], [0, 1, 0, -x]))
    raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")


# group actions ----------------------------------------------------------

def slice_reduce(z: MatrixPoint) -> tuple[list[JordanElement], SlicePoint]:
    """Split ``z`` as ``x h^-1`` with ``x`` on the slice."""
    hs, coords = [], []
    for j, (r0, r1) in enumerate(z.blocks()):
        if _val(r1[0]) == 0:
            raise DomainError(f"z_(1,0)^({j}) vanishes; no slice representative")
        inv = series_inverse(list(r1))
        hs.append(JordanElement(j, tuple(inv)))
        coords.extend(series_mul(list(r0), inv))
    return hs, SlicePoint(z.partition, coords)


def covariance_residual(z: MatrixPoint, h: Sequence, alpha: AlphaParams, contour: quad.Contour,
                        tol: float = quad.ABS_TOL, rtol: float = quad.REL_TOL) -> float:
    """``|F(z h) - chi(h) F(z)| / |F(z)|`` along a common contour."""
    f = hgf_eval_raw(z, alpha, contour, tol, rtol)
    fh = hgf_eval_raw(z.times_h(h), alpha, contour, tol, rtol)
    chi = char_eval(h, alpha)
    return abs(fh - chi * f) / abs(f)


def sl2_slice_act(g, x: SlicePoint, alpha: AlphaParams) -> tuple[SlicePoint, complex]:
    """Image ``g_* x`` on the slice and the cofactor ``chi((g x)_1; alpha)``.

    With ``h = (g x)_1^-1`` blockwise, ``g x h = g_* x``, so
    ``F(g x) = cofactor * F(g_* x)`` and ``x -> cofactor * F(g_* x)`` solves
    the same slice system as ``F``.
    """
    (a, b), (c, d) = g
    coords, rows = [], []
    for j, xb in enumerate(x.blocks()):
        n = len(xb)
        e0 = [1.0] + [0.0] * (n - 1)
        top = [a * v + b * e for v, e in zip(xb, e0)]
        bot = [c * v + d * e for v, e in zip(xb, e0)]
        if _val(bot[0]) == 0:
            raise DomainError(f"c x_0 + d vanishes on block {j}")
        coords.extend(series_mul(top, series_inverse(bot)))
        rows.append(bot)
    if all(not isinstance(v, Jet) for blk in rows for v in blk):
        cof = char_eval([[complex(v) for v in blk] for blk in rows], alpha)
    else:
        cof = char_eval_jet(rows, alpha)
    return SlicePoint(x.partition, coords), cof


def contiguity_residual(x: SlicePoint, alpha: AlphaParams, i: int, j: int,
                        plan: Optional[SliceContour] = None, tol: float = quad.ABS_TOL,
                        rtol: float = quad.REL_TOL) -> float:
    """Relative defect of ``L F(alpha) = alpha_last^(j) F(alpha + e_i - e_j)``."""
    if i == j:
        raise ValueError("contiguity needs i != j")
    bl = x.blocks()
    dj = x.index(j, len(bl[j]) - 1)
    jet = hgf_jet(x, alpha, [dj], 1, plan, tol, rtol)
    lhs = (_val(bl[i][0]) - _val(bl[j][0])) * complex(jet.partial([1])) + alpha.last(j) * complex(jet.value)
    shifted = alpha.shift(i, j, 1)
    rhs_f = hgf_eval_slice(x, shifted, plan, tol, rtol)
    return abs(lhs - alpha.last(j) * rhs_f) / abs(rhs_f)


__all__ = [
    "MatrixPoint", "SlicePoint", "SliceContour", "ClassicalPreset", "DomainError", "HGFResult",
    "default_slice_contour", "normalize_slice", "hgf_eval_raw", "hgf_integral_raw", "hgf_eval_slice",
    "hgf_integral_slice", "hgf_jet", "hgf_partials", "make_preset", "PRESET_NAMES", "slice_reduce",
    "covariance_residual", "sl2_slice_act", "contiguity_residual", "psi_coeffs",
]

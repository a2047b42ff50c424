"""Contours and double-exponential quadrature for 1-d complex integrals.

Every contour is a chain of pieces parametrized by ``t`` in ``[0, 1]``.  Each
piece is integrated with the tanh-sinh rule, which absorbs algebraic endpoint
singularities.  The nodes carry both ``t`` and ``1 - t`` computed without
cancellation, and a logarithm of ``s - center`` continued along the piece, so
integrands pinned to an endpoint or a loop center can be evaluated to full
relative accuracy.

Integrands are vectorized: they receive a :class:`Nodes` batch and return an
array (or a batched :class:`~hgtoda.tjet.Jet`) of values ``f(s) * ds/dt``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Union

import numpy as np

from .tjet import Jet

ABS_TOL = 1e-10
REL_TOL = 1e-8
MAX_NODES_PER_PIECE = 2**15
# tanh-sinh half-range: keeps t and 1-t above ~1e-300
_TAU_MAX = 6.1
_MIN_LEVEL = 3


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class Segment:
    a: complex = 0.0
    b: complex = 1.0


@dataclass(frozen=True)
class HankelLoop:
    """Loop around ``center``: in along one side of the cut, around, out the other.

    The two straight pieces leave the circle at angles ``cut_angle +- opening``
    so that no node sits on the cut itself.
    """

    inner_radius: float = 1.0
    truncation_radius: Optional[float] = None
    cut_angle: float = math.pi
    opening: float = math.pi / 8
    center: complex = 0.0


@dataclass(frozen=True)
class RayPair:
    """In along the ray at ``angle1``, through ``center``, out along ``angle2``."""

    angle1: float
    angle2: float
    truncation_radius: Optional[float] = None
    center: complex = 0.0


@dataclass(frozen=True)
class Circle:
    radius: float = 1.0
    center: complex = 0.0


Contour = Union[Segment, HankelLoop, RayPair, Circle]

_OPEN_DEFAULT_RADIUS = 16.0
_OPEN_MAX_DOUBLINGS = 8


@dataclass
class Nodes:
    t: np.ndarray
    tc: np.ndarray
    s: np.ndarray
    ds: np.ndarray
    # log(s - center) continued along the piece; None for segments
    logw: Optional[np.ndarray]
    piece: "_Piece"


@dataclass
class QuadResult:
    value: complex
    abs_error_estimate: float
    evaluations: int
    endpoint_decay: float = 0.0


@dataclass
class JetQuadResult:
    value: Jet
    abs_error_estimate: float
    evaluations: int
    endpoint_decay: float = 0.0


@dataclass(frozen=True)
class _Piece:
    kind: str  # "line" or "arc"
    p: complex = 0.0
    q: complex = 0.0
    center: complex = 0.0
    r0: float = 0.0
    r1: float = 0.0
    angle0: float = 0.0
    angle1: float = 0.0
    open_start: bool = False
    open_end: bool = False
    segment: bool = field(default=False)

    def nodes(self, t: np.ndarray, tc: np.ndarray) -> Nodes:
        if self.kind == "line":
            s = self.p * tc + self.q * t
            ds = np.full_like(s, self.q - self.p, dtype=complex)
            if self.segment:
                logw = None
            else:
                # radial line from the center: |s - c| and the ray angle are known
                with np.errstate(divide="ignore"):
                    logw = np.log(self.r0 * tc + self.r1 * t) + 1j * self.angle0
            return Nodes(t, tc, s, ds, logw, self)
        theta = self.angle0 * tc + self.angle1 * t
        e = np.exp(1j * theta)
        s = self.center + self.r0 * e
        ds = 1j * self.r0 * e * (self.angle1 - self.angle0)
        logw = math.log(self.r0) + 1j * theta
        return Nodes(t, tc, s, ds, logw, self)


def _pieces(contour: Contour, radius: Optional[float] = None) -> list[_Piece]:
    if isinstance(contour, Segment):
        return [_Piece("line", p=complex(contour.a), q=complex(contour.b), segment=True)]
    if isinstance(contour, Circle):
        return [_Piece("arc", center=complex(contour.center), r0=contour.radius,
                       angle0=-math.pi, angle1=math.pi)]
    if isinstance(contour, HankelLoop):
        c, r = complex(contour.center), contour.inner_radius
        R = radius if radius is not None else contour.truncation_radius
        if R is None or R <= r:
            raise ValueError("Hankel truncation radius must exceed the inner radius")
        lo = contour.cut_angle + contour.opening - 2 * math.pi
        hi = contour.cut_angle - contour.opening
        return [
            _Piece("line", p=c + R * np.exp(1j * lo), q=c + r * np.exp(1j * lo), center=c,
                   r0=R, r1=r, angle0=lo, open_start=True),
            _Piece("arc", center=c, r0=r, angle0=lo, angle1=hi),
            _Piece("line", p=c + r * np.exp(1j * hi), q=c + R * np.exp(1j * hi), center=c,
                   r0=r, r1=R, angle0=hi, open_end=True),
        ]
    if isinstance(contour, RayPair):
        c = complex(contour.center)
        R = radius if radius is not None else contour.truncation_radius
        if R is None or R <= 0:
            raise ValueError("ray truncation radius must be positive")
        a1, a2 = contour.angle1, contour.angle2
        return [
            _Piece("line", p=c + R * np.exp(1j * a1), q=c, center=c, r0=R, r1=0.0,
                   angle0=a1, open_start=True),
            _Piece("line", p=c, q=c + R * np.exp(1j * a2), center=c, r0=0.0, r1=R,
                   angle0=a2, open_end=True),
        ]
    raise TypeError(f"unsupported contour {contour!r}")


def _is_open(contour: Contour) -> bool:
    return isinstance(contour, (HankelLoop, RayPair))


def _level_nodes(level: int):
    """tanh-sinh abscissae of one refinement level on [0, 1].

    Level 0 uses step 1 and all integer multiples; level k > 0 adds only the
    odd multiples of 2^-k.
    """
    h = 2.0 ** (-level)
    kmax = int(_TAU_MAX / h)
    if level == 0:
        k = np.arange(-kmax, kmax + 1)
    else:
        k = np.arange(-kmax, kmax + 1)
        k = k[k % 2 != 0]
    tau = k * h
    y = 0.5 * math.pi * np.sinh(tau)
    t = 1.0 / (1.0 + np.exp(-2.0 * y))
    tc = 1.0 / (1.0 + np.exp(2.0 * y))
    w = 0.5 * math.pi * np.cosh(tau) / (2.0 * np.cosh(y) ** 2)
    return t, tc, w


_NODE_CACHE: dict[int, tuple] = {}


def _cached_level(level: int):
    if level not in _NODE_CACHE:
        _NODE_CACHE[level] = _level_nodes(level)
    return _NODE_CACHE[level]


def _weighted_sum(vals, w):
    if isinstance(vals, Jet):
        return vals.coeffs @ w
    return np.dot(vals, w)


def _converged(cur, prev, atol, rtol):
    diff = np.abs(cur - prev)
    bound = atol + rtol * np.abs(cur)
    return bool(np.all(diff <= bound)), float(np.max(diff))


def _integrate_piece(g, piece: _Piece, atol: float, rtol: float):
    total = None
    prev = None
    evals = 0
    level = 0
    while True:
        t, tc, w = _cached_level(level)
        vals = g(piece.nodes(t, tc))
        evals += len(t)
        part = _weighted_sum(vals, w)
        if total is None:
            total = part
        else:
            total = total + part
        h = 2.0 ** (-level)
        cur = h * total
        if level >= _MIN_LEVEL:
            ok, err = _converged(cur, prev, atol, rtol)
            if not np.all(np.isfinite(cur)):
                raise QuadratureError("non-finite integrand values on the contour")
            if ok:
                return cur, err, evals
        if evals * 2 > MAX_NODES_PER_PIECE:
            _, err = _converged(cur, prev, atol, rtol)
            raise QuadratureError(
                f"tanh-sinh did not converge within {MAX_NODES_PER_PIECE} nodes (last change {err:.3e})")
        prev = cur
        level += 1


def _endpoint_magnitude(g, pieces: list[_Piece]) -> float:
    out = 0.0
    one, zero = np.array([1.0]), np.array([0.0])
    for pc in pieces:
        for flag, t, tc in ((pc.open_start, zero, one), (pc.open_end, one, zero)):
            if flag:
                nodes = pc.nodes(t, tc)
                vals = g(nodes)
                mag = np.abs(vals.coeffs if isinstance(vals, Jet) else vals)
                out = max(out, float(np.max(mag / np.maximum(np.abs(nodes.ds), 1e-300))))
    return out


def integrate_nodes(g: Callable[[Nodes], object], contour: Contour,
                    atol: float = ABS_TOL, rtol: float = REL_TOL):
    """Integrate ``g`` (values already multiplied by ds/dt) over ``contour``.

    Returns ``(value, error_estimate, evaluations, endpoint_decay)`` where the
    value is a complex number, a coefficient array, or whatever
    ``_weighted_sum`` produces for the integrand type.
    """
    if atol <= 0 and rtol <= 0:
        raise ValueError("tolerance must be positive")
    radii = [None]
    if _is_open(contour):
        base = contour.truncation_radius or _OPEN_DEFAULT_RADIUS
        radii = [base * 2**k for k in range(_OPEN_MAX_DOUBLINGS + 1)]
    last_decay = 0.0
    for radius in radii:
        pieces = _pieces(contour, radius)
        decay = _endpoint_magnitude(g, pieces) if _is_open(contour) else 0.0
        last_decay = decay
        value, err, evals = 0, 0.0, 0
        for pc in pieces:
            v, e, n = _integrate_piece(g, pc, atol, rtol)
            value = value + v
            err += e
            evals += n
        if decay <= min(atol, rtol * float(np.max(np.abs(value)))) * 1e-2:
            return value, err, evals, decay
    raise QuadratureError(f"integrand does not decay at the truncated ends (|f| = {last_decay:.3e})")


def integrate(f: Callable[[np.ndarray], np.ndarray], contour: Contour, tol: float = ABS_TOL,
              rtol: float = REL_TOL) -> QuadResult:
    """Integrate a vectorized complex function along ``contour``."""
    value, err, evals, decay = integrate_nodes(lambda nd: f(nd.s) * nd.ds, contour, tol, rtol)
    return QuadResult(complex(value), err, evals, decay)


def integrate_jet(f: Callable[[np.ndarray], Jet], contour: Contour, tol: float = ABS_TOL,
                  rtol: float = REL_TOL) -> JetQuadResult:
    """Coefficient-wise integral of a jet-valued integrand."""
    shape_box = []

    def g(nd):
        out = f(nd.s)
        if not isinstance(out, Jet):
            raise TypeError("integrate_jet needs a jet-valued integrand")
        shape_box.append(out.shape)
        return out * nd.ds

    value, err, evals, decay = integrate_nodes(g, contour, tol, rtol)
    return JetQuadResult(Jet(shape_box[-1], value), err, evals, decay)


def with_radius(contour: Contour, radius: float) -> Contour:
    return replace(contour, truncation_radius=radius)

"""Hyperbolic operators ``dx dy + a dx + b dy + c`` and their Laplace sequences.

Coefficients are :class:`ScalarField` rules that produce 2-variable jets at a
point.  Every transformation (Laplace up/down, gauge normalization, the
normal-form recurrence) composes such rules, so derivatives are exact to the
jet order and no symbolic algebra is needed.  Each Laplace step uses two jet
orders.

The module also holds the tabulated second-order systems on the slice for
the partitions (2,1,1), (2,2), (3,1) and the operator identities among them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .tjet import Jet, JetShape, jet_lift_point

NONVANISHING_THRESHOLD = 1e-12
DEFAULT_BASE_ORDER = 12

Point = tuple


class VanishingInvariant(ArithmeticError):
    pass


class OrderBudgetError(ValueError):
    pass


def _lift2(point, order: int) -> tuple[Jet, Jet]:
    X, Y = jet_lift_point([complex(point[0]), complex(point[1])], order)
    return X, Y


def _as_jet(v, shape: JetShape) -> Jet:
    return v if isinstance(v, Jet) else Jet.constant(v, shape)


class ScalarField:
    """A coefficient field evaluated as jets: ``field.jet(point, order)``."""

    def __init__(self, rule: Callable[[Point, int], Jet], antiderivative_x: Optional["ScalarField"] = None,
                 is_zero: bool = False, label: str = ""):
        self._rule = rule
        self._cache: dict = {}
        self.antiderivative_x = antiderivative_x
        self.is_zero = is_zero
        self.label = label

    @classmethod
    def from_expr(cls, expr: Callable[[Jet, Jet], object], antiderivative_x=None, label: str = "") -> "ScalarField":
        """Field given by a formula in the coordinate jets ``X`` and ``Y``."""

        def rule(point, order):
            X, Y = _lift2(point, order)
            return _as_jet(expr(X, Y), X.shape)

        anti = None
        if antiderivative_x is not None:
            anti = antiderivative_x if isinstance(antiderivative_x, ScalarField) else cls.from_expr(antiderivative_x)
        return cls(rule, anti, label=label)

    @classmethod
    def zero(cls) -> "ScalarField":
        def rule(point, order):
            return Jet.constant(0.0, JetShape(2, order))

        return cls(rule, antiderivative_x=None, is_zero=True, label="0")

    @classmethod
    def constant(cls, value: complex) -> "ScalarField":
        if value == 0:
            return cls.zero()
        return cls.from_expr(lambda X, Y: value + 0 * X, antiderivative_x=lambda X, Y: value * X, label=str(value))

    def jet(self, point, order: int) -> Jet:
        key = (tuple(complex(p) for p in point), order)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._rule(key[0], order)
            if len(self._cache) > 4096:
                self._cache.clear()
            self._cache[key] = hit
        return hit

    def value(self, point) -> complex:
        return complex(self.jet(point, 0).value)

    def dx(self, point, order: int) -> Jet:
        return self.jet(point, order + 1).diff(0)

    def dy(self, point, order: int) -> Jet:
        return self.jet(point, order + 1).diff(1)


def _guard(j: Jet, what: str, point) -> Jet:
    if abs(complex(j.value)) <= NONVANISHING_THRESHOLD:
        raise VanishingInvariant(f"{what} vanishes at {point}")
    return j


@dataclass
class HyperOp:
    a: ScalarField
    b: ScalarField
    c: ScalarField

    def is_normal(self) -> bool:
        return self.b.is_zero

    def h_jet(self, point, order: int) -> Jet:
        return self.a.dx(point, order) + self.a.jet(point, order) * self.b.jet(point, order) - self.c.jet(point, order)

    def k_jet(self, point, order: int) -> Jet:
        return self.b.dy(point, order) + self.a.jet(point, order) * self.b.jet(point, order) - self.c.jet(point, order)

    def apply(self, u: Jet, point) -> Jet:
        """``M u`` for a 2-variable jet ``u``; the result has order two lower."""
        K = u.order - 2
        if K < 0:
            raise OrderBudgetError("need a jet of order >= 2")
        ux, uy = u.diff(0), u.diff(1)
        return (ux.diff(1) + self.a.jet(point, K) * ux.truncate(K) + self.b.jet(point, K) * uy.truncate(K)
                + self.c.jet(point, K) * u.truncate(K))


def invariants(M: HyperOp, point, order: int) -> tuple[Jet, Jet]:
    """Jets of ``h = a_x + ab - c`` and ``k = b_y + ab - c``."""
    return M.h_jet(point, order), M.k_jet(point, order)


def laplace_up(M: HyperOp) -> HyperOp:
    """Operator for ``u_+ = (dy + a) u``."""

    def log_h_y(point, order):
        h = _guard(M.h_jet(point, order + 1), "invariant h", point)
        return h.log().diff(1)

    a = ScalarField(lambda p, K: M.a.jet(p, K) - log_h_y(p, K))
    c = ScalarField(lambda p, K: M.c.jet(p, K) - M.a.dx(p, K) + M.b.dy(p, K) - M.b.jet(p, K) * log_h_y(p, K))
    return HyperOp(a, M.b, c)


def laplace_down(M: HyperOp) -> HyperOp:
    """Operator for ``u_- = (dx + b) u``."""

    def log_k_x(point, order):
        k = _guard(M.k_jet(point, order + 1), "invariant k", point)
        return k.log().diff(0)

    b = ScalarField(lambda p, K: M.b.jet(p, K) - log_k_x(p, K))
    c = ScalarField(lambda p, K: M.c.jet(p, K) + M.a.dx(p, K) - M.b.dy(p, K) - M.a.jet(p, K) * log_k_x(p, K))
    return HyperOp(M.a, b, c)


def gauge(M: HyperOp, F: ScalarField) -> HyperOp:
    """Coefficients of ``f^-1 M f`` with ``F = log f``."""

    def Fx(p, K):
        return F.dx(p, K)

    def Fy(p, K):
        return F.dy(p, K)

    a = ScalarField(lambda p, K: M.a.jet(p, K) + Fy(p, K))
    b = ScalarField(lambda p, K: M.b.jet(p, K) + Fx(p, K))
    c = ScalarField(lambda p, K: M.c.jet(p, K) + M.a.jet(p, K) * Fx(p, K) + M.b.jet(p, K) * Fy(p, K)
                    + Fx(p, K) * Fy(p, K) + F.jet(p, K + 2).diff(0).diff(1))
    return HyperOp(a, b, c)


def normalize(M: HyperOp) -> tuple[HyperOp, ScalarField]:
    """Gauge ``M`` to ``b = 0`` using ``F = -int b dx``; returns ``(M', F)``."""
    if M.b.is_zero:
        return M, ScalarField.zero()
    if M.b.antiderivative_x is None:
        raise ValueError("normalize needs a closed-form x-antiderivative of b")
    anti = M.b.antiderivative_x
    F = ScalarField(lambda p, K: -anti.jet(p, K))
    G = gauge(M, F)
    return HyperOp(G.a, ScalarField.zero(), G.c), F


# normal-form sequences -------------------------------------------------

@dataclass
class SeqEntry:
    n: int
    a: Jet
    c: Jet

    @property
    def s_next(self) -> Jet:
        return self.a

    @property
    def r(self) -> Jet:
        return self.c


class NormalSeq:
    """Laplace sequence of a normal-form operator, evaluated at one point.

    Entry ``n`` carries jets of ``a_n`` and ``c_n`` of order
    ``base_order - 2|n|``.  In Toda variables ``s_(n+1) = a_n`` and
    ``r_n = -k_n = c_n``.
    """

    def __init__(self, M0: HyperOp, n_range: Sequence[int], point, base_order: int = DEFAULT_BASE_ORDER,
                 residual_order: int = 2):
        if not M0.is_normal():
            raise ValueError("the base operator must be in normal form (b = 0)")
        lo, hi = int(min(n_range)), int(max(n_range))
        if lo > 0 or hi < 0:
            raise ValueError("the range must contain 0")
        need = 2 * max(abs(lo), abs(hi)) + residual_order
        if base_order < need:
            raise OrderBudgetError(
                f"entries up to |n| = {max(abs(lo), abs(hi))} need base jet order >= {need}, got {base_order}")
        self.point = tuple(complex(p) for p in point)
        self.base_order = base_order
        self.entries: dict[int, SeqEntry] = {}
        a, c = M0.a.jet(self.point, base_order), M0.c.jet(self.point, base_order)
        self.entries[0] = SeqEntry(0, a, c)
        for n in range(0, hi):
            e = self.entries[n]
            K = e.a.order - 2
            ax = e.a.diff(0)
            h = _guard(ax - e.c.truncate(ax.order), f"h_{n}", self.point)
            a_next = e.a.truncate(K) - h.log().diff(1)
            c_next = (e.c.truncate(ax.order) - ax).truncate(K)
            self.entries[n + 1] = SeqEntry(n + 1, a_next, c_next)
        for n in range(0, lo, -1):
            e = self.entries[n]
            K = e.a.order - 2
            k = _guard(-e.c, f"k_{n}", self.point)
            logk = k.log()
            a_prev = e.a.truncate(K) + logk.diff(1).truncate(K)
            c_prev = e.c.truncate(K) + e.a.diff(0).truncate(K) + logk.diff(0).diff(1)
            self.entries[n - 1] = SeqEntry(n - 1, a_prev, c_prev)

    def __getitem__(self, n: int) -> SeqEntry:
        if n not in self.entries:
            raise KeyError(f"entry {n} was not generated")
        return self.entries[n]

    def n_values(self) -> list[int]:
        return sorted(self.entries)

    def h(self, n: int) -> Jet:
        e = self[n]
        ax = e.a.diff(0)
        return ax - e.c.truncate(ax.order)

    def k(self, n: int) -> Jet:
        return -self[n].c


def normal_sequence(M0: HyperOp, n_range: Sequence[int], point, base_order: int = DEFAULT_BASE_ORDER) -> NormalSeq:
    return NormalSeq(M0, n_range, point, base_order)


def _common(*jets: Jet) -> list[Jet]:
    K = min(j.order for j in jets)
    return [j.truncate(K) for j in jets]


def toda_te_residual(seq: NormalSeq, n: int, point=None) -> float:
    """``|dx dy log r_n - (r_(n+1) - 2 r_n + r_(n-1))|`` at the point."""
    r = seq[n].r
    if abs(complex(r.value)) <= NONVANISHING_THRESHOLD:
        raise VanishingInvariant(f"r_{n} vanishes")
    lhs = r.log().diff(0).diff(1)
    lhs, rp, r0, rm = _common(lhs, seq[n + 1].r, r, seq[n - 1].r)
    return abs(complex((lhs - (rp - 2 * r0 + rm)).value))


def toda_pair_residual(seq: NormalSeq, n: int) -> float:
    """Defect of ``dx s_(n+1) = r_n - r_(n+1)`` and ``dy log r_n = s_n - s_(n+1)``."""
    e, ep, em = seq[n], seq[n + 1], seq[n - 1]
    lhs1, rn, rp = _common(e.a.diff(0), e.r, ep.r)
    first = abs(complex((lhs1 - (rn - rp)).value))
    lhs2, sn, sp = _common(e.r.log().diff(1), em.a, e.a)
    second = abs(complex((lhs2 - (sn - sp)).value))
    return max(first, second)


# closed-form families --------------------------------------------------

def epd_operator(alpha: complex, beta: complex) -> HyperOp:
    """``dx dy + beta/(x-y) dx + alpha/(y-x) dy``."""
    a = ScalarField.from_expr(lambda X, Y: beta / (X - Y))
    b = ScalarField.from_expr(lambda X, Y: alpha / (Y - X), antiderivative_x=lambda X, Y: -alpha * (Y - X).log())
    return HyperOp(a, b, ScalarField.zero())


def epd_normal(alpha: complex, beta: complex, m: int) -> HyperOp:
    a = ScalarField.from_expr(lambda X, Y: (beta - alpha - 2 * m) / (X - Y))
    c = ScalarField.from_expr(lambda X, Y: (alpha + m) * (beta - m + 1) / ((X - Y) * (X - Y)))
    return HyperOp(a, ScalarField.zero(), c)


def confluent_operator(alpha: complex, beta: complex, u: complex) -> HyperOp:
    """``dx dy + beta/(x-u) dx + alpha/(u-x) dy`` in the variables (x, y)."""
    a = ScalarField.from_expr(lambda X, Y: beta / (X - u))
    b = ScalarField.from_expr(lambda X, Y: alpha / (u - X), antiderivative_x=lambda X, Y: -alpha * (u - X).log())
    return HyperOp(a, b, ScalarField.zero())


def confluent_normal(alpha: complex, beta: complex, u: complex, m: int) -> HyperOp:
    a = ScalarField.from_expr(lambda X, Y: beta / (X - u))
    c = ScalarField.from_expr(lambda X, Y: (alpha + m) * beta / ((u - X) * (u - X)))
    return HyperOp(a, ScalarField.zero(), c)


def doubly_confluent_operator(alpha: complex, beta: complex, u: complex, v: complex) -> HyperOp:
    """``dx dy + beta/(u-v) dx + alpha/(v-u) dy`` with constant coefficients."""
    bconst = alpha / (v - u)
    a = ScalarField.constant(beta / (u - v))
    b = ScalarField.from_expr(lambda X, Y: bconst + 0 * X, antiderivative_x=lambda X, Y: bconst * X)
    return HyperOp(a, b, ScalarField.zero())


def doubly_confluent_normal(alpha: complex, beta: complex, u: complex, v: complex, m: int = 0) -> HyperOp:
    return HyperOp(ScalarField.constant(beta / (u - v)), ScalarField.zero(),
                   ScalarField.constant(alpha * beta / (u - v) ** 2))


FAMILIES = ("epd", "confluent", "doubly-confluent")


def family_operator(family: str, alpha: complex, beta: complex, u: complex = 0.0, v: complex = 0.0) -> HyperOp:
    if family == "epd":
        return epd_operator(alpha, beta)
    if family == "confluent":
        return confluent_operator(alpha, beta, u)
    if family == "doubly-confluent":
        return doubly_confluent_operator(alpha, beta, u, v)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def family_normal(family: str, alpha: complex, beta: complex, m: int, u: complex = 0.0, v: complex = 0.0) -> HyperOp:
    if family == "epd":
        return epd_normal(alpha, beta, m)
    if family == "confluent":
        return confluent_normal(alpha, beta, u, m)
    if family == "doubly-confluent":
        return doubly_confluent_normal(alpha, beta, u, v, m)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def factorization_residual(M: HyperOp, u: Jet, point) -> float:
    """Max defect of ``M = (dx+b)(dy+a) - h = (dy+a)(dx+b) - k`` on a jet ``u``."""
    K = u.order - 2
    Mu = M.apply(u, point)
    a1, b1 = M.a.jet(point, K + 1), M.b.jet(point, K + 1)
    v = u.diff(1) + a1 * u.truncate(K + 1)
    w = u.diff(0) + b1 * u.truncate(K + 1)
    h, k = invariants(M, point, K)
    first = v.diff(0) + M.b.jet(point, K) * v.truncate(K) - h * u.truncate(K)
    second = w.diff(1) + M.a.jet(point, K) * w.truncate(K) - k * u.truncate(K)
    return float(max(np.max(np.abs((first - Mu).coeffs)), np.max(np.abs((second - Mu).coeffs))))


# slice operators -------------------------------------------------------

Coef = Callable[[list], object]


class DiffOp:
    """Linear operator ``sum coef_m(x) d^m`` on functions of N slice coordinates."""

    def __init__(self, num_vars: int, terms: Sequence[tuple[Coef, tuple[int, ...]]], name: str = ""):
        self.num_vars = num_vars
        self.terms = [(c, tuple(m)) for c, m in terms]
        self.name = name
        for _, m in self.terms:
            if len(m) != num_vars:
                raise ValueError(f"multi-index {m} has the wrong length")

    @property
    def order(self) -> int:
        return max((sum(m) for _, m in self.terms), default=0)

    def apply(self, u: Jet, point: Sequence[complex]) -> Jet:
        K = u.order - self.order
        if K < 0:
            raise OrderBudgetError(f"operator of order {self.order} needs a jet of at least that order")
        X = jet_lift_point(list(point), K)
        out = Jet.constant(0.0, X[0].shape)
        for coef, m in self.terms:
            d = u
            for var, times in enumerate(m):
                for _ in range(times):
                    d = d.diff(var)
            cv = coef(X)
            out = out + (cv * d.truncate(K) if isinstance(cv, Jet) or cv != 1 else d.truncate(K))
        return out

    def __repr__(self):
        return f"DiffOp({self.name or 'anonymous'}, order={self.order})"


def _e(n: int, *idx: int) -> tuple[int, ...]:
    m = [0] * n
    for i in idx:
        m[i] += 1
    return tuple(m)


def _const(v):
    return lambda X: v


def _var(i):
    return lambda X: X[i]


def _diff_of(i, j):
    return lambda X: X[i] - X[j]


def reduced_system(partition: Sequence[int], alpha: Sequence[complex]) -> dict[tuple[int, int], DiffOp]:
    """Second-order operators ``M_(p,q)`` on slice coordinates ``x_0 .. x_3``."""
    lam = tuple(partition)
    a = [complex(v) for v in alpha]
    if len(a) != 4:
        raise ValueError("the tabulated systems need four alpha entries")
    E = lambda *idx: _e(4, *idx)  # noqa: E731
    ops: dict[tuple[int, int], list] = {}
    if lam == (2, 1, 1):
        ops[(0, 1)] = [(_var(1), E(1, 1)), (_const(a[1]), E(0)), (_const(-a[0]), E(1))]
        for q in (2, 3):
            ops[(0, q)] = [(_diff_of(0, q), E(0, q)), (_var(1), E(1, q)), (_const(a[q]), E(0)), (_const(-a[0]), E(q))]
            ops[(1, q)] = [(_diff_of(0, q), E(1, q)), (_const(a[q]), E(1)), (_const(-a[1]), E(q))]
        ops[(2, 3)] = [(_diff_of(2, 3), E(2, 3)), (_const(a[3]), E(2)), (_const(-a[2]), E(3))]
    elif lam == (2, 2):
        ops[(0, 1)] = [(_var(1), E(1, 1)), (_const(a[1]), E(0)), (_const(-a[0]), E(1))]
        ops[(0, 2)] = [(_diff_of(0, 2), E(0, 2)), (_var(1), E(1, 2)), (lambda X: -X[3], E(0, 3)),
                       (_const(a[2]), E(0)), (_const(-a[0]), E(2))]
        ops[(0, 3)] = [(_diff_of(0, 2), E(0, 3)), (_var(1), E(1, 3)), (_const(a[3]), E(0)), (_const(-a[0]), E(3))]
        ops[(1, 2)] = [(_diff_of(0, 2), E(1, 2)), (lambda X: -X[3], E(1, 3)), (_const(a[2]), E(1)),
                       (_const(-a[1]), E(2))]
        ops[(1, 3)] = [(_diff_of(0, 2), E(1, 3)), (_const(a[3]), E(1)), (_const(-a[1]), E(3))]
        ops[(2, 3)] = [(_var(3), E(3, 3)), (_const(a[3]), E(2)), (_const(-a[2]), E(3))]
    elif lam == (3, 1):
        ops[(0, 1)] = [(_var(1), E(1, 1)), (lambda X: -X[1], E(0, 2)), (_var(2), E(1, 2)),
                       (_const(a[1]), E(0)), (_const(-a[0]), E(1))]
        ops[(0, 2)] = [(_var(1), E(1, 2)), (_var(2), E(2, 2)), (_const(a[2]), E(0)), (_const(-a[0]), E(2))]
        ops[(1, 2)] = [(_var(1), E(2, 2)), (_const(a[2]), E(1)), (_const(-a[1]), E(2))]
        ops[(0, 3)] = [(_diff_of(0, 3), E(0, 3)), (_var(1), E(1, 3)), (_var(2), E(2, 3)),
                       (_const(a[3]), E(0)), (_const(-a[0]), E(3))]
        ops[(1, 3)] = [(_diff_of(0, 3), E(1, 3)), (_var(1), E(2, 3)), (_const(a[3]), E(1)), (_const(-a[1]), E(3))]
        ops[(2, 3)] = [(_diff_of(0, 3), E(2, 3)), (_const(a[3]), E(2)), (_const(-a[2]), E(3))]
    else:
        raise ValueError(f"no tabulated system for partition {lam}; supported: (2,1,1), (2,2), (3,1)")
    return {k: DiffOp(4, v, name=f"M{k[0]}{k[1]}") for k, v in sorted(ops.items())}


def reduced_hyperbolic(partition: Sequence[int], alpha_blocks: Sequence[Sequence[complex]], i: int, j: int) -> DiffOp:
    """``(x0^i - x0^j) D^i D^j + alpha^j D^i - alpha^i D^j`` with ``D`` the last-coordinate derivatives."""
    lam = tuple(partition)
    N = sum(lam)
    off = [sum(lam[:k]) for k in range(len(lam))]
    di, dj = off[i] + lam[i] - 1, off[j] + lam[j] - 1
    ai, aj = complex(alpha_blocks[i][-1]), complex(alpha_blocks[j][-1])
    return DiffOp(N, [(_diff_of(off[i], off[j]), _e(N, di, dj)), (_const(aj), _e(N, di)), (_const(-ai), _e(N, dj))],
                  name=f"Mtilde{i}{j}")


def contiguity_operator(partition: Sequence[int], alpha_blocks: Sequence[Sequence[complex]], i: int, j: int) -> DiffOp:
    """``(x0^i - x0^j) D^j + alpha^j_last``."""
    lam = tuple(partition)
    N = sum(lam)
    off = [sum(lam[:k]) for k in range(len(lam))]
    dj = off[j] + lam[j] - 1
    aj = complex(alpha_blocks[j][-1])
    return DiffOp(N, [(_diff_of(off[i], off[j]), _e(N, dj)), (_const(aj), _e(N))], name=f"L{i}{j}")


def _first_order(N: int, terms) -> DiffOp:
    return DiffOp(N, terms)


def _compose_apply(outer: DiffOp, inner: DiffOp, u: Jet, point) -> Jet:
    return outer.apply(inner.apply(u, point), point)


def _lin(ops: dict, combo: Sequence[tuple[complex, tuple[int, int]]], u: Jet, point, order: int) -> Jet:
    out = None
    for coef, key in combo:
        v = ops[key].apply(u, point).truncate(order) * coef
        out = v if out is None else out + v
    return out


def _ideal_identities(lam: tuple, a: list) -> list[tuple[str, list, list]]:
    """Each identity: (label, [(first-order op, key)], [(coef, key)]) meaning sum P M_key = sum coef M_key."""
    E = lambda *idx: _e(4, *idx)  # noqa: E731
    ids = []
    if lam == (2, 2):
        ids.append(("(x0-x2)d3 M01 - x1 d1 M13",
                    [(_first_order(4, [(_diff_of(0, 2), E(3))]), (0, 1)),
                     (_first_order(4, [(lambda X: -X[1], E(1))]), (1, 3))],
                    [(-a[0], (1, 3)), (a[1], (0, 3)), (-a[3], (0, 1))]))
        ids.append(("x3 d3 M13 - (x0-x2) d1 M23",
                    [(_first_order(4, [(_var(3), E(3))]), (1, 3)),
                     (_first_order(4, [(lambda X: -(X[0] - X[2]), E(1))]), (2, 3))],
                    [(-a[1], (2, 3)), (a[2], (1, 3)), (-a[3], (1, 2))]))
        ids.append(("((x0-x2)d2 - x3 d3) M01 - x1 d1 M12",
                    [(_first_order(4, [(_diff_of(0, 2), E(2)), (lambda X: -X[3], E(3))]), (0, 1)),
                     (_first_order(4, [(lambda X: -X[1], E(1))]), (1, 2))],
                    [(-a[0], (1, 2)), (a[1], (0, 2)), (-a[2], (0, 1))]))
    elif lam == (3, 1):
        ids.append(("x1 d2 M02 - (x1 d1 + x2 d2) M12",
                    [(_first_order(4, [(_var(1), E(2))]), (0, 2)),
                     (_first_order(4, [(lambda X: -X[1], E(1)), (lambda X: -X[2], E(2))]), (1, 2))],
                    [(-a[0], (1, 2)), (a[1], (0, 2)), (-a[2], (0, 1))]))
        ids.append(("(x0-x3)d3 M12 - x1 d2 M23",
                    [(_first_order(4, [(_diff_of(0, 3), E(3))]), (1, 2)),
                     (_first_order(4, [(lambda X: -X[1], E(2))]), (2, 3))],
                    [(-a[1], (2, 3)), (a[2], (1, 3)), (-a[3], (1, 2))]))
        ids.append(("(x0-x3)d3 M02 - (x1 d1 + x2 d2) M23",
                    [(_first_order(4, [(_diff_of(0, 3), E(3))]), (0, 2)),
                     (_first_order(4, [(lambda X: -X[1], E(1)), (lambda X: -X[2], E(2))]), (2, 3))],
                    [(-a[0], (2, 3)), (a[2], (0, 3)), (-a[3], (0, 2))]))
    elif lam == (2, 1, 1):
        for q in (2, 3):
            ids.append((f"(x0-x{q})d{q} M01 - x1 d1 M1{q}",
                        [(_first_order(4, [(_diff_of(0, q), E(q))]), (0, 1)),
                         (_first_order(4, [(lambda X: -X[1], E(1))]), (1, q))],
                        [(-a[0], (1, q)), (a[1], (0, q)), (-a[q], (0, 1))]))
        ids.append(("(x0-x3)d3 M12 - (x0-x2)d2 M13",
                    [(_first_order(4, [(_diff_of(0, 3), E(3))]), (1, 2)),
                     (_first_order(4, [(lambda X: -(X[0] - X[2]), E(2))]), (1, 3))],
                    [(-a[1], (2, 3)), (a[2], (1, 3)), (-a[3], (1, 2))]))
        ids.append(("(x0-x3)d3 M02 - (x0-x2)d2 M03 - x1 d1 M23",
                    [(_first_order(4, [(_diff_of(0, 3), E(3))]), (0, 2)),
                     (_first_order(4, [(lambda X: -(X[0] - X[2]), E(2))]), (0, 3)),
                     (_first_order(4, [(lambda X: -X[1], E(1))]), (2, 3))],
                    [(-a[0], (2, 3)), (a[2], (0, 3)), (-a[3], (0, 2))]))
    else:
        raise ValueError(f"no identities tabulated for {lam}")
    return ids


IDENTITY_KINDS = ("redu4", "ideal_211", "ideal_22", "ideal_31")
_KIND_PARTITION = {"ideal_211": (2, 1, 1), "ideal_22": (2, 2), "ideal_31": (3, 1)}


def identity_labels(kind: str) -> list[str]:
    lam = _KIND_PARTITION[kind]
    return [lab for lab, _, _ in _ideal_identities(lam, [1, 1, 1, 1])]


def operator_identity_check(kind: str, test_fn: Callable[[list], Jet], point: Sequence[complex],
                            alpha=None, partition=None, pair: tuple[int, int] | None = None,
                            which: int | None = None) -> float:
    """Apply (left side - right side) of an operator identity to ``test_fn``.

    ``test_fn`` maps a list of coordinate jets to a jet.  For ``redu4`` give the
    partition, per-block alpha and the pair ``(i, j)``; for the ideal kinds give
    the flat alpha of length 4 and optionally the identity index ``which``.
    """
    if kind not in IDENTITY_KINDS:
        raise ValueError(f"unknown identity kind {kind!r}; choose from {', '.join(IDENTITY_KINDS)}")
    point = [complex(p) for p in point]
    N = len(point)
    if kind == "redu4":
        lam = tuple(partition)
        i, j = pair
        blocks = [list(b) for b in alpha]
        u = test_fn(jet_lift_point(point, 3))
        first = contiguity_operator(lam, blocks, i, j)
        shifted = [list(b) for b in blocks]
        shifted[i][0] += 1
        shifted[j][0] -= 1
        second = contiguity_operator(lam, shifted, j, i)
        lhs = second.apply(first.apply(u, point), point)
        K = lhs.order
        Mt = reduced_hyperbolic(lam, blocks, i, j).apply(u, point).truncate(K)
        off = [sum(lam[:k]) for k in range(len(lam))]
        X = jet_lift_point(point, K)
        d = X[off[i]] - X[off[j]]
        const = (blocks[i][-1] + (1 if lam[i] == 1 else 0)) * blocks[j][-1]
        rhs = -d * Mt + const * u.truncate(K)
        return float(np.max(np.abs((lhs - rhs).coeffs)))
    lam = _KIND_PARTITION[kind]
    if N != 4:
        raise ValueError("ideal identities live on four slice coordinates")
    a = [complex(v) for v in alpha]
    ops = reduced_system(lam, a)
    u = test_fn(jet_lift_point(point, 3))
    worst = 0.0
    for idx, (_, left, right) in enumerate(_ideal_identities(lam, a)):
        if which is not None and idx != which:
            continue
        lhs = None
        for P, key in left:
            v = P.apply(ops[key].apply(u, point), point)
            lhs = v if lhs is None else lhs + v
        rhs = _lin(ops, right, u, point, lhs.order)
        worst = max(worst, float(np.max(np.abs((lhs - rhs).coeffs))))
    return worst

"""Truncated multivariate Taylor arithmetic over complex scalars.

A :class:`Jet` stores the coefficients ``c_m = (d^m f / m!)`` of a function at
a point for every multi-index ``|m| <= order``.  Coefficients are kept dense,
ranked by total degree, so truncating to a lower order is a prefix slice.

Coefficient arrays may carry trailing batch axes.  The quadrature code relies
on this to push a whole vector of nodes through one jet expression.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Sequence, Union

import numpy as np

Number = Union[int, float, complex]


@dataclass(frozen=True)
class JetShape:
    num_vars: int
    order: int

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        if self.order < 0:
            raise ValueError("order must be >= 0")

    @property
    def size(self) -> int:
        return _tables(self.num_vars, self.order).size


def _degree_block(num_vars: int, degree: int) -> list[tuple[int, ...]]:
    # multi-indices of one total degree, in a fixed order independent of the
    # truncation order so lower-order layouts are prefixes of higher ones
    out = [m for m in _cartesian(range(degree + 1), repeat=num_vars) if sum(m) == degree]
    out.sort(reverse=True)
    return out


class _Tables:
    def __init__(self, num_vars: int, order: int):
        self.num_vars = num_vars
        self.order = order
        idx: list[tuple[int, ...]] = []
        self.degree_start = []
        for d in range(order + 1):
            self.degree_start.append(len(idx))
            idx.extend(_degree_block(num_vars, d))
        self.degree_start.append(len(idx))
        self.indices = idx
        self.size = len(idx)
        self.rank = {m: r for r, m in enumerate(idx)}
        self.degrees = np.array([sum(m) for m in idx])
        self.factorials = np.array([math.prod(math.factorial(k) for k in m) for m in idx], dtype=float)

        triples = []
        for i, mi in enumerate(idx):
            for j, mj in enumerate(idx):
                if self.degrees[i] + self.degrees[j] <= order:
                    k = self.rank[tuple(p + q for p, q in zip(mi, mj))]
                    triples.append((k, i, j))
        triples.sort()
        arr = np.array(triples, dtype=np.intp)
        self.mul_k = arr[:, 0]
        self.mul_i = arr[:, 1]
        self.mul_j = arr[:, 2]
        self.mul_starts = np.flatnonzero(np.r_[True, np.diff(self.mul_k) != 0])

        # d/dx_v maps order K onto order K-1
        self.deriv = []
        if order >= 1:
            low = _tables(num_vars, order - 1)
            for v in range(num_vars):
                src, fac = [], []
                for m in low.indices:
                    up = list(m)
                    up[v] += 1
                    src.append(self.rank[tuple(up)])
                    fac.append(up[v])
                self.deriv.append((np.array(src, dtype=np.intp), np.array(fac, dtype=float)))


@lru_cache(maxsize=None)
def _tables(num_vars: int, order: int) -> _Tables:
    return _Tables(num_vars, order)


def _expand(c: np.ndarray, batch: tuple[int, ...]) -> np.ndarray:
    own = c.shape[1:]
    if own == batch:
        return c
    pad = len(batch) - len(own)
    return c.reshape((c.shape[0],) + (1,) * pad + own)


class Jet:
    """Dense truncated Taylor expansion; see the module docstring."""

    __slots__ = ("shape", "coeffs")
    __array_ufunc__ = None

    def __init__(self, shape: JetShape, coeffs):
        c = np.asarray(coeffs, dtype=complex)
        if c.shape[0] != shape.size:
            raise ValueError(f"expected {shape.size} coefficients, got {c.shape[0]}")
        self.shape = shape
        self.coeffs = c

    # construction
    @classmethod
    def constant(cls, value, shape: JetShape) -> "Jet":
        v = np.asarray(value, dtype=complex)
        c = np.zeros((shape.size,) + v.shape, dtype=complex)
        c[0] = v
        return cls(shape, c)

    @classmethod
    def variable(cls, value, var_index: int, shape: JetShape) -> "Jet":
        if not 0 <= var_index < shape.num_vars:
            raise IndexError(f"var_index {var_index} out of range for {shape.num_vars} variables")
        jet = cls.constant(value, shape)
        if shape.order >= 1:
            unit = [0] * shape.num_vars
            unit[var_index] = 1
            jet.coeffs[_tables(shape.num_vars, shape.order).rank[tuple(unit)]] = 1.0
        return jet

    # inspection
    @property
    def value(self):
        return self.coeffs[0]

    @property
    def batch(self) -> tuple[int, ...]:
        return self.coeffs.shape[1:]

    @property
    def order(self) -> int:
        return self.shape.order

    def coeff(self, m: Sequence[int]):
        t = _tables(self.shape.num_vars, self.shape.order)
        m = tuple(m)
        if len(m) != self.shape.num_vars:
            raise ValueError("multi-index length does not match num_vars")
        if sum(m) > self.shape.order:
            raise ValueError(f"|m| = {sum(m)} exceeds jet order {self.shape.order}")
        return self.coeffs[t.rank[m]]

    def partial(self, m: Sequence[int]):
        """Return the partial derivative ``d^m f`` at the expansion point."""
        return math.prod(math.factorial(k) for k in m) * self.coeff(m)

    def as_dict(self) -> dict[tuple[int, ...], complex]:
        t = _tables(self.shape.num_vars, self.shape.order)
        return {m: complex(self.coeffs[r]) for r, m in enumerate(t.indices)}

    def __repr__(self):
        return f"Jet(num_vars={self.shape.num_vars}, order={self.shape.order}, value={self.coeffs[0]!r})"

    # shape changes
    def truncate(self, order: int) -> "Jet":
        if order > self.shape.order:
            raise ValueError("cannot raise the order of a jet")
        shape = JetShape(self.shape.num_vars, order)
        return Jet(shape, self.coeffs[: shape.size])

    def diff(self, var_index: int) -> "Jet":
        """Jet of the partial derivative in one variable; the order drops by one."""
        if self.shape.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        src, fac = _tables(self.shape.num_vars, self.shape.order).deriv[var_index]
        c = self.coeffs[src] * fac.reshape((-1,) + (1,) * len(self.batch))
        return Jet(JetShape(self.shape.num_vars, self.shape.order - 1), c)

    # arithmetic
    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.shape != self.shape:
                raise ValueError(f"jet shape mismatch: {self.shape} vs {other.shape}")
            return other
        return Jet.constant(other, self.shape)

    def _scaled(self, other, op):
        v = np.asarray(other, dtype=complex)
        batch = np.broadcast_shapes(self.batch, v.shape)
        return op(_expand(self.coeffs, batch), v.reshape((1,) + v.shape))

    def __add__(self, other):
        o = self._coerce(other)
        batch = np.broadcast_shapes(self.batch, o.batch)
        return Jet(self.shape, _expand(self.coeffs, batch) + _expand(o.coeffs, batch))

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.shape, -self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.shape, self._scaled(other, np.multiply))
        o = self._coerce(other)
        t = _tables(self.shape.num_vars, self.shape.order)
        batch = np.broadcast_shapes(self.batch, o.batch)
        a = _expand(self.coeffs, batch)[t.mul_i]
        b = _expand(o.coeffs, batch)[t.mul_j]
        return Jet(self.shape, np.add.reduceat(a * b, t.mul_starts, axis=0))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.shape, self._scaled(other, np.divide))
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, mu):
        if isinstance(mu, (int, np.integer)) and mu >= 0:
            out = Jet.constant(1.0, self.shape)
            base = self
            k = int(mu)
            while k:
                if k & 1:
                    out = out * base
                k >>= 1
                if k:
                    base = base * base
            return out
        return self.power(mu)

    # composition with scalar functions
    def _compose(self, taylor: list) -> "Jet":
        """Evaluate ``sum_k taylor[k] * (self - self.value)**k`` by Horner."""
        eps = Jet(self.shape, self.coeffs.copy())
        eps.coeffs[0] = 0.0
        out = Jet.constant(taylor[-1], self.shape)
        for k in range(len(taylor) - 2, -1, -1):
            out = out * eps
            out.coeffs[0] = out.coeffs[0] + taylor[k]
        return out

    def _require_nonzero(self, what: str):
        if np.any(self.coeffs[0] == 0):
            raise ZeroDivisionError(f"{what} of a jet with zero constant term")

    def reciprocal(self) -> "Jet":
        self._require_nonzero("reciprocal")
        inv = 1.0 / self.coeffs[0]
        terms, p = [], inv
        for k in range(self.shape.order + 1):
            terms.append(p if k % 2 == 0 else -p)
            p = p * inv
        return self._compose(terms)

    def exp(self) -> "Jet":
        e0 = np.exp(self.coeffs[0])
        return self._compose([e0 / math.factorial(k) for k in range(self.shape.order + 1)])

    def log(self) -> "Jet":
        self._require_nonzero("log")
        a0 = self.coeffs[0]
        terms = [np.log(a0)]
        inv, p = 1.0 / a0, 1.0 / a0
        for k in range(1, self.shape.order + 1):
            terms.append((1.0 if k % 2 else -1.0) * p / k)
            p = p * inv
        return self._compose(terms)

    def power(self, mu) -> "Jet":
        self._require_nonzero("pow")
        a0 = self.coeffs[0]
        mu = complex(mu)
        terms = [np.exp(mu * np.log(a0))]
        inv = 1.0 / a0
        binom = 1.0 + 0j
        for k in range(1, self.shape.order + 1):
            binom = binom * (mu - k + 1) / k
            terms.append(terms[0] * binom * inv**k)
        return self._compose(terms)


def jet_lift(value: Number, var_index: int, shape: JetShape) -> Jet:
    """Coordinate function ``x_var_index`` expanded at ``value``."""
    return Jet.variable(value, var_index, shape)


def jet_const(value: Number, shape: JetShape) -> Jet:
    return Jet.constant(value, shape)


def jet_lift_point(point: Sequence[Number], order: int) -> list[Jet]:
    """Lift every coordinate of ``point`` into jets sharing one shape."""
    shape = JetShape(len(point), order)
    return [Jet.variable(v, i, shape) for i, v in enumerate(point)]


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    if a.shape != b.shape:
        raise ValueError(f"jet shape mismatch: {a.shape} vs {b.shape}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown jet operation {op!r}")


def jet_transcend(a: Jet, fn: str, mu: Number | None = None) -> Jet:
    if fn == "exp":
        return a.exp()
    if fn == "log":
        return a.log()
    if fn == "pow":
        if mu is None:
            raise ValueError("pow needs an exponent")
        return a.power(mu)
    raise ValueError(f"unknown transcendental {fn!r}")


def jet_partial(a: Jet, m: Sequence[int]):
    return a.partial(m)


def multi_indices(num_vars: int, order: int) -> list[tuple[int, ...]]:
    return list(_tables(num_vars, order).indices)


# Helpers that accept either plain complex numbers or jets.

def exp(x):
    return x.exp() if isinstance(x, Jet) else np.exp(x)


def log(x):
    return x.log() if isinstance(x, Jet) else np.log(x)


def power(x, mu):
    if isinstance(x, Jet):
        return x.power(mu)
    return np.exp(complex(mu) * np.log(x))


def value_of(x):
    return x.coeffs[0] if isinstance(x, Jet) else x


def is_jet(x) -> bool:
    return isinstance(x, Jet)


def scalar_power(base: complex, mu: complex) -> complex:
    return cmath.exp(mu * cmath.log(base))


def max_coeff_diff(a: Jet, b: Jet) -> float:
    return float(np.max(np.abs(a.coeffs - b.coeffs)))


def stack_values(jets: Iterable[Jet]) -> np.ndarray:
    return np.array([j.coeffs for j in jets])

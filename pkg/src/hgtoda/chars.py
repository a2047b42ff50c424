"""Partitions, exponent vectors and characters of the Jordan-block group.

An element of the block group J(n) is stored by its coefficients
``(h_0, ..., h_{n-1})`` in the nilpotent basis ``h = sum h_k L^k``.  The
series helpers below work on lists whose entries are complex numbers or
:class:`~hgtoda.tjet.Jet` objects, so the same code produces values and
derivatives.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import tjet


@dataclass(frozen=True)
class Partition:
    blocks: tuple[int, ...]

    def __init__(self, blocks: Sequence[int]):
        blocks = tuple(int(b) for b in blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise ValueError(f"partition blocks must be positive: {blocks}")
        if any(blocks[k] < blocks[k + 1] for k in range(len(blocks) - 1)):
            raise ValueError(f"partition must be non-increasing: {blocks}")
        if sum(blocks) <= 2:
            raise ValueError(f"partition must have N > 2, got N = {sum(blocks)}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def N(self) -> int:
        return sum(self.blocks)

    @property
    def length(self) -> int:
        return len(self.blocks)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for n in self.blocks:
            out.append(acc)
            acc += n
        return out

    def split(self, flat: Sequence) -> list[list]:
        """Cut a length-N sequence into per-block lists."""
        if len(flat) != self.N:
            raise ValueError(f"expected {self.N} entries, got {len(flat)}")
        return [list(flat[o:o + n]) for o, n in zip(self.offsets(), self.blocks)]

    def __str__(self):
        return "(" + ",".join(map(str, self.blocks)) + ")"


class AlphaParams:
    """Exponents ``alpha = (alpha^(1), ..., alpha^(l))`` with block sum -2."""

    SUM_TOL = 1e-12

    def __init__(self, partition: Partition, blocks: Sequence[Sequence[complex]], check: bool = True):
        self.partition = partition
        self.blocks = [tuple(complex(a) for a in b) for b in blocks]
        if [len(b) for b in self.blocks] != list(partition.blocks):
            raise ValueError(f"alpha block lengths {[len(b) for b in self.blocks]} do not match {partition}")
        if check:
            self.validate()

    @classmethod
    def from_flat(cls, partition: Partition, flat: Sequence[complex], check: bool = True) -> "AlphaParams":
        return cls(partition, partition.split(list(flat)), check=check)

    def flat(self) -> list[complex]:
        return [a for b in self.blocks for a in b]

    def validate(self):
        total = sum(b[0] for b in self.blocks)
        if abs(total + 2) > self.SUM_TOL:
            raise ValueError(f"sum of alpha_0 over blocks must be -2, got {total}")
        for i, b in enumerate(self.blocks):
            last = b[-1]
            if len(b) >= 2 and last == 0:
                raise ValueError(f"block {i}: last exponent must be nonzero")
            if len(b) == 1 and last.imag == 0 and float(last.real).is_integer():
                warnings.warn(f"block {i}: exponent {last.real:g} is an integer", stacklevel=2)

    def last(self, i: int) -> complex:
        return self.blocks[i][-1]

    def shift(self, i: int, j: int, m: int = 1) -> "AlphaParams":
        """Raise alpha_0^(i) by m and lower alpha_0^(j) by m."""
        blocks = [list(b) for b in self.blocks]
        blocks[i][0] += m
        blocks[j][0] -= m
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return AlphaParams(self.partition, blocks)

    def __repr__(self):
        return f"AlphaParams({self.partition}, {self.blocks})"


@dataclass
class JordanElement:
    block: int
    coeffs: tuple

    def __post_init__(self):
        if tjet.value_of(self.coeffs[0]) == 0:
            raise ValueError(f"block {self.block}: h_0 must be nonzero")


def series_mul(a: Sequence, b: Sequence) -> list:
    """Product of two truncated T-series of equal length."""
    n = len(a)
    return [sum((a[j] * b[k - j] for j in range(k + 1)), 0 * a[0]) for k in range(n)]


def series_log_tail(h: Sequence) -> list:
    """Coefficients theta_1.. of log(h_0 + h_1 T + ...), without theta_0."""
    n = len(h)
    inv0 = 1 / h[0]
    theta = [None] * n
    for k in range(1, n):
        acc = k * h[k]
        for j in range(1, k):
            acc = acc - j * theta[j] * h[k - j]
        theta[k] = acc * inv0 / k
    return theta[1:]


def series_exp(theta: Sequence) -> list:
    """Coefficients of exp(theta_0 + theta_1 T + ...)."""
    n = len(theta)
    out = [tjet.exp(theta[0])]
    for k in range(1, n):
        acc = 0 * out[0]
        for j in range(1, k + 1):
            acc = acc + j * theta[j] * out[k - j]
        out.append(acc / k)
    return out


def series_inverse(y: Sequence) -> list:
    n = len(y)
    psi0 = 1 / y[0]
    out = [psi0]
    for k in range(1, n):
        acc = 0 * psi0
        for j in range(1, k + 1):
            acc = acc + y[j] * out[k - j]
        out.append(-psi0 * acc)
    return out


def _check_head(v: Sequence, name: str):
    if len(v) == 0:
        raise ValueError(f"{name} must be non-empty")
    if np.any(tjet.value_of(v[0]) == 0):
        raise ValueError(f"{name}_0 must be nonzero")


def theta_coeffs(h: Sequence[complex]) -> list[complex]:
    _check_head(h, "h")
    h = [complex(v) for v in h]
    return [np.log(h[0])] + series_log_tail(h)


def psi_coeffs(y: Sequence[complex]) -> list[complex]:
    _check_head(y, "y")
    return series_inverse([complex(v) for v in y])


def jordan_mul(a: Sequence, b: Sequence) -> list:
    """Product in J(n): the truncated series product."""
    if len(a) != len(b):
        raise ValueError("Jordan elements of different sizes")
    return series_mul(a, b)


def jordan_inverse(a: Sequence) -> list:
    return series_inverse(a)


def block_log_char(h: Sequence, alpha: Sequence[complex], log_h0=None):
    """``alpha_0 log h_0 + sum_k alpha_k theta_k(h)``.

    ``log_h0`` overrides the principal logarithm of ``h_0`` when a caller
    needs a branch continued along a contour.
    """
    if len(h) != len(alpha):
        raise ValueError("block length does not match alpha")
    lg = tjet.log(h[0]) if log_h0 is None else log_h0
    out = alpha[0] * lg
    if len(h) > 1:
        for a_k, t_k in zip(alpha[1:], series_log_tail(h)):
            if a_k != 0:
                out = out + a_k * t_k
    return out


def _as_blocks(h, alpha: AlphaParams) -> list:
    blocks = [e.coeffs if isinstance(e, JordanElement) else e for e in h]
    if len(blocks) != len(alpha.blocks):
        raise ValueError("number of blocks does not match alpha")
    for k, b in enumerate(blocks):
        if len(b) != len(alpha.blocks[k]):
            raise ValueError(f"block {k}: size mismatch")
        if np.any(tjet.value_of(b[0]) == 0):
            raise ValueError(f"block {k}: h_0 is zero")
    return blocks


def log_char(h, alpha: AlphaParams, log_h0: Sequence | None = None):
    blocks = _as_blocks(h, alpha)
    out = 0
    for k, (b, a) in enumerate(zip(blocks, alpha.blocks)):
        out = out + block_log_char(b, a, None if log_h0 is None else log_h0[k])
    return out


def char_eval(h, alpha: AlphaParams) -> complex:
    """Character value: product over blocks of ``h_0^alpha_0 exp(sum alpha_k theta_k)``."""
    blocks = [[complex(v) for v in b] for b in _as_blocks(h, alpha)]
    return complex(np.exp(log_char(blocks, alpha)))


def char_eval_jet(h, alpha: AlphaParams) -> tjet.Jet:
    """Same formula as :func:`char_eval` evaluated in jet arithmetic."""
    return tjet.exp(log_char(h, alpha))

import cmath

import numpy as np
import pytest

from hgtoda import chars
from hgtoda.chars import AlphaParams, Partition


def test_theta_of_one_plus_t_is_log_series():
    th = chars.theta_coeffs([1, 1, 0, 0, 0])
    assert th == pytest.approx([0, 1, -1 / 2, 1 / 3, -1 / 4], abs=1e-15)


def test_theta_of_quadratic():
    # log(1 + T + T^2) = T + T^2/2 - 2T^3/3 + ...
    th = chars.theta_coeffs([1, 1, 1, 0])
    assert th[1:] == pytest.approx([1, 0.5, -2 / 3], abs=1e-15)


def test_psi_inverts_series():
    y = [2.0, 0.5 - 0.1j, 0.3, -0.2j]
    prod = chars.series_mul(chars.psi_coeffs(y), y)
    assert prod == pytest.approx([1, 0, 0, 0], abs=1e-15)


def test_zero_head_rejected():
    with pytest.raises(ValueError):
        chars.theta_coeffs([0, 1])
    with pytest.raises(ValueError):
        chars.psi_coeffs([0, 1])


def test_alpha_sum_condition():
    P = Partition((2, 1, 1))
    AlphaParams.from_flat(P, [-1.0, 0.3, -0.5, -0.5])
    with pytest.raises(ValueError):
        AlphaParams.from_flat(P, [-1.0, 0.3, -0.5, 0.5])


def test_character_of_diagonal_is_monomial():
    P = Partition((1, 1, 1, 1))
    al = AlphaParams.from_flat(P, [-0.3, -0.7, 0.4, -1.4])
    h = [[2.0], [0.5], [1.5 + 0.5j], [3.0]]
    ref = 2.0 ** -0.3 * 0.5 ** -0.7 * (1.5 + 0.5j) ** 0.4 * 3.0 ** -1.4
    assert abs(chars.char_eval(h, al) - ref) < 1e-14


def test_character_homomorphism_on_jordan_block():
    P = Partition((3, 1))
    al = AlphaParams.from_flat(P, [-0.6, 0.3, 1.0, -1.4])
    h1 = [[1.1, 0.2, -0.1], [0.9]]
    h2 = [[0.95 + 0.1j, -0.3, 0.05], [1.2]]
    prod = [chars.jordan_mul(a, b) for a, b in zip(h1, h2)]
    lhs = chars.char_eval(prod, al)
    rhs = chars.char_eval(h1, al) * chars.char_eval(h2, al)
    assert abs(lhs - rhs) <= 1e-13 * abs(rhs)


def test_shift_moves_two_heads():
    P = Partition((2, 2))
    al = AlphaParams.from_flat(P, [0.7, 1, -2.7, 1])
    sh = al.shift(0, 1, 2)
    assert sh.flat() == pytest.approx([2.7, 1, -4.7, 1])

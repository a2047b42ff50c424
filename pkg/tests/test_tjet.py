import numpy as np
import pytest

from hgtoda.tjet import Jet, JetShape, jet_lift_point, multi_indices

# d^k/dx^k [log(2 + x) exp(0.3 x)] at x = 0.4, from mpmath.diff at 30 digits
LOGEXP_DERIVS = [0.98708824502269355018, 0.76591682833154791391, 0.17496617376991137862,
                 0.14044504633982748468, -0.05512613927885137163, 0.14936688205842433905,
                 -0.29968318615791472478]


def test_univariate_derivatives_match_frozen_values():
    (x,) = jet_lift_point([0.4], 6)
    f = (x + 2).log() * (0.3 * x).exp()
    for k, ref in enumerate(LOGEXP_DERIVS):
        assert abs(f.partial([k]) - ref) <= 1e-13 * max(1, abs(ref))


def test_variable_and_constant():
    shape = JetShape(2, 3)
    x = Jet.variable(1.5, 0, shape)
    assert x.value == 1.5
    assert x.partial([1, 0]) == 1
    assert x.partial([0, 1]) == 0
    c = Jet.constant(2.0, shape)
    assert np.all(c.coeffs[1:] == 0)


def test_mixed_partial_of_product():
    x, y = jet_lift_point([0.3, -0.7], 5)
    f = x * x * y * y * y
    assert abs(f.partial([2, 3]) - 12.0) < 1e-13
    assert abs(f.partial([1, 1]) - 2 * 0.3 * 3 * 0.49) < 1e-13


def test_power_matches_scalar_power_and_inverse():
    x, y = jet_lift_point([0.6 + 0.2j, 1.1], 5)
    a = 1.3 + x * y
    mu = 0.37 - 0.2j
    assert abs(a.power(mu).value - complex(1.3 + (0.6 + 0.2j) * 1.1) ** mu) < 1e-14
    one = a.power(mu) * a.power(-mu)
    assert np.max(np.abs(one.coeffs[1:])) < 1e-13
    assert np.max(np.abs((a * a.reciprocal()).coeffs[1:])) < 1e-13


def test_truncate_and_diff_orders():
    x, y = jet_lift_point([0.2, 0.1], 6)
    f = (x * y).exp()
    assert f.truncate(3).order == 3
    g = f.diff(0)
    assert g.order == 5
    assert abs(g.partial([0, 1]) - f.partial([1, 1])) < 1e-14


def test_numpy_scalars_do_not_hijack_jets():
    (x,) = jet_lift_point([1.0], 2)
    out = np.float64(2.0) * x
    assert isinstance(out, Jet)
    assert out.partial([1]) == 2.0


def test_shape_mismatch_is_rejected():
    (x,) = jet_lift_point([1.0], 2)
    (y,) = jet_lift_point([1.0], 3)
    with pytest.raises(ValueError):
        x + y


def test_multi_index_count():
    assert len(multi_indices(2, 12)) == 91
    assert len(multi_indices(6, 2)) == 28

import numpy as np
import pytest

from hgtoda import laplace
from hgtoda.tjet import jet_lift_point

PT = (1.2 + 0.1j, -0.5 + 0.05j)


def _seq(family, n_range=range(-3, 4), **kw):
    M = laplace.family_operator(family, 0.37, -1.21, 0.1, -1.3)
    N0, _ = laplace.normalize(M)
    return laplace.NormalSeq(N0, n_range, PT, **kw)


@pytest.mark.parametrize("family", laplace.FAMILIES)
def test_engine_matches_closed_form_values(family):
    seq = _seq(family)
    for n in range(-3, 4):
        closed = laplace.family_normal(family, 0.37, -1.21, n, 0.1, -1.3)
        assert abs(seq[n].a.value - closed.a.value(PT)) < 1e-9
        assert abs(seq[n].c.value - closed.c.value(PT)) < 1e-9


def test_doubly_confluent_sequence_is_constant():
    seq = _seq("doubly-confluent")
    vals = {(complex(seq[n].a.value), complex(seq[n].c.value)) for n in range(-3, 4)}
    a0, c0 = complex(seq[0].a.value), complex(seq[0].c.value)
    assert all(abs(a - a0) < 1e-12 and abs(c - c0) < 1e-12 for a, c in vals)


def test_toda_residuals():
    seq = _seq("epd")
    for n in range(-2, 3):
        assert laplace.toda_te_residual(seq, n) < 1e-8
        assert laplace.toda_pair_residual(seq, n) < 1e-8


def test_order_budget_is_enforced():
    with pytest.raises(laplace.OrderBudgetError, match="base jet order >= 14"):
        _seq("epd", range(-6, 7))
    _seq("epd", range(-5, 6))


def test_vanishing_invariant_reported():
    a = laplace.ScalarField.from_expr(lambda X, Y: X + Y)
    M = laplace.HyperOp(a, laplace.ScalarField.zero(), laplace.ScalarField.zero())
    with pytest.raises(laplace.VanishingInvariant, match="k_0"):
        laplace.NormalSeq(M, range(-1, 1), PT)


def test_normalize_removes_b():
    M = laplace.family_operator("confluent", 0.37, -1.21, 0.1)
    N0, F = laplace.normalize(M)
    assert N0.is_normal()
    h0, k0 = laplace.invariants(M, PT, 2)
    h1, k1 = laplace.invariants(N0, PT, 2)
    assert np.max(np.abs((h0 - h1).coeffs)) < 1e-12
    assert np.max(np.abs((k0 - k1).coeffs)) < 1e-12


def test_factorization():
    M = laplace.family_operator("epd", 0.37, -1.21)
    x, y = jet_lift_point(list(PT), 4)
    u = (0.3 * x - 0.7j * y).exp() + x * y
    assert laplace.factorization_residual(M, u, PT) < 1e-12


def test_up_then_down_restores_invariants():
    M = laplace.family_operator("epd", 0.37, -1.21)
    back = laplace.laplace_down(laplace.laplace_up(M))
    h0, k0 = laplace.invariants(M, PT, 2)
    h1, k1 = laplace.invariants(back, PT, 2)
    assert np.max(np.abs((h0 - h1).coeffs)) < 1e-10
    assert np.max(np.abs((k0 - k1).coeffs)) < 1e-10


@pytest.mark.parametrize("kind", ["ideal_211", "ideal_22", "ideal_31"])
def test_ideal_identities(kind):
    def f(X):
        return (0.4 * X[0] - 0.3j * X[1] + 0.2 * X[2] * X[3]).exp() + X[0] * X[1] * X[2]

    pt = [0.3, 0.7 + 0.1j, -0.4, 0.9]
    for idx in range(len(laplace.identity_labels(kind))):
        assert laplace.operator_identity_check(kind, f, pt, alpha=[-1.3, 0.4, 0.7, -1.4], which=idx) < 1e-10


def test_reduced_system_shapes():
    assert len(laplace.reduced_system((2, 2), [0.7, 1, -2.7, 1])) > 0
    with pytest.raises(ValueError):
        laplace.reduced_system((1, 1, 1, 1, 1), [0.0] * 5)

import numpy as np
import pytest

from hgtoda import hgf, laplace
from hgtoda.chars import AlphaParams, Partition
from hgtoda.hgf import DomainError, SlicePoint

# preset values at a = 0.4, b = 0.5, c = 1.7 from mpmath at 30 digits
FROZEN = {
    ("gauss", 0.1): 2.217731737602723703,
    ("gauss", 0.5): 2.3549460973123628768,
    ("kummer", 0.7): 2.6285539896224536636,
    ("kummer", 1.5 + 0.2j): 3.3816081514045397233 + 0.24102519155919276827j,
    ("bessel", 1.2): 3.448278275230721375j,
    ("airy", 1.4): 0.51546026918084657138j,
}


@pytest.mark.parametrize("name,x", list(FROZEN))
def test_presets_match_frozen_values(name, x):
    v = hgf.make_preset(name).evaluate(x, 1e-13, 1e-12).value
    ref = FROZEN[(name, x)]
    assert abs(v - ref) <= 1e-10 * abs(ref)


def test_unknown_preset():
    with pytest.raises(ValueError, match="unknown preset"):
        hgf.make_preset("legendre")


@pytest.mark.parametrize("name,x", [("bessel", -0.5), ("gauss", 1.5), ("airy", 5.0)])
def test_domain_guards(name, x):
    with pytest.raises(DomainError):
        hgf.make_preset(name).evaluate(x)


def test_slice_point_off_stratum():
    P = Partition((2, 2))
    with pytest.raises(DomainError):
        SlicePoint(P, [1.0, 0.0, -0.5, 0.6]).check()
    with pytest.raises(DomainError):
        SlicePoint(P, [1.0, 0.8, 1.0, 0.6]).check()


def test_jet_partials_match_finite_differences():
    pr = hgf.make_preset("bessel")
    pt = [1.0, 0.8, -0.5, 0.6]
    x = SlicePoint(pr.partition, pt)
    J = hgf.hgf_integral_slice(x.lifted([1], 1), pr.alpha, None, 1e-13, 1e-12).value
    h = 1e-5
    up = hgf.hgf_eval_slice(SlicePoint(pr.partition, [1.0, 0.8 + h, -0.5, 0.6]), pr.alpha, None, 1e-13, 1e-12)
    dn = hgf.hgf_eval_slice(SlicePoint(pr.partition, [1.0, 0.8 - h, -0.5, 0.6]), pr.alpha, None, 1e-13, 1e-12)
    assert abs(J.partial([1]) - (up - dn) / (2 * h)) < 1e-7


def test_covariance_for_a_jordan_block():
    pr = hgf.make_preset("hermite")
    z = pr.matrix(0.9 + 0.1j)
    h = [[1.05, 0.1 - 0.02j, -0.03], [0.97 + 0.02j]]
    assert hgf.covariance_residual(z, h, pr.alpha, pr.contour, 1e-13, 1e-12) < 1e-10


def test_contiguity_one_pair():
    P = Partition((2, 1, 1))
    al = AlphaParams.from_flat(P, [-4.7, 0.7, 1.3, 1.4])
    x = SlicePoint(P, [2.5, 0.6, 0.0, -1.0])
    assert hgf.contiguity_residual(x, al, 0, 2, None, 1e-13, 1e-12) < 1e-9


def test_reduced_system_annihilates_kummer_preset():
    pr = hgf.make_preset("kummer")
    pt = [2.5, 0.6, 0.0, -1.0]
    F = hgf.hgf_integral_slice(SlicePoint(pr.partition, pt).lifted([0, 1, 2, 3], 2), pr.alpha, None,
                               1e-13, 1e-12).value
    from hgtoda.toda import scaled_residual
    for op in laplace.reduced_system(pr.partition.blocks, pr.alpha.flat()).values():
        assert scaled_residual(op, F, pt) < 1e-9

import math

import numpy as np
import pytest

from hgtoda import quad

GAMMA_07 = 1.2980553326475577  # mpmath.gamma(0.7)
BETA_05_07 = 2.50579557634068  # mpmath.beta(0.5, 0.7)


def test_segment_with_endpoint_singularities():
    v = quad.integrate_nodes(lambda nd: nd.t.real ** -0.5 * nd.tc.real ** -0.3 * nd.ds, quad.Segment(0, 1),
                             1e-13, 1e-12)[0]
    assert abs(v - BETA_05_07) < 1e-12


def test_polynomial_exact():
    r = quad.integrate(lambda s: 3 * s ** 2, quad.Segment(0, 2))
    assert abs(r.value - 8) < 1e-12


def test_circle_residue():
    r = quad.integrate(lambda s: 1 / s, quad.Circle(1.0))
    assert abs(r.value - 2j * math.pi) < 1e-12


def test_hankel_loop_gives_reciprocal_gamma():
    z = 0.7
    r = quad.integrate(lambda s: np.exp(s) * np.exp(-z * np.log(s.astype(complex))), quad.HankelLoop(),
                       1e-13, 1e-12)
    assert abs(r.value - 2j * math.pi / GAMMA_07) < 1e-11


def test_rays_for_gaussian():
    r = quad.integrate(lambda s: np.exp(-s * s), quad.RayPair(math.pi, 0.0), 1e-13, 1e-12)
    assert abs(r.value - math.sqrt(math.pi)) < 1e-11


def test_non_decaying_open_contour_is_reported():
    with pytest.raises(quad.QuadratureError):
        quad.integrate(lambda s: np.ones_like(s), quad.RayPair(math.pi, 0.0))


def test_bad_tolerance():
    with pytest.raises(ValueError):
        quad.integrate(lambda s: s, quad.Segment(0, 1), 0.0, 0.0)

import mpmath as mp
import pytest

from hgtoda import oracles


@pytest.mark.parametrize("z", [0.3, 2.5, 7.1 + 0.4j, -1.3 + 0.2j, 0.5 - 2j])
def test_log_gamma(z):
    assert abs(oracles.gamma(z) - complex(mp.gamma(z))) <= 1e-13 * abs(complex(mp.gamma(z)))


def test_gamma_pole():
    with pytest.raises(ValueError):
        oracles.log_gamma(-2.0)


@pytest.mark.parametrize("x", [0.1, -0.6, 0.5 + 0.5j])
def test_hyp2f1(x):
    ref = complex(mp.hyp2f1(0.4, 0.5, 1.7, x))
    assert abs(oracles.hyp2f1(0.4, 0.5, 1.7, x) - ref) < 1e-14


def test_hyp2f1_outside_disc():
    with pytest.raises(ValueError):
        oracles.hyp2f1(0.4, 0.5, 1.7, 1.2)


@pytest.mark.parametrize("x", [0.7, 2.5 - 0.3j, -3.0])
def test_hyp1f1(x):
    ref = complex(mp.hyp1f1(0.4, 1.7, x))
    assert abs(oracles.hyp1f1(0.4, 1.7, x) - ref) < 1e-13 * max(1, abs(ref))


@pytest.mark.parametrize("nu,z", [(1.7, 2.0), (0.5, 1.3 + 0.4j), (3.0, 4.0)])
def test_bessel(nu, z):
    assert abs(oracles.bessel_j(nu, z) - complex(mp.besselj(nu, z))) < 1e-13


@pytest.mark.parametrize("x", [0.6, 1.4, 2.9])
def test_airy(x):
    assert abs(oracles.airy_ai(x) - float(mp.airyai(x))) < 1e-13


def test_preset_reference_gauss_uses_beta_normalization():
    ref = complex(mp.beta(0.4, 1.3) * mp.hyp2f1(0.4, 0.5, 1.7, 0.3))
    assert abs(oracles.preset_reference("gauss", 0.3) - ref) < 1e-13


def test_no_oracle_for_hermite():
    assert oracles.preset_reference("hermite", 1.0) is None

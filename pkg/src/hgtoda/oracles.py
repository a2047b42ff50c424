"""Series reference values for the classical presets.

These are independent of the contour machinery: power series summed to
machine precision and a Lanczos log-gamma.  They serve as oracles for the
preset integrals.
"""

from __future__ import annotations

import cmath
import math

# g = 7, n = 9 Lanczos coefficients
_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_MAX_TERMS = 4000


def log_gamma(z: complex) -> complex:
    """Log-gamma via the Lanczos approximation, with reflection for Re z < 1/2."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and float(z.real).is_integer():
        raise ValueError(f"gamma has a pole at {z}")
    if z.real < 0.5:
        s = cmath.sin(math.pi * z)
        return cmath.log(math.pi / s) - log_gamma(1 - z)
    z -= 1
    x = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        x += _LANCZOS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma(z: complex) -> complex:
    return cmath.exp(log_gamma(z))


def beta(a: complex, b: complex) -> complex:
    return cmath.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def _sum_series(term_ratio, first: complex) -> complex:
    total, term = first, first
    for k in range(_MAX_TERMS):
        term = term * term_ratio(k)
        total += term
        if abs(term) <= 1e-17 * abs(total) and k > 4:
            return total
    raise ArithmeticError("series did not converge")


def hyp2f1(a: complex, b: complex, c: complex, x: complex) -> complex:
    if abs(x) >= 1:
        raise ValueError("the 2F1 series oracle needs |x| < 1")
    return _sum_series(lambda k: (a + k) * (b + k) / ((c + k) * (k + 1)) * x, 1.0 + 0j)


def hyp1f1(a: complex, c: complex, x: complex) -> complex:
    return _sum_series(lambda k: (a + k) / ((c + k) * (k + 1)) * x, 1.0 + 0j)


def bessel_j(nu: complex, z: complex) -> complex:
    """``J_nu(z)`` from its power series (principal branch of ``(z/2)^nu``)."""
    half = complex(z) / 2
    lead = cmath.exp(nu * cmath.log(half) - log_gamma(nu + 1))
    return _sum_series(lambda k: -half * half / ((k + 1) * (nu + k + 1)), lead)


def airy_ai(x: complex) -> complex:
    x = complex(x)
    c1 = 3 ** (-2 / 3) / gamma(2 / 3)
    c2 = 3 ** (-1 / 3) / gamma(1 / 3)
    x3 = x ** 3
    f = _sum_series(lambda k: x3 / ((3 * k + 2) * (3 * k + 3)), 1.0 + 0j)
    g = _sum_series(lambda k: x3 / ((3 * k + 3) * (3 * k + 4)), x)
    return c1 * f - c2 * g


def preset_reference(name: str, x: complex, a: complex = 0.4, b: complex = 0.5, c: complex = 1.7):
    """Closed-form value of a preset integral, or None when no series oracle is wired."""
    x = complex(x)
    if name == "gauss":
        return beta(a, c - a) * hyp2f1(a, b, c, x)
    if name == "kummer":
        return beta(a, c - a) * hyp1f1(a, c, x)
    if name == "bessel":
        return 2j * math.pi * cmath.exp(c / 2 * cmath.log(x)) * bessel_j(c, 2 * cmath.sqrt(x))
    if name == "airy":
        return 2j * math.pi * airy_ai(x)
    return None

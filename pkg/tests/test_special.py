import numpy as np
import pytest
import scipy.special as sp

from qwclock.special import bessel_j, speed_characteristic_kernel, struve_h
from qwclock.quadrature import composite_gauss_legendre

# double-precision power series loses digits toward the series limit at 30;
# the large-argument asymptotics take over beyond it
RANGES = [(0.01, 10.0, 1e-12), (10.0, 20.0, 1e-8), (20.0, 30.0, 5e-5), (30.1, 60.0, 1e-8)]


@pytest.mark.parametrize("order", [0, 1, 2])
@pytest.mark.parametrize("lo,hi,tol", RANGES)
def test_bessel_matches_scipy(order, lo, hi, tol):
    for x in np.linspace(lo, hi, 23):
        assert abs(bessel_j(order, x) - sp.jv(order, x)) < tol
        assert abs(bessel_j(order, -x) - sp.jv(order, -x)) < tol


@pytest.mark.parametrize("order", [0, 1])
@pytest.mark.parametrize("lo,hi,tol", RANGES)
def test_struve_matches_scipy(order, lo, hi, tol):
    for x in np.linspace(lo, hi, 23):
        assert abs(struve_h(order, x) - sp.struve(order, x)) < tol
        assert abs(struve_h(order, -x) - sp.struve(order, -x)) < tol


def test_order_validation():
    with pytest.raises(ValueError):
        bessel_j(3, 1.0)
    with pytest.raises(ValueError):
        struve_h(2, 1.0)


def test_kernel_at_zero():
    assert speed_characteristic_kernel(0.0) == 1.0 + 0.0j


def test_kernel_small_argument_series():
    T = 1e-3
    value = speed_characteristic_kernel(T)
    assert abs(value - (1.0 + 1j * 8.0 * T / (3.0 * np.pi))) < 1e-6


def test_kernel_conjugate_symmetry():
    for T in (0.7, 5.0, 22.0):
        assert abs(
            speed_characteristic_kernel(-T) - np.conj(speed_characteristic_kernel(T))
        ) < 1e-14


def test_kernel_equals_density_characteristic_function():
    # independent route: quadrature of exp(iTv) against the localized density
    p, w = composite_gauss_legendre(0.0, np.pi / 2)
    integrand = 4.0 * np.sin(p) ** 2 / np.pi
    for T, tol in ((0.5, 1e-12), (3.0, 1e-12), (12.0, 1e-10), (25.0, 1e-6), (38.0, 1e-8)):
        direct = complex(w @ (np.exp(1j * T * np.sin(p)) * integrand))
        assert abs(speed_characteristic_kernel(T) - direct) < tol


def test_kernel_modulus_bounded():
    for T in np.linspace(0.01, 40.0, 200):
        assert abs(speed_characteristic_kernel(T)) <= 1.0 + 1e-10

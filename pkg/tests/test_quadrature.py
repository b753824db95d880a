import numpy as np
import pytest
from scipy import integrate

from polariton.quadrature import filon_sin, filon_weights


def f_smooth(x):
    return x * np.exp(-0.3 * x) / (1 + x * x)


@pytest.mark.parametrize("omega", [0.01, 0.5, 3.0, 40.0])
def test_filon_against_qawo(omega):
    K, n = 20.0, 4000
    x = np.linspace(0, K, n + 1)
    got = filon_sin(f_smooth(x), 0.0, K / n, omega)
    ref = integrate.quad(f_smooth, 0, K, weight="sin", wvar=omega, limit=500)[0]
    assert got == pytest.approx(ref, abs=1e-9)


def test_filon_vector_omega_and_offset():
    x0, K, n = 1.0, 9.0, 2000
    x = x0 + (K - x0) * np.arange(n + 1) / n
    w = np.array([0.2, 1.0, 7.0])
    got = filon_sin(f_smooth(x), x0, (K - x0) / n, w)
    ref = [integrate.quad(f_smooth, x0, K, weight="sin", wvar=o)[0] for o in w]
    assert got.shape == (3,)
    assert np.allclose(got, ref, atol=1e-9)


def test_filon_exact_for_quadratics():
    # Filon interpolates f by parabolas, so quadratic f is integrated exactly
    x = np.linspace(0, 3, 7)
    f = 1 + 2 * x - x * x
    got = filon_sin(f, 0.0, 0.5, 2.3)
    ref = integrate.quad(lambda t: 1 + 2 * t - t * t, 0, 3, weight="sin", wvar=2.3)[0]
    assert got == pytest.approx(ref, abs=1e-12)


def test_weights_continuous_at_series_switch():
    t = 1.0 / 6.0
    below = np.array(filon_weights(t * (1 - 1e-12)))
    above = np.array(filon_weights(t * (1 + 1e-12)))
    assert np.allclose(below, above, rtol=1e-9, atol=1e-12)


def test_filon_needs_even_intervals():
    with pytest.raises(ValueError):
        filon_sin(np.ones(4), 0.0, 0.1, 1.0)

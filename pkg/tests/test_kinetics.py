import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from oracles import cauchy_derivative, z_asymptotic_real, z_mpmath
from polariton.errors import NoConvergence, OutsideRegime, SingularInput
from polariton.kinetics import (
    V_TH_HAT,
    ComplexFrequency,
    fluid_frequency,
    kinetic_residual,
    landau_integral,
    landau_integral_expansion,
    plasma_Z,
    plasma_Z_prime,
    solve_kinetic_root,
)
from polariton.params import ReducedParams

UNDRIVEN = ReducedParams(D_hat=2.0, omega_d_hat=0.0)


def random_disc(n, radius, seed):
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def test_z_at_origin():
    assert abs(plasma_Z(0.0) - 1j * math.sqrt(math.pi)) < 1e-15
    assert plasma_Z_prime(0.0) == pytest.approx(-2.0, abs=1e-15)


def test_z_matches_high_precision_reference():
    pts = np.concatenate([random_disc(200, 10.0, 1), np.linspace(-10, 10, 41) + 0j])
    for z in pts:
        ref = z_mpmath(complex(z))
        assert abs(plasma_Z(z) - ref) <= 1e-10 * abs(ref), z


@pytest.mark.parametrize("x", [8.0, -8.0, 10.0])
def test_z_asymptotic_real_axis(x):
    z = plasma_Z(x)
    ref = z_asymptotic_real(x)
    assert abs(z - ref) <= 1e-10 * abs(ref)
    # the two-term form is off by the next term, 3/(4 x^5)
    two_term = -1 / x - 1 / (2 * x**3)
    assert z.real - two_term == pytest.approx(-3 / (4 * x**5), rel=0.05)


def test_z_ode_on_disc():
    # |Z| reaches e^25 near -5i, so the residual is measured against max(1, |Z|)
    worst = 0.0
    for z in random_disc(1000, 5.0, 7):
        dz = cauchy_derivative(plasma_Z, z)
        res = abs(dz + 2 * (1 + z * plasma_Z(z))) / max(1.0, abs(plasma_Z(z)))
        worst = max(worst, res)
    assert worst < 1e-9


@given(st.floats(-6, 6), st.floats(-4, 4))
def test_z_reflection_symmetry(x, y):
    z = complex(x, y)
    lhs = plasma_Z(-z.conjugate())
    rhs = -plasma_Z(z).conjugate()
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


@pytest.mark.parametrize("k, Omega", [(0.3, 1.2 + 0.4j), (0.8, 0.9 + 0.2j), (1.5, 0.5 + 1.0j)])
def test_landau_integral_matches_direct_quadrature(k, Omega):
    # above the real axis the Landau contour is the real line
    vt = V_TH_HAT
    u = Omega / k

    def dF(v):
        return -v / vt**2 * math.exp(-v * v / (2 * vt * vt)) / (math.sqrt(2 * math.pi) * vt)

    re = integrate.quad(lambda v: (dF(v) / (v - u)).real, -12 * vt, 12 * vt, limit=400)[0]
    im = integrate.quad(lambda v: (dF(v) / (v - u)).imag, -12 * vt, 12 * vt, limit=400)[0]
    ref = complex(re, im) / k**2
    assert abs(landau_integral(k, Omega) - ref) <= 1e-9 * abs(ref)


def test_residual_small_at_fluid_root():
    k = 0.1
    assert abs(kinetic_residual(k, math.sqrt(1 + k * k), UNDRIVEN).value) < 0.05


def test_residual_tends_to_one_at_large_frequency():
    r = kinetic_residual(0.5, 1e4 + 1e3j, ReducedParams(2.0, 1.9))
    assert abs(r.value - 1.0) < 1e-6


def test_residual_singular_inputs():
    with pytest.raises(SingularInput):
        kinetic_residual(0.0, 1.0, UNDRIVEN)
    k = 0.5
    with pytest.raises(SingularInput):
        kinetic_residual(k, -1j * UNDRIVEN.D_hat * k * k, UNDRIVEN)


def test_solver_near_fluid_branch():
    k = 0.2
    root = solve_kinetic_root(k, ComplexFrequency(math.sqrt(1 + k * k), 0.0), UNDRIVEN)
    assert abs(root.re - math.sqrt(1 + k * k)) / math.sqrt(1 + k * k) < 0.05
    assert root.im < 0
    assert abs(kinetic_residual(k, complex(root), UNDRIVEN).value) < 1e-10


def test_solver_is_deterministic():
    a = solve_kinetic_root(0.7, 1.3, UNDRIVEN)
    b = solve_kinetic_root(0.7, 1.3, UNDRIVEN)
    assert a == b


def test_solver_from_zero_guess():
    # observed basin: zero guess lands on the mirror root -omega - i gamma
    try:
        root = solve_kinetic_root(0.5, 0.0, UNDRIVEN)
    except NoConvergence as exc:
        assert exc.last is not None and exc.residual is not None
        return
    assert abs(kinetic_residual(0.5, complex(root), UNDRIVEN).value) < 1e-10
    assert root.im < 0


def test_solver_reports_no_convergence():
    with pytest.raises(NoConvergence) as info:
        solve_kinetic_root(0.5, 1.1, UNDRIVEN, max_iter=1, tol=1e-30)
    assert info.value.residual is not None


def test_solver_rejects_zero_k():
    with pytest.raises(SingularInput):
        solve_kinetic_root(0.0, 1.0, UNDRIVEN)


def test_expansion_examples():
    assert landau_integral_expansion(0.0, 1.0) == 1.0
    assert landau_integral_expansion(1e-8, 1.0) == pytest.approx(1.0, abs=1e-15)
    k, w = 0.2, math.sqrt(1.04)
    exact = landau_integral(k, w)
    assert abs(landau_integral_expansion(k, w) - exact) / abs(exact) < 1e-2
    with pytest.raises(OutsideRegime):
        landau_integral_expansion(1.0, 0.5)


@given(k=st.floats(0.01, 2.0), ratio=st.floats(5.0, 50.0))
def test_expansion_error_is_fourth_order(k, ratio):
    w = ratio * k * V_TH_HAT
    exact = landau_integral(k, w)
    rel = abs(landau_integral_expansion(k, w) - exact) / abs(exact)
    assert rel <= 20.0 * ratio**-4


def test_oracle_equivalence_improves_with_smaller_k():
    devs = []
    for k in (0.2, 0.1, 0.05):
        w = float(fluid_frequency(k))
        root = solve_kinetic_root(k, w, UNDRIVEN)
        devs.append(abs(root.re - w) / w)
    assert devs[0] <= 0.05
    assert devs[0] > devs[1] > devs[2]


@pytest.mark.parametrize("k", [0.05, 0.1, 0.2, 0.4, 0.7, 1.0, 1.5])
def test_undriven_roots_are_damped(k):
    root = solve_kinetic_root(k, float(fluid_frequency(k)), UNDRIVEN)
    assert root.im < 0

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_min
from polariton.dispersion import (
    RotonKind,
    critical_omega_d,
    find_roton,
    growth_rate,
    growth_rate_limit,
    omega_sq,
    phase_scan,
    spectrum,
)
from polariton.errors import SingularInput
from polariton.kinetics import solve_kinetic_root
from polariton.params import ReducedParams

FIG = 2.0  # D_hat used in the figures
D_values = st.floats(0.1, 10.0)


def rp(wd, D=FIG):
    return ReducedParams(D, wd)


def naive_omega_sq(k, p):
    """Term-by-term transcription used as a cross-check of the stable form."""
    return (1 + k * k) * (1 - p.omega_d_hat * p.D_hat * k * k / (1 + p.D_hat**2 * k**4))


@given(D=D_values, wd=st.floats(0, 3))
def test_gap_at_origin(D, wd):
    assert omega_sq(0.0, rp(wd, D)) == 1.0


def test_critical_point_is_exact_zero():
    assert omega_sq(1 / math.sqrt(2), rp(2.0)) == pytest.approx(0.0, abs=1e-15)


def test_unstable_example():
    assert omega_sq(1 / math.sqrt(2), rp(2.2)) == pytest.approx(-0.15, abs=1e-14)


@given(D=D_values, wd=st.floats(0, 3), k=st.floats(0, 20))
def test_stable_form_matches_transcription(D, wd, k):
    p = rp(wd, D)
    assert omega_sq(k, p) == pytest.approx(naive_omega_sq(k, p), rel=1e-12, abs=1e-12)


@given(D=D_values, wd=st.floats(0, 3))
def test_large_k_recovery(D, wd):
    p = rp(wd, D)
    k = np.array([1e2, 1e3, 1e4])
    dev = np.abs(omega_sq(k, p) / (1 + k * k) - 1)
    # diffusive correction is omega_d x/(1+x^2) <= omega_d/(D k^2)
    assert np.all(dev <= wd / (D * k * k) + 1e-15)


@given(D=D_values, k=st.floats(0.01, 5), wd=st.floats(0, 2.9), dw=st.floats(0.01, 1))
def test_monotone_softening(D, k, wd, dw):
    assert omega_sq(k, rp(wd + dw, D)) < omega_sq(k, rp(wd, D))


def test_growth_examples():
    assert growth_rate(1.0, rp(0.0)) == pytest.approx(-0.1335240823739272, rel=1e-14)
    # 3/sqrt(8 pi) * 0.3^-3 * exp(-3/0.18)
    assert growth_rate(0.3, rp(0.0)) == pytest.approx(-1.2805489832905947e-06, rel=1e-12)
    assert abs(growth_rate(0.3, rp(0.0))) < 1e-5 * abs(growth_rate(1.0, rp(0.0)))
    assert growth_rate(1.0, rp(1.9)) == pytest.approx(0.38 - 0.1335240823739272, rel=1e-13)
    assert growth_rate(1.0, rp(1.9)) > 0


def test_growth_singular_and_limit():
    with pytest.raises(SingularInput):
        growth_rate(0.0, rp(1.0))
    assert growth_rate(1e-3, rp(1.5)) == pytest.approx(growth_rate_limit(rp(1.5)), rel=1e-5)


def test_find_roton_classification():
    assert find_roton(rp(0.0)).kind is RotonKind.NO_ROTON
    zero = find_roton(rp(2.0))
    assert zero.kind is RotonKind.ROTON_ZERO
    assert zero.k_rot == pytest.approx(1 / math.sqrt(2), abs=1e-8)
    assert abs(zero.omega_sq_rot) <= 1e-6
    assert find_roton(rp(2.2)).kind is RotonKind.UNSTABLE


def test_find_roton_numeric_minimum():
    res = find_roton(rp(1.9), refine_tol=1e-10)
    assert res.kind is RotonKind.ROTON
    xb, fb = brute_min(lambda k: omega_sq(k, rp(1.9)), 0.6, 0.8)
    assert res.k_rot == pytest.approx(xb, abs=2e-7)
    assert res.omega_sq_rot <= fb + 1e-13
    assert res.omega_sq_rot == pytest.approx(fb, abs=1e-10)
    assert res.curvature > 0
    assert 1e-3 < res.k_rot < 3.0
    assert res.omega_rot == pytest.approx(math.sqrt(res.omega_sq_rot))


def test_roton_plateau_is_not_roton():
    # ω² is increasing from k=0 when omega_d D < 1 and there is no dip at all
    assert find_roton(rp(0.1)).kind is RotonKind.NO_ROTON


def test_find_roton_validates():
    with pytest.raises(ValueError):
        find_roton(rp(1.0), grid_n=8)
    with pytest.raises(ValueError):
        find_roton(rp(1.0), k_range=(1.0, 0.5))


@pytest.mark.parametrize("D", [2.0, 0.5, 10.0])
def test_critical_omega_d_examples(D):
    assert critical_omega_d(D) == pytest.approx(2.0, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(D=D_values)
def test_critical_universality(D):
    assert critical_omega_d(D, tol=1e-7) == pytest.approx(2.0, abs=1e-6)


@settings(max_examples=25, deadline=None)
@given(D=st.floats(0.2, 10.0))
def test_roton_zero_location(D):
    res = find_roton(rp(2.0, D), k_range=(1e-3, max(3.0, 3 / math.sqrt(D))))
    assert res.kind is RotonKind.ROTON_ZERO
    assert res.k_rot == pytest.approx(1 / math.sqrt(D), abs=1e-8)


def test_spectrum_baseline():
    k = np.linspace(0.01, 3, 50)
    pts = spectrum(rp(0.0), k)
    assert len(pts) == 50
    assert np.allclose([p.omega for p in pts], np.sqrt(1 + k * k), rtol=1e-14)
    assert all(p.unstable_rate == 0 for p in pts)


def test_spectrum_softening_and_empty():
    k = np.linspace(0.01, 3, 300)
    m199 = min(p.omega_sq for p in spectrum(rp(1.99), k))
    m19 = min(p.omega_sq for p in spectrum(rp(1.9), k))
    assert m199 < m19
    assert spectrum(rp(1.0), []) == []


def test_spectrum_point_invariants():
    for p in spectrum(rp(2.2), np.linspace(0.05, 2, 60)):
        if p.omega_sq >= 0:
            assert p.unstable_rate == 0 and p.omega == pytest.approx(math.sqrt(p.omega_sq))
        else:
            assert p.omega == 0 and p.unstable_rate == pytest.approx(math.sqrt(-p.omega_sq))


def test_spectrum_rejects_bad_grid():
    with pytest.raises(ValueError):
        spectrum(rp(1.0), [0.3, 0.2])
    with pytest.raises(ValueError):
        spectrum(rp(1.0), [0.0, 0.2])


def test_phase_scan_boundary():
    table = phase_scan((0.2, 10.0), (0.0, 3.0), 8, 31)
    wds = table.omega_d_values
    i2 = int(np.argmin(np.abs(wds - 2.0)))
    for i, wd in enumerate(wds):
        kinds = table.kinds[i]
        if wd < 2.0 - 1e-9:
            assert all(k.stable for k in kinds)
        elif i == i2:
            assert all(k is RotonKind.ROTON_ZERO for k in kinds)
        else:
            assert all(k is RotonKind.UNSTABLE for k in kinds)
    step = wds[1] - wds[0]
    for j in range(len(table.D_values)):
        assert abs(table.first_unstable(j) - 2.0) <= step


def test_phase_scan_rows():
    assert all(k.stable for k in phase_scan((0.5, 10), (1.0, 1.0), 5, 1).kinds[0])
    assert all(k is RotonKind.UNSTABLE for k in phase_scan((0.5, 10), (2.2, 2.2), 5, 1).kinds[0])
    single = phase_scan((2, 2), (1.9, 1.9), 1, 1)
    assert list(single.rows()) == [(2.0, 1.9, RotonKind.ROTON)]


@pytest.mark.parametrize("k", [0.05, 0.1, 0.2])
def test_fluid_branch_against_kinetic_root(k):
    w = math.sqrt(omega_sq(k, rp(0.0)))
    root = solve_kinetic_root(k, w, rp(0.0))
    assert abs(root.re - w) / w <= 0.05

"""Static structure factor and pair correlation from the polariton branch.

The structure factor follows from the finite-temperature Feynman relation.
In reduced units the classical form is ``S = k^2/omega^2``; with the
quantumness ``theta = hbar omega_p/(k_B T)`` the full form is::

    S = theta k^2 / (6 omega) * coth(theta omega / 2)

whose ``theta -> 0`` limit is ``k^2/(3 omega^2)``, a factor 3 below the
classical form (``v_th^2`` versus ``u_s^2``).  Both are provided; the
classical one is the default.

Pair correlation
----------------
``g(r) = 1 + (P/r) int_0^inf k sin(kr) [S(k) - 1] dk`` with ``P = 1/pi^2`` by
default.  For large k, ``S - 1 -> -(1 - omega_d/D)/k^2``, so the raw
integrand only decays like ``sin(kr)/k``.  We subtract the Debye-like
reference ``S_ref = 1 - A/(1 + k^2)``, ``A = 1 - omega_d/D``, whose transform
is closed form, ``int k sin(kr)/(1+k^2) dk = (pi/2) e^{-r}``, and integrate
the remainder (decaying like ``k^-4``) with Filon's rule on ``[0, k_max]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .dispersion import ROTON_ZERO_TOL, min_omega_sq, omega_sq
from .errors import QuadratureFailure, UnstableMode, ZeroFrequency
from .params import ReducedParams
from .quadrature import filon_sin

PI2_PREFACTOR = 1.0 / math.pi**2


class StructureForm(str, enum.Enum):
    CLASSICAL = "classical"
    COTH = "coth"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class StructureTable:
    k_hat: np.ndarray
    S: np.ndarray
    form: StructureForm
    theta: float
    divergent: np.ndarray  # True where omega vanished; S holds +inf there


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for the sine transform in :func:`pair_correlation`.

    ``dk`` is the Filon step; ``k_max/dk`` is rounded up to a multiple of 4 so
    the half-resolution estimate uses the same end point.
    """

    k_max: float = 50.0
    dk: float = 1e-3
    tol: float = 1e-4
    prefactor: float = PI2_PREFACTOR
    err_floor: float = 1e-12
    chunk: int = 64

    def __post_init__(self):
        if not (self.k_max > 0 and self.dk > 0 and self.tol > 0):
            raise ValueError("k_max, dk and tol must be positive")

    def grid(self):
        n = int(math.ceil(self.k_max / self.dk))
        n += (-n) % 4
        return np.linspace(0.0, self.k_max, n + 1)


@dataclass(frozen=True)
class CorrelationTable:
    r: np.ndarray
    g: np.ndarray
    quadrature_error: np.ndarray
    k_max: float
    normalization: float
    failures: list = field(default_factory=list)


def _coerce_form(form):
    return form if isinstance(form, StructureForm) else StructureForm(str(form).lower())


def _structure_values(k, rp, form):
    w2 = np.atleast_1d(omega_sq(k, rp))
    kk = np.atleast_1d(k)
    if np.any(w2 < -ROTON_ZERO_TOL):
        bad = kk[w2 < -ROTON_ZERO_TOL]
        raise UnstableMode(
            f"omega^2 < 0 at k_hat={bad[0]:g}: structure factor undefined for unstable modes"
        )
    zero = (np.abs(w2) <= ROTON_ZERO_TOL) & (kk > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        if form is StructureForm.CLASSICAL:
            S = kk * kk / w2
        else:
            w = np.sqrt(np.maximum(w2, 0.0))
            if rp.theta == 0.0:
                S = kk * kk / (3.0 * w2)
            else:
                S = rp.theta * kk * kk / (6.0 * w * np.tanh(0.5 * rp.theta * w))
    S = np.where(kk == 0, 0.0, S)
    S = np.where(zero, np.inf, S)
    return S, zero


def structure_factor(k_hat: float, rp: ReducedParams, form=StructureForm.CLASSICAL) -> float:
    form = _coerce_form(form)
    if k_hat < 0:
        raise ValueError("k_hat must be >= 0")
    S, zero = _structure_values(np.array([float(k_hat)]), rp, form)
    if zero[0]:
        raise ZeroFrequency(f"omega vanishes at k_hat={k_hat:g}; S diverges")
    return float(S[0])


def structure_table(rp: ReducedParams, k_grid, form=StructureForm.CLASSICAL) -> StructureTable:
    """Tabulate S; vanishing frequencies become a flagged ``+inf``."""
    form = _coerce_form(form)
    k = np.asarray(k_grid, dtype=float)
    if k.size and np.any(k < 0):
        raise ValueError("k grid must be non-negative")
    if k.size == 0:
        empty = np.empty(0)
        return StructureTable(empty, empty, form, rp.theta, np.zeros(0, dtype=bool))
    S, zero = _structure_values(k, rp, form)
    return StructureTable(k, S, form, rp.theta if form is StructureForm.COTH else 0.0, zero)


def debye_correlation(r, prefactor=PI2_PREFACTOR, amplitude=1.0):
    """Transform of ``S - 1 = -amplitude/(1 + k^2)``: ``1 - P A (pi/2) e^{-r}/r``."""
    r = np.asarray(r, dtype=float)
    return 1.0 - prefactor * amplitude * 0.5 * math.pi * np.exp(-r) / r


def _require_stable(rp):
    if min_omega_sq(rp)[1] <= ROTON_ZERO_TOL:
        raise UnstableMode(
            f"omega_d_hat={rp.omega_d_hat:g} is at or beyond the roton instability; "
            "g(r) is undefined"
        )


def _correlation(r, remainder, amplitude, quad):
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r <= 0):
        raise ValueError("r must be > 0")
    k = quad.grid()
    h = k[1] - k[0]
    rem = remainder(k)
    f = k * rem
    tail_f = abs(f[-1])

    I_h = np.empty_like(r)
    I_2h = np.empty_like(r)
    for start in range(0, r.size, quad.chunk):
        sl = slice(start, start + quad.chunk)
        I_h[sl] = filon_sin(f, 0.0, h, r[sl])
        I_2h[sl] = filon_sin(f[::2], 0.0, 2 * h, r[sl])

    g = debye_correlation(r, quad.prefactor, amplitude) + quad.prefactor * I_h / r
    # discretization: full h vs 2h difference; truncation: 2 k|rem| / r at k_max
    err = abs(quad.prefactor) / r * (np.abs(I_h - I_2h) + 2.0 * tail_f / r)
    err = np.maximum(err, quad.err_floor)
    return g, err


def _classical_parts(rp):
    amplitude = 1.0 - rp.omega_d_hat / rp.D_hat

    def remainder(k):
        S, _ = _structure_values(k, rp, StructureForm.CLASSICAL)
        return (S - 1.0) + amplitude / (1.0 + k * k)

    return remainder, amplitude


def pair_correlation(
    r: float,
    rp: ReducedParams,
    quad: QuadratureConfig = QuadratureConfig(),
    structure=None,
    tail_amplitude: float | None = None,
):
    """Return ``(g(r), error_estimate)``.

    By default uses the classical structure factor of ``rp``.  A custom
    ``structure(k_array) -> S_array`` may be injected; its large-k behaviour
    ``S - 1 ~ -tail_amplitude/k^2`` (default 0) is then handled analytically.
    """
    g, err = correlation_arrays([r], rp, quad, structure, tail_amplitude)
    if err[0] > quad.tol:
        raise QuadratureFailure(
            f"g(r={r:g}) error estimate {err[0]:.3g} exceeds tol {quad.tol:g}",
            failures=[(0, float(r), float(err[0]))],
        )
    return float(g[0]), float(err[0])


def correlation_arrays(r, rp, quad=QuadratureConfig(), structure=None, tail_amplitude=None):
    """Vectorized core of :func:`pair_correlation`, without the tolerance check."""
    if structure is None:
        _require_stable(rp)
        remainder, amplitude = _classical_parts(rp)
    else:
        amplitude = 0.0 if tail_amplitude is None else float(tail_amplitude)

        def remainder(k):
            return (np.asarray(structure(k), dtype=float) - 1.0) + amplitude / (1.0 + k * k)

    return _correlation(r, remainder, amplitude, quad)


def correlation_scan(rp: ReducedParams, r_grid, quad: QuadratureConfig = QuadratureConfig()):
    r = np.asarray(r_grid, dtype=float)
    if r.size == 0:
        empty = np.empty(0)
        return CorrelationTable(empty, empty, empty, quad.k_max, quad.prefactor)
    g, err = correlation_arrays(r, rp, quad)
    failures = [(int(i), float(r[i]), float(err[i])) for i in np.flatnonzero(err > quad.tol)]
    if failures:
        i, ri, e = failures[0]
        raise QuadratureFailure(
            f"{len(failures)} point(s) exceed tol {quad.tol:g}; first at index {i} "
            f"(r={ri:g}, err={e:.3g})",
            failures=failures,
        )
    return CorrelationTable(r, g, err, quad.k_max, quad.prefactor)


def correlation_maxima(r, g):
    """Positions of interior local maxima of a sampled ``g``."""
    g = np.asarray(g)
    idx = np.flatnonzero((g[1:-1] > g[:-2]) & (g[1:-1] >= g[2:])) + 1
    return np.asarray(r)[idx]


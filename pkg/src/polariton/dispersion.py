"""Fluid polariton branch: frequency, growth rate, rotons and stability.

With ``x = D_hat k_hat^2`` the real part of the dispersion is::

    omega^2 = (1 + k^2) (1 - omega_d x / (1 + x^2))

and since ``max_x x/(1+x^2) = 1/2`` (at ``x = 1``) the mode first softens to
zero at ``omega_d = 2`` regardless of ``D_hat``, at ``k = 1/sqrt(D_hat)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularInput
from .optimize import bisect_threshold, golden_section
from .params import ReducedParams

LANDAU_PREFACTOR = 3.0 / math.sqrt(8.0 * math.pi)
ROTON_ZERO_TOL = 1e-6


class RotonKind(str, enum.Enum):
    NO_ROTON = "NoRoton"
    ROTON = "Roton"
    ROTON_ZERO = "RotonZero"
    UNSTABLE = "Unstable"

    def __str__(self):
        return self.value

    @property
    def stable(self):
        return self in (RotonKind.NO_ROTON, RotonKind.ROTON)


@dataclass(frozen=True)
class DispersionPoint:
    k_hat: float
    omega_sq: float
    omega: float
    growth: float
    unstable_rate: float


@dataclass(frozen=True)
class RotonResult:
    kind: RotonKind
    k_rot: float
    omega_rot: float
    omega_sq_rot: float
    curvature: float

    @property
    def unstable_rate(self):
        return math.sqrt(-self.omega_sq_rot) if self.omega_sq_rot < 0 else 0.0


def omega_sq(k_hat, rp: ReducedParams):
    """Squared frequency ``omega^2/omega_p^2``; scalar or array ``k_hat``.

    The diffusive factor is evaluated as ``((1-x)^2 + (2-omega_d) x)/(1+x^2)``
    so that the double zero at ``x = 1``, ``omega_d = 2`` carries full
    relative precision.
    """
    k = np.asarray(k_hat, dtype=float)
    x = rp.D_hat * k * k
    factor = ((1.0 - x) ** 2 + (2.0 - rp.omega_d_hat) * x) / (1.0 + x * x)
    out = (1.0 + k * k) * factor
    return float(out) if out.ndim == 0 else out


def growth_rate(k_hat, rp: ReducedParams):
    """Growth (>0) or damping (<0) rate in units of omega_p.

    Diffusive drive ``(omega_d/2)(1+k^2)/(1+D^2 k^4)`` minus the Landau term
    ``3/sqrt(8 pi) k^-3 exp(-3/(2k^2))``.  Raises :class:`SingularInput` at
    ``k = 0``; the limit there is :func:`growth_rate_limit`.
    """
    k = np.asarray(k_hat, dtype=float)
    if np.any(k <= 0):
        raise SingularInput("growth rate is singular at k_hat <= 0; use growth_rate_limit")
    drive = 0.5 * rp.omega_d_hat * (1.0 + k * k) / (1.0 + (rp.D_hat * k * k) ** 2)
    with np.errstate(over="ignore", under="ignore"):
        landau = LANDAU_PREFACTOR * np.exp(-1.5 / (k * k)) / k**3
    out = drive - landau
    return float(out) if out.ndim == 0 else out


def growth_rate_limit(rp: ReducedParams) -> float:
    """``lim_{k->0}`` of :func:`growth_rate`."""
    return 0.5 * rp.omega_d_hat


def _point(k, w2, g):
    if w2 >= 0:
        return DispersionPoint(k, w2, math.sqrt(w2), g, 0.0)
    return DispersionPoint(k, w2, 0.0, g, math.sqrt(-w2))


def _check_grid(k_grid):
    k = np.asarray(k_grid, dtype=float)
    if k.ndim != 1:
        raise ValueError("k grid must be one-dimensional")
    if k.size and (np.any(~np.isfinite(k)) or np.any(k <= 0)):
        raise ValueError("k grid must be finite and strictly positive")
    if k.size > 1 and np.any(np.diff(k) <= 0):
        raise ValueError("k grid must be strictly increasing")
    return k


def spectrum(rp: ReducedParams, k_grid) -> list[DispersionPoint]:
    k = _check_grid(k_grid)
    if k.size == 0:
        return []
    w2 = omega_sq(k, rp)
    g = growth_rate(k, rp)
    return [_point(float(a), float(b), float(c)) for a, b, c in zip(k, np.atleast_1d(w2), np.atleast_1d(g))]


def _curvature(rp, k):
    h = 1e-4 * max(1.0, k)
    lo = max(k - h, 0.5 * k)
    hi = 2 * k - lo
    h = k - lo
    return (omega_sq(hi, rp) - 2.0 * omega_sq(k, rp) + omega_sq(lo, rp)) / (h * h)


def _refined_minimum(rp, k, f, refine_tol):
    """Grid argmin refined by golden section on the neighbouring cells."""
    i = int(np.argmin(f))
    if 0 < i < len(k) - 1:
        k_min, f_min, _ = golden_section(
            lambda q: omega_sq(q, rp), k[i - 1], k[i + 1], tol=refine_tol
        )
        if f_min > f[i]:
            k_min, f_min = k[i], f[i]
    else:
        k_min, f_min = k[i], f[i]
    return i, float(k_min), float(f_min)


def find_roton(
    rp: ReducedParams,
    k_range=(1e-3, 3.0),
    grid_n: int = 2000,
    refine_tol: float = 1e-10,
    zero_tol: float = ROTON_ZERO_TOL,
) -> RotonResult:
    """Locate and classify the roton minimum of ``omega^2`` on ``k_range``.

    A roton is an interior minimum lying below the ``k -> 0`` gap value 1
    (and hence below every point preceding it).  The minimum's value then
    decides between ``Roton`` (> zero_tol), ``RotonZero`` (|.| <= zero_tol)
    and ``Unstable`` (< -zero_tol).  Negative ``omega^2`` anywhere on the
    range is ``Unstable`` even at an endpoint.
    """
    lo, hi = k_range
    if not (0 < lo < hi):
        raise ValueError("k_range must satisfy 0 < lo < hi")
    if grid_n < 16:
        raise ValueError("grid_n must be >= 16")
    k = np.linspace(lo, hi, grid_n)
    f = omega_sq(k, rp)
    i, k_min, f_min = _refined_minimum(rp, k, f, refine_tol)
    interior = 0 < i < grid_n - 1
    nan = float("nan")

    if f_min < -zero_tol:
        kind = RotonKind.UNSTABLE
    elif not interior or f_min >= 1.0 or f[-1] <= f_min:
        return RotonResult(RotonKind.NO_ROTON, nan, nan, nan, nan)
    elif abs(f_min) <= zero_tol:
        kind = RotonKind.ROTON_ZERO
    else:
        kind = RotonKind.ROTON
    return RotonResult(
        kind=kind,
        k_rot=k_min,
        omega_rot=math.sqrt(max(f_min, 0.0)),
        omega_sq_rot=f_min,
        curvature=float(_curvature(rp, k_min)),
    )


def min_omega_sq(rp: ReducedParams, grid_n: int = 2000, refine_tol: float = 1e-12):
    """Global minimum of ``omega^2`` over all k > 0.

    Scans ``x = D k^2`` log-uniformly over ``[1e-4, 1e4]``, which brackets the
    only possible interior minimum near ``x = 1`` for any ``D_hat``.
    Returns ``(k_min, omega_sq_min)``.
    """
    k = np.sqrt(np.geomspace(1e-4, 1e4, grid_n) / rp.D_hat)
    f = omega_sq(k, rp)
    _, k_min, f_min = _refined_minimum(rp, k, f, refine_tol)
    return k_min, f_min


def critical_omega_d(D_hat: float, tol: float = 1e-9) -> float:
    """Smallest diffusion frequency at which ``min_k omega^2`` reaches zero."""
    if not D_hat > 0:
        raise ValueError("D_hat must be > 0")

    def unstable(wd):
        return min_omega_sq(ReducedParams(D_hat, wd))[1] < 0.0

    hi = 4.0
    while not unstable(hi):
        hi *= 2.0
    return bisect_threshold(unstable, 0.0, hi, tol=tol)


def roton_k_range(D_hat, k_max=3.0):
    """Default scan range widened so that ``1/sqrt(D_hat)`` stays interior."""
    return (1e-3, max(k_max, 3.0 / math.sqrt(D_hat)))


@dataclass(frozen=True)
class PhaseTable:
    D_values: np.ndarray
    omega_d_values: np.ndarray
    kinds: list  # kinds[i][j] for omega_d_values[i], D_values[j]

    def rows(self):
        for i, wd in enumerate(self.omega_d_values):
            for j, D in enumerate(self.D_values):
                yield float(D), float(wd), self.kinds[i][j]

    def first_unstable(self, j):
        """Smallest scanned omega_d that is not stable in column ``j``."""
        for i, wd in enumerate(self.omega_d_values):
            if not self.kinds[i][j].stable:
                return float(wd)
        return None


def phase_scan(D_range, wd_range, n: int, m: int, grid_n: int = 2000) -> PhaseTable:
    """Classify stability over an ``n`` (D_hat) by ``m`` (omega_d) grid."""
    if n < 1 or m < 1:
        raise ValueError("grid sizes must be >= 1")
    D_values = np.linspace(D_range[0], D_range[1], n)
    wd_values = np.linspace(wd_range[0], wd_range[1], m)
    if np.any(D_values <= 0) or np.any(wd_values < 0):
        raise ValueError("D_hat must be > 0 and omega_d >= 0")
    kinds = [
        [
            find_roton(ReducedParams(float(D), float(wd)), roton_k_range(D), grid_n).kind
            for D in D_values
        ]
        for wd in wd_values
    ]
    return PhaseTable(D_values, wd_values, kinds)

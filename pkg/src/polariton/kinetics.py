"""Kinetic (Vlasov) dispersion relation of the atom-photon polariton.

Reduced units throughout: Omega in omega_p, k in 1/lambda_D.  Since
``lambda_D = u_s/omega_p`` and ``u_s = sqrt(3) v_th`` the reduced thermal
speed is ``1/sqrt(3)``.

Velocity integral
-----------------
For k along z only the 1D Maxwellian ``F(v) = exp(-v^2/2v_th^2)/(sqrt(2 pi) v_th)``
survives the transverse integrations.  With ``t = v/(sqrt(2) v_th)`` and
``zeta = Omega/(sqrt(2) k v_th)``::

    int F'(v) / (v - Omega/k) dv = -(1/(sqrt(pi) v_th^2)) int t e^{-t^2}/(t - zeta) dt
                                 = -(1 + zeta Z(zeta)) / v_th^2
                                 =  Z'(zeta) / (2 v_th^2)

taken on the Landau contour, which is exactly what the analytic
continuation of Z provides.  In reduced units ``1/(2 v_th^2) = 3/2``, so the
residual whose zeros are the modes reads::

    R(k, Omega) = 1 - (1/k^2) (1 + omega_d/(i Omega - D k^2)) * (3/2) Z'(zeta)

For ``|zeta| >> 1``, ``Z' ~ 1/zeta^2 + 3/(2 zeta^4) + 15/(4 zeta^6)`` and the
response ``(3/2) Z'/k^2`` becomes ``(1/Omega^2)(1 + k^2/Omega^2 + ...)``,
the fluid (principal-value) expansion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import wofz

from .errors import NoConvergence, OutsideRegime, SingularInput
from .params import ReducedParams

SQRT_PI = math.sqrt(math.pi)
V_TH_HAT = 1.0 / math.sqrt(3.0)

# minimum |Omega|/(k v_th) for the two-term fluid expansion
EXPANSION_RATIO = 3.0


@dataclass(frozen=True)
class ComplexFrequency:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError("complex frequency components must be finite")

    @classmethod
    def from_complex(cls, z):
        return cls(float(z.real), float(z.imag))

    def __complex__(self):
        return complex(self.re, self.im)


@dataclass(frozen=True)
class KineticResidual:
    value: complex
    zeta: complex


def plasma_Z(zeta):
    """Plasma dispersion function on the Landau contour.

    ``Z(zeta) = i sqrt(pi) w(zeta)`` with ``w`` the Faddeeva function, which
    is entire and therefore already the Landau-continued branch in the lower
    half plane.  Accepts scalars or arrays.

    Symmetry: ``Z(-conj(zeta)) = -conj(Z(zeta))``.
    """
    return 1j * SQRT_PI * wofz(zeta)


def plasma_Z_prime(zeta):
    """Derivative of Z from the identity ``Z' = -2 (1 + zeta Z)``."""
    return -2.0 * (1.0 + zeta * plasma_Z(zeta))


def _zeta(k_hat, Omega_hat):
    return Omega_hat / (math.sqrt(2.0) * k_hat * V_TH_HAT)


def landau_integral(k_hat, Omega_hat):
    """Exact Maxwellian response ``(1/k^2) int F'/(v - Omega/k) dv``.

    This is the quantity multiplied by the diffusive factor in the residual;
    its fluid limit is :func:`landau_integral_expansion`.
    """
    if k_hat <= 0:
        raise SingularInput("k_hat must be > 0")
    zeta = _zeta(k_hat, Omega_hat)
    return 1.5 * complex(plasma_Z_prime(zeta)) / k_hat**2


def landau_integral_expansion(k_hat, Omega_hat):
    if k_hat < 0:
        raise OutsideRegime("k_hat must be >= 0")
    Omega_hat = complex(Omega_hat)
    if Omega_hat == 0:
        raise OutsideRegime("expansion requires Omega != 0")
    if k_hat > 0 and abs(Omega_hat) / (k_hat * V_TH_HAT) <= EXPANSION_RATIO:
        raise OutsideRegime(
            f"|Omega|/(k v_th) = {abs(Omega_hat) / (k_hat * V_TH_HAT):.3g} "
            f"is not above {EXPANSION_RATIO}"
        )
    w2 = Omega_hat * Omega_hat
    # 3 k^2 <v_z^2> = k^2 in reduced units
    return (1.0 + k_hat**2 / w2) / w2


def kinetic_residual(k_hat: float, Omega_hat: complex, rp: ReducedParams) -> KineticResidual:
    if k_hat <= 0:
        raise SingularInput("kinetic residual is singular at k_hat = 0")
    Omega_hat = complex(Omega_hat)
    denom = 1j * Omega_hat - rp.D_hat * k_hat**2
    if abs(denom) <= 1e-14 * (1.0 + rp.D_hat * k_hat**2):
        raise SingularInput("i*Omega coincides with D_hat*k_hat^2 (diffusion pole)")
    zeta = _zeta(k_hat, Omega_hat)
    diffusive = 1.0 + rp.omega_d_hat / denom
    value = 1.0 - diffusive * 1.5 * complex(plasma_Z_prime(zeta)) / k_hat**2
    return KineticResidual(value=value, zeta=zeta)


def solve_kinetic_root(
    k_hat: float,
    guess,
    rp: ReducedParams,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> ComplexFrequency:
    """Find a zero of :func:`kinetic_residual` by Muller's method.

    The three seed points are ``guess`` and ``guess +/- h`` with
    ``h = 1e-3 max(1, |guess|)``.  Typical warm-started runs converge in
    5-8 iterations.
    """
    if k_hat <= 0:
        raise SingularInput("k_hat must be > 0")
    x2 = complex(guess)
    if not cmath.isfinite(x2):
        raise ValueError("guess must be finite")

    def f(z):
        return kinetic_residual(k_hat, z, rp).value

    h = 1e-3 * max(1.0, abs(x2))
    x0, x1 = x2 - h, x2 + h
    f0, f1, f2 = f(x0), f(x1), f(x2)
    if abs(f2) < tol:
        return ComplexFrequency.from_complex(x2)

    for it in range(1, max_iter + 1):
        h1 = x1 - x0
        h2 = x2 - x1
        if h1 == 0 or h2 == 0 or h1 + h2 == 0:
            break
        d1 = (f1 - f0) / h1
        d2 = (f2 - f1) / h2
        a = (d2 - d1) / (h2 + h1)
        b = a * h2 + d2
        disc = cmath.sqrt(b * b - 4.0 * a * f2)
        den = b + disc if abs(b + disc) >= abs(b - disc) else b - disc
        if den == 0:
            break
        x3 = x2 - 2.0 * f2 / den
        if not cmath.isfinite(x3):
            break
        try:
            f3 = f(x3)
        except SingularInput:
            break
        x0, x1, x2 = x1, x2, x3
        f0, f1, f2 = f1, f2, f3
        if cmath.isfinite(f2) and abs(f2) < tol:
            return ComplexFrequency.from_complex(x2)

    raise NoConvergence(
        f"Muller iteration did not reach |R| < {tol:g} at k_hat={k_hat:g}",
        last=x2,
        residual=abs(f2),
        iterations=max_iter,
    )


def in_expansion_regime(k_hat, Omega_hat):
    return abs(complex(Omega_hat)) / (k_hat * V_TH_HAT) > EXPANSION_RATIO


def fluid_frequency(k_hat):
    """Bohm-Gross branch ``sqrt(1 + k^2)``; the undriven warm start."""
    return np.sqrt(1.0 + np.asarray(k_hat, dtype=float) ** 2)

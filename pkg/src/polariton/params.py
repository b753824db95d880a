"""Dimensional trap/light parameters and their reduction to plasma units.

Every downstream module works in reduced units: frequencies in the
effective plasma frequency ``omega_p`` and lengths in the Debye length
``lambda_D = u_s / omega_p``.  This module is the only place that knows
about SI quantities.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from scipy import constants

from .errors import ConfigError, NonPositiveCharge

C_LIGHT = constants.c
K_B = constants.k
HBAR = constants.hbar

# JSON key -> PhysicalParams field
PARAM_KEYS = {
    "sigma_R": "sigma_R",
    "sigma_L": "sigma_L",
    "intensity": "I0",
    "density": "n0",
    "tau": "tau",
    "mass": "mass",
    "temperature": "T",
    "lambda_light": "lambda_light",
    "cloud_size": "a",
    "intensity_scale": "L",
}


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional description of the cloud and the light field (SI units)."""

    sigma_R: float
    sigma_L: float
    I0: float
    n0: float
    tau: float
    mass: float
    T: float
    lambda_light: float
    a: float
    L: float
    c: float = field(default=C_LIGHT)

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a finite positive number, got {value!r}")

    @classmethod
    def from_mapping(cls, data):
        missing = [k for k in PARAM_KEYS if k not in data]
        if missing:
            raise ConfigError(f"missing required parameter key(s): {', '.join(missing)}")
        unknown = sorted(set(data) - set(PARAM_KEYS))
        if unknown:
            raise ConfigError(f"unknown parameter key(s): {', '.join(unknown)}")
        kwargs = {}
        for key, attr in PARAM_KEYS.items():
            value = data[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"parameter {key!r} must be a number, got {value!r}")
            kwargs[attr] = float(value)
        try:
            return cls(**kwargs)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, path):
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.from_mapping(data)


@dataclass(frozen=True)
class ReducedParams:
    """The dimensionless triple controlling all of the physics.

    Attributes
    ----------
    D_hat : float
        Photon diffusion coefficient in units of ``lambda_D**2 * omega_p``.
    omega_d_hat : float
        Diffusion frequency in units of ``omega_p``.
    theta : float
        Quantumness ``hbar*omega_p / (k_B*T)``; 0 means classical.
    """

    D_hat: float
    omega_d_hat: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not self.D_hat > 0:
            raise ValueError(f"D_hat must be > 0, got {self.D_hat!r}")
        if not self.omega_d_hat >= 0:
            raise ValueError(f"omega_d_hat must be >= 0, got {self.omega_d_hat!r}")
        if not self.theta >= 0:
            raise ValueError(f"theta must be >= 0, got {self.theta!r}")

    def with_omega_d(self, omega_d_hat):
        return ReducedParams(self.D_hat, omega_d_hat, self.theta)


@dataclass(frozen=True)
class DerivedScales:
    Q_eff: float
    omega_p: float
    v_th: float
    u_s: float
    lambda_D: float
    mfp: float
    D0: float
    ell_d: float
    omega_d: float


@dataclass(frozen=True)
class ValidityReport:
    ratios: list
    passes: list
    separation: float

    @property
    def overall(self):
        return all(self.passes)


def effective_charge(p: PhysicalParams) -> float:
    if p.sigma_R <= p.sigma_L:
        raise NonPositiveCharge(
            "effective charge requires sigma_R > sigma_L "
            f"(got sigma_R={p.sigma_R:g}, sigma_L={p.sigma_L:g}); "
            "positivity is necessary for stable oscillations"
        )
    return p.sigma_L * (p.sigma_R - p.sigma_L) * p.I0 / p.c


def derive_scales(p: PhysicalParams) -> DerivedScales:
    q_eff = effective_charge(p)
    omega_p = math.sqrt(q_eff * p.n0 / p.mass)
    v_th = math.sqrt(K_B * p.T / p.mass)
    u_s = math.sqrt(3.0) * v_th
    mfp = 1.0 / (p.n0 * p.sigma_L)
    # D0 = mfp^2 / tau
    D0 = 1.0 / (p.sigma_L**2 * p.tau * p.n0**2)
    return DerivedScales(
        Q_eff=q_eff,
        omega_p=omega_p,
        v_th=v_th,
        u_s=u_s,
        lambda_D=u_s / omega_p,
        mfp=mfp,
        D0=D0,
        ell_d=math.sqrt(D0 / omega_p),
        omega_d=2.0 * D0 / p.L**2,
    )


def reduce(p: PhysicalParams) -> ReducedParams:
    s = derive_scales(p)
    return ReducedParams(
        D_hat=s.D0 / (s.lambda_D**2 * s.omega_p),
        omega_d_hat=s.omega_d / s.omega_p,
        theta=HBAR * s.omega_p / (K_B * p.T),
    )


def check_hierarchy(p: PhysicalParams, separation: float = 10.0) -> ValidityReport:
    """Check ``lambda << mfp << a << L`` with ``<<`` meaning a factor ``separation``."""
    mfp = 1.0 / (p.n0 * p.sigma_L)
    ratios = [
        ("mfp/lambda", mfp / p.lambda_light),
        ("a/mfp", p.a / mfp),
        ("L/a", p.L / p.a),
    ]
    return ValidityReport(
        ratios=ratios,
        passes=[value > separation for _, value in ratios],
        separation=separation,
    )

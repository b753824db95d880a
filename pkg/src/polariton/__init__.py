"""Atom-photon polariton spectra of cold atoms in diffusive light.

Reduced units everywhere except :mod:`polariton.params`: frequencies in the
effective plasma frequency, lengths in the Debye length.
"""

from .dispersion import (
    DispersionPoint,
    RotonKind,
    RotonResult,
    critical_omega_d,
    find_roton,
    growth_rate,
    omega_sq,
    phase_scan,
    spectrum,
)
from .errors import (
    ConfigError,
    NoConvergence,
    NonPositiveCharge,
    OutsideRegime,
    PolaritonError,
    QuadratureFailure,
    SingularInput,
    UnstableMode,
    ZeroFrequency,
)
from .kinetics import kinetic_residual, plasma_Z, solve_kinetic_root
from .params import PhysicalParams, ReducedParams, check_hierarchy, derive_scales, reduce
from .structure import (
    QuadratureConfig,
    StructureForm,
    correlation_scan,
    pair_correlation,
    structure_factor,
)

__version__ = "0.1.0"

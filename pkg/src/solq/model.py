"""Model parameters and unit conventions.

Everything downstream works in soliton units: hbar = xi = mu = m_psi = 1,
with xi = hbar/sqrt(g n0 m_psi) the healing length and mu = g n0 the chemical
potential of the background condensate. The impurity physics is controlled by
a single dimensionless well parameter nu derived from the impurity-condensate
coupling, and by the impurity/condensate mass ratio.
"""

import math
from dataclasses import dataclass
from enum import Enum


class ExponentConvention(Enum):
    """Choice of the sech exponent alpha for the localized impurity orbitals.

    DEFAULT    alpha = sqrt(nu (nu + 1)), the tail matched to the full well
               depth; used by all rate calculations.
    DOUBLED    alpha = sqrt(2 nu (nu + 1)), same matching with a doubled
               depth bookkeeping.
    EIGENSTATE alpha = nu, which makes the ground orbital the exact bound
               state of the matched sech^2 well.
    """

    DEFAULT = "default"
    DOUBLED = "doubled"
    EIGENSTATE = "eigenstate"


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model parameters plus optional physical scales.

    physical_xi is the healing length in meters, physical_mu the chemical
    potential expressed as a frequency mu/hbar in Hz. Both are only needed
    when converting results to laboratory units.
    """

    nu: float = 0.75
    mass_ratio: float = 1.56
    wannier_convention: ExponentConvention = ExponentConvention.DEFAULT
    n0_xi: float = 50.0
    physical_xi: float | None = None
    physical_mu: float | None = None

    def __post_init__(self):
        if not self.nu >= 0.0:
            raise ValueError(f"nu must be nonnegative, got {self.nu}")
        if not self.mass_ratio > 0.0:
            raise ValueError(f"mass_ratio must be positive, got {self.mass_ratio}")
        if not self.n0_xi > 0.0:
            raise ValueError(f"n0_xi must be positive, got {self.n0_xi}")
        if isinstance(self.wannier_convention, str):
            object.__setattr__(
                self, "wannier_convention", ExponentConvention(self.wannier_convention)
            )


def derive_nu(chi_over_g: float, mass_ratio: float) -> float:
    """Well parameter nu from the impurity coupling chi (in units of g).

    Monotone in chi_over_g; chi_over_g = 0.88, mass_ratio = 1.56 gives
    nu = 0.7739.
    """
    if chi_over_g < 0.0:
        raise ValueError("chi_over_g must be nonnegative")
    if mass_ratio <= 0.0:
        raise ValueError("mass_ratio must be positive")
    return 0.5 * (-1.0 + math.sqrt(1.0 + 4.0 * chi_over_g * mass_ratio))


def chi_over_g(params: ModelParams) -> float:
    """Inverse of derive_nu: the coupling that produces params.nu."""
    return params.nu * (params.nu + 1.0) / params.mass_ratio


def qubit_gap(params: ModelParams) -> float:
    """Level splitting omega0 of the two lowest impurity orbitals, in mu/hbar.

    omega0 = (2 nu - 1)/(2 m_r); positive inside the two-state window.
    """
    return (2.0 * params.nu - 1.0) / (2.0 * params.mass_ratio)


def wannier_alpha(params: ModelParams) -> float:
    """The sech exponent alpha for the configured convention."""
    nu = params.nu
    conv = params.wannier_convention
    if conv is ExponentConvention.DEFAULT:
        return math.sqrt(nu * (nu + 1.0))
    if conv is ExponentConvention.DOUBLED:
        return math.sqrt(2.0 * nu * (nu + 1.0))
    return nu


_TO_PHYSICAL_KINDS = ("length", "rate", "time")


def to_physical(value: float, kind: str, params: ModelParams) -> float:
    """Convert a dimensionless value to SI using the configured scales.

    kind = "length" multiplies by physical_xi (meters), "rate" by physical_mu
    (Hz), "time" divides by physical_mu (seconds). Raises if the needed scale
    is not set on params.
    """
    if kind not in _TO_PHYSICAL_KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {_TO_PHYSICAL_KINDS}")
    if kind == "length":
        if params.physical_xi is None:
            raise ValueError("physical_xi is not set; cannot convert a length")
        return value * params.physical_xi
    if params.physical_mu is None:
        raise ValueError(f"physical_mu is not set; cannot convert a {kind}")
    if kind == "rate":
        return value * params.physical_mu
    return value / params.physical_mu


def from_physical(value: float, kind: str, params: ModelParams) -> float:
    """Inverse of to_physical (SI in, dimensionless out)."""
    if kind not in _TO_PHYSICAL_KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {_TO_PHYSICAL_KINDS}")
    if kind == "length":
        if params.physical_xi is None:
            raise ValueError("physical_xi is not set; cannot convert a length")
        return value / params.physical_xi
    if params.physical_mu is None:
        raise ValueError(f"physical_mu is not set; cannot convert a {kind}")
    if kind == "rate":
        return value / params.physical_mu
    return value * params.physical_mu

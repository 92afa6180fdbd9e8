# 786
# Flossh source: drive.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import Optional, Tuple
from dataclasses import dataclass, replace
from fractions import Fraction
from enum import Enum
import numpy as np

from .common import ContractError
from .lattice import ChainGeometry
from .specfun import gaussian_phase


COMMENSURATE_TOLERANCE = 1e-6
"""
Largest phase drift (radians) accumulated over one base period when the beating
ratio ``Ω₊/Ω₋`` is replaced by a fraction ``p/q``.
"""

COMMENSURATE_MAX_DENOMINATOR = 64
"""Largest denominator considered when rationalizing ``Ω₊/Ω₋``."""


class DriveKind(Enum):
    """Driving protocol."""

    MONOCHROMATIC = "monochromatic"
    """Constant-amplitude field ``cos Ωt``."""
    GAUSSIAN = "gaussian"
    """Gaussian pulse ``exp(-(Γt)²) cos Ωt`` centred at ``t = 0``."""
    BEATING = "beating"
    """Harmonic envelope ``cos ωt cos Ωt``."""


def commensurate_ratio(
    omega_plus: float,
    omega_minus: float,
    tol: float = COMMENSURATE_TOLERANCE,
    max_denominator: int = COMMENSURATE_MAX_DENOMINATOR,
) -> Optional[Fraction]:
    """
    Rationalize the beating ratio.

    Replacing ``omega_plus`` by ``p Ω_f`` with ``Ω_f = omega_minus / q`` shifts the
    phase of the ``omega_plus`` component by ``2π |q omega_plus / omega_minus - p|``
    over one base period ``2π / Ω_f``.

    :returns: Fraction ``p/q`` whose phase drift does not exceed `tol`, or `None`
        if no such fraction exists.
    """
    ratio = omega_plus / omega_minus
    frac = Fraction(ratio).limit_denominator(max_denominator)
    drift = 2 * np.pi * abs(frac.denominator * ratio - frac.numerator)
    if drift <= tol:
        return frac
    return None


@dataclass(frozen=True)
class DriveSpec:
    """Driving field parameters in units of ``w`` (``ħ = 1``). Immutable."""

    kind: DriveKind
    """Driving protocol."""
    g: float = 0.0
    """Dimensionless light-matter coupling ``eaE₀/ħΩ``."""
    omega_drive: float = 10.0
    """Carrier frequency ``Ω``."""
    c: Optional[float] = None
    """Ratio ``Ω/Γ`` (Gaussian pulse only)."""
    omega_env: Optional[float] = None
    """Envelope frequency ``ω`` (beating only)."""
    phase_offset: float = 0.0
    """Constant added to the phase integral ``s(t)``. A pure gauge."""
    window_offset: float = 0.0
    """
    Offset (in periods) of the quadrature window centre from the Gaussian pulse
    peak. Default: 0 (window centred at the peak)
    """

    def __post_init__(self):
        if not isinstance(self.kind, DriveKind):
            try:
                object.__setattr__(self, "kind", DriveKind(str(self.kind).lower()))
            except ValueError:
                raise ContractError(f"Unknown drive kind {self.kind}") from None
        if not self.g >= 0:
            raise ContractError(f"g must satisfy g >= 0 (got {self.g})")
        if not self.omega_drive > 0:
            raise ContractError(
                f"omega_drive must be positive (got {self.omega_drive})"
            )
        if self.kind == DriveKind.GAUSSIAN:
            if self.c is None or not self.c > 0:
                raise ContractError(f"Gaussian drive requires c > 0 (got {self.c})")
        if self.kind == DriveKind.BEATING:
            if self.omega_env is None or not 0 < self.omega_env < self.omega_drive:
                raise ContractError(
                    "beating drive requires 0 < omega_env < omega_drive "
                    f"(got {self.omega_env})"
                )

    def with_g(self, g: float) -> "DriveSpec":
        return replace(self, g=g)

    @property
    def gamma(self) -> float:
        """Inverse pulse width ``Γ = Ω/c``."""
        assert self.c
        return self.omega_drive / self.c

    @property
    def omega_plus(self) -> float:
        return self.omega_drive + (self.omega_env or 0.0)

    @property
    def omega_minus(self) -> float:
        return self.omega_drive - (self.omega_env or 0.0)

    @property
    def base_frequency(self) -> float:
        """
        Replica spacing ``Ω_base``: ``Ω`` for monochromatic and Gaussian drives.
        For the beating drive, ``Ω₋/q`` where ``Ω₊/Ω₋ = p/q`` (``Ω₋`` if the
        ratio is not rational).
        """
        if self.kind != DriveKind.BEATING:
            return self.omega_drive
        frac = commensurate_ratio(self.omega_plus, self.omega_minus)
        if frac is None:
            return self.omega_minus
        return self.omega_minus / frac.denominator

    @property
    def base_period(self) -> float:
        return 2 * np.pi / self.base_frequency

    def window_start(self, base_frequency: Optional[float] = None) -> float:
        """
        :returns: Start of the quadrature window of length ``2π/base_frequency``.
            Gaussian pulses are integrated over a window centred at
            ``window_offset`` periods from the peak; periodic drives from 0.
        """
        period = 2 * np.pi / (base_frequency or self.base_frequency)
        if self.kind == DriveKind.GAUSSIAN:
            return (self.window_offset - 0.5) * period
        return 0.0

    @property
    def is_periodic(self) -> bool:
        """Set if the lab-frame Hamiltonian is periodic with :py:attr:`base_period`."""
        if self.kind == DriveKind.MONOCHROMATIC:
            return True
        if self.kind == DriveKind.BEATING:
            return commensurate_ratio(self.omega_plus, self.omega_minus) is not None
        return False

    def __str__(self):
        extra = ""
        if self.kind == DriveKind.GAUSSIAN:
            extra = f"; c={self.c}"
        elif self.kind == DriveKind.BEATING:
            extra = f"; ω={self.omega_env}"
        return f"{self.kind.value}[g={self.g}; Ω={self.omega_drive}{extra}]"


def field_profile(d: DriveSpec, t):
    """:returns: Electric field ``E(t)/E₀`` (vectorized over `t`)."""

    t = np.asarray(t, dtype=float)
    carrier = np.cos(d.omega_drive * t)
    if d.kind == DriveKind.GAUSSIAN:
        carrier = np.exp(-((t * d.gamma) ** 2)) * carrier
    elif d.kind == DriveKind.BEATING:
        carrier = carrier * np.cos(d.omega_env * t)
    return carrier if np.ndim(carrier) else float(carrier)


def phase_integral(d: DriveSpec, t):
    """
    :returns: Dimensionless phase ``s(t) = Ω ∫ E(t')/E₀ dt'`` (vectorized over `t`).
        The lower limit is fixed by ``s(0) = 0``, shifted by ``d.phase_offset``.
    """

    t = np.asarray(t, dtype=float)
    if d.kind == DriveKind.MONOCHROMATIC:
        s = np.sin(d.omega_drive * t)
    elif d.kind == DriveKind.GAUSSIAN:
        assert d.c
        s = gaussian_phase(d.omega_drive * t, d.c)
    else:
        op, om = d.omega_plus, d.omega_minus
        s = d.omega_drive / (2 * op) * np.sin(op * t) + d.omega_drive / (
            2 * om
        ) * np.sin(om * t)
    s = s + d.phase_offset
    return s if np.ndim(s) else float(s)


def hopping_modulations(d: DriveSpec, geom: ChainGeometry, t) -> Tuple:
    """
    :returns: Hopping phase factors ``(p_v, p_w) = (exp(-ig′s), exp(+ig″s))`` with
        ``g′ = rg`` and ``g″ = (1 - r)g`` (vectorized over `t`).
    """

    s = np.asarray(phase_integral(d, t))
    p_v = np.exp(-1j * geom.r * d.g * s)
    p_w = np.exp(1j * (1 - geom.r) * d.g * s)
    if np.ndim(s):
        return p_v, p_w
    return complex(p_v), complex(p_w)


def potential_matrix(geom: ChainGeometry, d: DriveSpec, t: float) -> np.ndarray:
    """:returns: Diagonal dipole potential ``gΩ E(t)/E₀ x_j`` in units of `w`."""
    return np.diag(d.g * d.omega_drive * field_profile(d, t) * geom.site_positions())


def unitary_p(geom: ChainGeometry, d: DriveSpec, t: float) -> np.ndarray:
    """
    :returns: Diagonal frame transformation ``P(t) = exp(-i g s(t) x_j)`` that
        satisfies ``i ∂_t P = V(t) P``. In the sublattice form it reads
        ``exp(iBσ_z/2) p_ℓ`` with ``B = r g s(t)``.
    """
    return np.diag(np.exp(-1j * d.g * phase_integral(d, t) * geom.site_positions()))


def frame_defect(geom: ChainGeometry, d: DriveSpec, t: float, h: float = 1e-6):
    """
    :returns: ``max |i ∂_t P(t) - V(t) P(t)|`` with the time derivative taken by
        central differences of step `h`.
    """
    dp = (unitary_p(geom, d, t + h) - unitary_p(geom, d, t - h)) / (2 * h)
    vp = potential_matrix(geom, d, t) @ unitary_p(geom, d, t)
    return float(np.max(np.abs(1j * dp - vp)))


def field_samples(d: DriveSpec, n_samples: int = 512, periods: float = 2.0):
    """
    :returns: Times and field values ``(t, E(t)/E₀)`` for plotting. Periodic drives
        are sampled over `periods` base periods starting at 0, the Gaussian pulse
        over ``±3/Γ`` around its peak.
    """
    if n_samples < 2:
        raise ContractError("at least two samples are needed")
    if d.kind == DriveKind.GAUSSIAN:
        t = np.linspace(-3 / d.gamma, 3 / d.gamma, n_samples)
    else:
        t = np.linspace(0, periods * d.base_period, n_samples)
    return t, field_profile(d, t)

"""Drive parameters, spectral quantities and instantaneous eigenstates.

The lab-frame Hamiltonian of the driven two-level system is

    H(t) = (1/2) * (delta*sigma_z
                    + omega_rabi*sigma_x*cos(omega_rot*t)
                    + omega_rabi*sigma_y*sin(omega_rot*t))

Its instantaneous eigenstates, with the phase convention used everywhere in
this package, are

    |e(t)> = cos(theta/2)|0> + sin(theta/2) exp(+i*omega_rot*t)|1>
    |g(t)> = sin(theta/2) exp(-i*omega_rot*t)|0> - cos(theta/2)|1>

with energies +omega/2 and -omega/2, where omega = sqrt(delta^2 + omega_rabi^2)
and theta = arctan(omega_rabi/delta) is the mixing angle.  The relative phase
factors exp(+/- i*omega_rot*t) are fixed once and for all; both directions of
basis conversion must use them identically.

All frequencies are angular and carry reciprocal time units.  Every observable
computed downstream depends only on ratios (omega_rot/omega) and products
(omega*t), so no absolute unit system is imposed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, InvalidParameterError

TWO_PI = 2.0 * math.pi

#: Default ratio required of both adiabaticity margins before a drive counts
#: as adiabatic.  The underlying condition is a strict ">>", which has no
#: canonical numeric value; 10 is a conventional reading.
DEFAULT_ADIABATIC_THRESHOLD = 10.0


@dataclass(frozen=True)
class DriveParams:
    """Physical knobs of the rotating drive.

    Attributes
    ----------
    delta:
        Static splitting, must be positive (keeps theta inside [0, pi/2)).
    omega_rabi:
        Drive amplitude, non-negative.
    omega_rot:
        Rotation rate of the drive, signed; the sign selects the rotation
        direction in parameter space.
    """

    delta: float
    omega_rabi: float
    omega_rot: float

    def __post_init__(self) -> None:
        for name in ("delta", "omega_rabi", "omega_rot"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be a finite real number, got {value!r}")
        if self.delta <= 0:
            raise InvalidParameterError(f"delta must be positive, got {self.delta}")
        if self.omega_rabi < 0:
            raise InvalidParameterError(f"omega_rabi must be non-negative, got {self.omega_rabi}")

    @classmethod
    def from_mixing_angle(cls, delta: float, theta: float, omega_rot: float) -> "DriveParams":
        """Build parameters with omega_rabi = delta * tan(theta), theta in [0, pi/2)."""
        if not 0 <= theta < math.pi / 2:
            raise InvalidParameterError(f"theta must lie in [0, pi/2), got {theta}")
        return cls(delta=delta, omega_rabi=delta * math.tan(theta), omega_rot=omega_rot)

    def reversed(self) -> "DriveParams":
        """Same drive with the rotation direction flipped."""
        return replace(self, omega_rot=-self.omega_rot)


@dataclass(frozen=True)
class EigenFrame:
    """Spectral quantities derived from one drive configuration.

    omega_plus and omega_minus are the two normal-mode frequencies of the
    constant-coefficient amplitude equations; sigma_plus/sigma_minus are the
    combinations entering the closed-form mode weights.  lam is the small
    parameter omega_rot*sin(theta)/(2*omega) that controls non-adiabatic
    transitions (signed like omega_rot).
    """

    omega: float
    theta: float
    lam: float
    big_omega: float
    omega_plus: float
    omega_minus: float
    sigma_plus: float
    sigma_minus: float


def eigenframe(params: DriveParams) -> EigenFrame:
    """Compute all spectral quantities for one drive configuration.

    Closed forms:
        omega      = sqrt(delta^2 + omega_rabi^2)
        theta      = arctan(omega_rabi / delta)
        lam        = omega_rot * sin(theta) / (2 * omega)
        big_omega  = sqrt(omega^2 - 2*omega*omega_rot*cos(theta) + omega_rot^2)
        omega_+/-  = (-omega_rot +/- big_omega) / 2
        sigma_+/-  = omega_rot * (1 +/- cos(theta)) + 2 * omega_+
    """
    omega = math.hypot(params.delta, params.omega_rabi)
    theta = math.atan2(params.omega_rabi, params.delta)
    wr = params.omega_rot
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    lam = wr * sin_t / (2.0 * omega)
    big_omega = math.sqrt(omega * omega - 2.0 * omega * wr * cos_t + wr * wr)
    omega_plus = (-wr + big_omega) / 2.0
    omega_minus = (-wr - big_omega) / 2.0
    sigma_plus = wr * (1.0 + cos_t) + 2.0 * omega_plus
    sigma_minus = wr * (1.0 - cos_t) + 2.0 * omega_plus
    return EigenFrame(
        omega=omega,
        theta=theta,
        lam=lam,
        big_omega=big_omega,
        omega_plus=omega_plus,
        omega_minus=omega_minus,
        sigma_plus=sigma_plus,
        sigma_minus=sigma_minus,
    )


def hamiltonian(params: DriveParams, t: float) -> np.ndarray:
    """Lab-frame Hamiltonian at time t as a 2x2 complex Hermitian matrix.

    H(t) = (1/2)(delta*sz + omega_rabi*(sx cos(omega_rot t) + sy sin(omega_rot t))),
    which in the |0>, |1> basis reads

        (1/2) [[delta,                     omega_rabi e^{-i omega_rot t}],
               [omega_rabi e^{+i omega_rot t},                   -delta]]
    """
    if not math.isfinite(t):
        raise InvalidParameterError(f"t must be finite, got {t!r}")
    off = 0.5 * params.omega_rabi * np.exp(-1j * params.omega_rot * t)
    return np.array(
        [[0.5 * params.delta, off], [np.conj(off), -0.5 * params.delta]], dtype=complex
    )


@dataclass(frozen=True)
class LabSpinor:
    """Two complex amplitudes on the fixed basis states |0> and |1>."""

    c0: complex
    c1: complex

    @property
    def norm(self) -> float:
        return math.sqrt(abs(self.c0) ** 2 + abs(self.c1) ** 2)

    @property
    def norm_error(self) -> float:
        """Absolute deviation of |c0|^2 + |c1|^2 from one."""
        return abs(abs(self.c0) ** 2 + abs(self.c1) ** 2 - 1.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)


def eigenstates(params: DriveParams, t: float) -> tuple[LabSpinor, LabSpinor]:
    """Instantaneous eigenstates (|e(t)>, |g(t)>) in the fixed phase convention."""
    if not math.isfinite(t):
        raise InvalidParameterError(f"t must be finite, got {t!r}")
    theta = math.atan2(params.omega_rabi, params.delta)
    ch, sh = math.cos(theta / 2.0), math.sin(theta / 2.0)
    phase = complex(math.cos(params.omega_rot * t), math.sin(params.omega_rot * t))
    excited = LabSpinor(c0=complex(ch), c1=sh * phase)
    ground = LabSpinor(c0=sh / phase, c1=complex(-ch))
    return excited, ground


def solid_angle(theta: float) -> float:
    """Solid angle 2*pi*(1 - cos(theta)) traced by the drive axis, theta in [0, pi/2]."""
    if not math.isfinite(theta) or not 0.0 <= theta <= math.pi / 2.0:
        raise DomainError(f"theta must lie in [0, pi/2], got {theta!r}")
    return TWO_PI * (1.0 - math.cos(theta))


def theta_from_solid_angle(solid: float) -> float:
    """Inverse of solid_angle on [0, 2*pi]."""
    if not math.isfinite(solid) or not 0.0 <= solid <= TWO_PI:
        raise DomainError(f"solid angle must lie in [0, 2*pi], got {solid!r}")
    return math.acos(1.0 - solid / TWO_PI)


@dataclass(frozen=True)
class AdiabaticMargins:
    """Both sides of the two adiabaticity conditions and their ratios.

    Condition 1:  omega/2 + omega_rot*sin^2(theta/2)  >>  (omega_rot/2)*sin(theta)
    Condition 2:  omega/2 - omega_rot*cos^2(theta/2)  >>  (omega_rot/2)*sin(theta)

    ratio1/ratio2 are lhs/rhs, reported as +inf when the right-hand side is
    exactly zero (sin(theta) = 0 or omega_rot = 0), in which case the
    condition is trivially satisfied.
    """

    lhs1: float
    rhs1: float
    lhs2: float
    rhs2: float
    ratio1: float
    ratio2: float
    passed: bool


def check_adiabatic(
    frame: EigenFrame, omega_rot: float, threshold: float = DEFAULT_ADIABATIC_THRESHOLD
) -> AdiabaticMargins:
    """Evaluate both adiabaticity margins at a configurable ">>" threshold."""
    if not threshold > 1.0:
        raise InvalidParameterError(f"threshold must exceed 1, got {threshold}")
    half = frame.theta / 2.0
    lhs1 = frame.omega / 2.0 + omega_rot * math.sin(half) ** 2
    lhs2 = frame.omega / 2.0 - omega_rot * math.cos(half) ** 2
    # rhs is the literal algebraic combination, signed like omega_rot
    rhs = omega_rot / 2.0 * math.sin(frame.theta)
    ratio1 = lhs1 / rhs if rhs != 0.0 else math.inf
    ratio2 = lhs2 / rhs if rhs != 0.0 else math.inf
    return AdiabaticMargins(
        lhs1=lhs1,
        rhs1=rhs,
        lhs2=lhs2,
        rhs2=rhs,
        ratio1=ratio1,
        ratio2=ratio2,
        passed=(ratio1 >= threshold and ratio2 >= threshold),
    )

"""Second-order analytic estimate of the echo phase fluctuation.

The estimate is a weighted sum of twelve sines,

    delta_phi_2nd = lam^2 * sum_j c_j * sin(phi'_j - phi_b),
    c = (1, 4, 2, 2, 2, 1, 2, 1, 2, 2, 4, 4),   sum(c) = 27,

with lam = omega_rot*sin(theta)/(2*omega) the transition parameter, phi_b the
doubled geometric-phase prediction, and the twelve junction phases phi'_j
closed forms in (omega, omega_rot, theta, T).  The phi'_j below are literal
transcriptions, kept free of any trigonometric simplification on purpose so
that a transcription slip stays diffable; T is derived from (loops, omega_rot)
by the same convention as the echo protocol (single source of truth).

Known limitation, established numerically and by an independent derivation
(exercised in the test suite): the sum reproduces only the oscillatory part of
the exact echo response, and only under the opposite sign convention of phi_b
inside the arguments.  The exact echo additionally carries a smooth
second-order offset

    wrap(2*omega_rot*T + (Omega_forward - Omega_reversed)*T - phi_b)
        =  4*lam^2*cos(theta)*omega_rot*T + O(lam^3)
        (= 8*pi*loops*cos(theta)*lam^2 for positive rotation)

from the mode-frequency mismatch between the forward and reversed rounds,
which the sum does not contain.  The sum is kept as the literal reference
formula rather than patched; `secular_offset` below provides the missing
smooth part for consumers that need the full second-order response.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .echo import EchoConfig, berry_phase
from .errors import InvalidParameterError
from .model import DriveParams, eigenframe

TWO_PI = 2.0 * math.pi

#: Integer weights of the twelve sine terms; their sum is 27.
WEIGHTS = (1, 4, 2, 2, 2, 1, 2, 1, 2, 2, 4, 4)


@dataclass(frozen=True)
class SecondOrderTerms:
    """The twelve junction phases with their fixed weights, lam and phi_b."""

    phases: tuple[float, ...]
    weights: tuple[int, ...]
    lam: float
    phi_b: float

    def __post_init__(self) -> None:
        if len(self.phases) != 12:
            raise InvalidParameterError(f"expected 12 junction phases, got {len(self.phases)}")
        if tuple(self.weights) != WEIGHTS:
            raise InvalidParameterError("weights must be the fixed tuple (1,4,2,2,2,1,2,1,2,2,4,4)")

    def weighted_sine_sum(self) -> float:
        """sum_j c_j * sin(phi'_j - phi_b)."""
        return sum(c * math.sin(p - self.phi_b) for c, p in zip(self.weights, self.phases))


def junction_phases(
    omega: float, theta: float, omega_rot: float, big_t: float
) -> tuple[float, ...]:
    """The twelve closed-form phases phi'_1 ... phi'_12, transcribed literally.

    big_t is the single-round duration; it is a separate argument so the
    closed forms can be evaluated in limits where T is held fixed externally.
    """
    w = omega
    wr = omega_rot
    t = big_t
    c = math.cos(theta)
    c2 = math.cos(2.0 * theta)
    pi = math.pi
    return (
        pi - 2.0 * t * wr * c,
        -t * wr,
        t * wr * (-1.0 + 2.0 * c),
        -t * (wr**2 + 8.0 * wr * w + 4.0 * w**2 - 4.0 * wr * w * c - wr**2 * c2) / (4.0 * w),
        pi + t * (-((wr + 2.0 * w) ** 2) + 4.0 * wr * w * c + wr**2 * c2) / (4.0 * w),
        pi + t * ((wr - 2.0 * w) ** 2 - wr**2 * c2) / (2.0 * w),
        t * (wr**2 - 2.0 * wr * w + 4.0 * w**2 - wr**2 * c2) / (2.0 * w),
        pi + t * (wr**2 + 4.0 * w**2 - wr**2 * c2) / (2.0 * w),
        pi + t * ((wr - 2.0 * w) ** 2 - 4.0 * wr * w * c - wr**2 * c2) / (4.0 * w),
        t * (wr**2 + 4.0 * w**2 - 4.0 * wr * w * c - wr**2 * c2) / (4.0 * w),
        t * (wr**2 - 8.0 * wr * w + 4.0 * w**2 + 4.0 * wr * w * c - wr**2 * c2) / (4.0 * w),
        pi + t * ((wr - 2.0 * w) ** 2 + 4.0 * wr * w * c - wr**2 * c2) / (4.0 * w),
    )


def second_order_terms(params: DriveParams, loops: float) -> SecondOrderTerms:
    """Assemble the twelve phases, lam and phi_b for one drive configuration."""
    config = EchoConfig(params=params, loops=loops)
    frame = eigenframe(params)
    phases = junction_phases(frame.omega, frame.theta, params.omega_rot, config.round_duration)
    return SecondOrderTerms(
        phases=phases, weights=WEIGHTS, lam=frame.lam, phi_b=berry_phase(config)
    )


def delta_phi_second_order(params: DriveParams, loops: float) -> float:
    """lam^2 times the weighted sine sum; bounded by 27*lam^2 in magnitude."""
    terms = second_order_terms(params, loops)
    return terms.lam**2 * terms.weighted_sine_sum()

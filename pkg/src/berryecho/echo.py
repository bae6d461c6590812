"""The spin-echo measurement protocol.

One echo run consists of a forward round of duration T = 2*pi*loops/|omega_rot|
(the drive traces `loops` closed circles), an instantaneous pi-pulse that
exchanges the two eigenbasis amplitudes, and a reversed round of the same
duration with omega_rot negated.  The dynamical phase omega*T/2 acquired per
round is even under the reversal and cancels across the swap, while the
geometric part is odd and doubles, so in the adiabatic limit the measured
relative phase of the final amplitudes equals the doubled geometric-phase
prediction

    phi_b = 2 * omega_rot * T * (1 - cos(theta))      ( = 4*pi*loops*(1-cos(theta))
                                                        for positive rotation)

Non-adiabatic transitions perturb this identity; the wrapped residual
delta_phi = phi_na - phi_b is the observable fluctuation this package is
built to quantify.

The reversed round reuses the forward machinery with omega_rot negated and its
clock restarted at zero; the pulse and readout are both expressed in the
instantaneous eigenbasis, so no junction phase is inserted (for integer loop
counts the drive angle is continuous across the junction anyway).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidParameterError, UndefinedPhaseError
from .exact import (
    EQUAL_SUPERPOSITION,
    Amplitudes,
    propagate_adiabatic,
    propagate_exact,
)
from .model import DriveParams
from .ode import (
    IntegratorConfig,
    config_for_accuracy,
    from_eigenbasis,
    propagate_lab,
    propagate_ode,
    to_eigenbasis,
)

TWO_PI = 2.0 * math.pi

PROPAGATORS = ("exact", "ode", "adiabatic", "lab")

#: Default accuracy target used to plan integrator steps when an echo run with
#: a numerical propagator is configured without an explicit IntegratorConfig.
DEFAULT_ECHO_ACCURACY = 1e-9


def wrap_angle(x: float) -> float:
    """Principal value of an angle in (-pi, pi]."""
    w = math.fmod(x, TWO_PI)
    if w > math.pi:
        w -= TWO_PI
    elif w <= -math.pi:
        w += TWO_PI
    return w


def unwrap_near(angle: float, reference: float) -> float:
    """Add the multiple of 2*pi to `angle` that brings it closest to `reference`."""
    return angle + TWO_PI * round((reference - angle) / TWO_PI)


@dataclass(frozen=True)
class EchoConfig:
    """One echo measurement: drive, loop count and propagation route.

    loops may be any positive real; integers close the drive path in each
    round, half-integers are accepted with the same duration convention
    T = 2*pi*loops/|omega_rot|.
    """

    params: DriveParams
    loops: float
    propagator: str = "exact"
    integrator: Optional[IntegratorConfig] = None

    def __post_init__(self) -> None:
        if self.params.omega_rot == 0.0:
            raise InvalidParameterError("echo requires omega_rot != 0 (round duration undefined)")
        if not (math.isfinite(self.loops) and self.loops > 0.0):
            raise InvalidParameterError(f"loops must be finite and positive, got {self.loops!r}")
        if self.propagator not in PROPAGATORS:
            raise InvalidParameterError(
                f"unknown propagator {self.propagator!r}, expected one of {PROPAGATORS}"
            )

    @property
    def round_duration(self) -> float:
        return TWO_PI * self.loops / abs(self.params.omega_rot)


@dataclass(frozen=True)
class EchoResult:
    """Outcome of one echo run.

    phi_na is unwrapped against phi_b (or the caller-supplied anchor), so
    delta_phi = wrap(phi_na_raw - phi_b) always lies in (-pi, pi].
    amps_mid holds the post-pulse amplitudes at T, amps_final those at 2T.
    """

    phi_na: float
    phi_b: float
    delta_phi: float
    amps_mid: Amplitudes
    amps_final: Amplitudes
    norm_error: float


def pi_pulse(amps: Amplitudes) -> Amplitudes:
    """Exchange the eigenbasis amplitudes, (alpha, beta) -> (beta, alpha).

    A plain swap with no extra phase factor; this convention reproduces
    phi_na = phi_b exactly in the adiabatic limit.
    """
    return amps.swapped()


def berry_phase(config: EchoConfig) -> float:
    """Doubled geometric-phase prediction 2*omega_rot*T*(1 - cos(theta)), unwrapped.

    For positive rotation this equals 4*pi*loops*(1 - cos(theta)), i.e. twice
    the loop count times the solid angle traced by the drive axis; a reversed
    starting direction flips its sign.  The value may exceed 2*pi.
    """
    theta = math.atan2(config.params.omega_rabi, config.params.delta)
    return 2.0 * config.params.omega_rot * config.round_duration * (1.0 - math.cos(theta))


def measured_phase(amps: Amplitudes) -> float:
    """The observable relative phase arg(alpha * conj(beta)) in (-pi, pi]."""
    if abs(amps.alpha) <= 1e-12 or abs(amps.beta) <= 1e-12:
        raise UndefinedPhaseError(
            f"relative phase undefined: |alpha| = {abs(amps.alpha):.3e}, "
            f"|beta| = {abs(amps.beta):.3e}"
        )
    return float(np.angle(amps.alpha * np.conj(amps.beta)))


def _propagate(
    params: DriveParams, amps: Amplitudes, t: float, propagator: str, cfg: IntegratorConfig | None
) -> Amplitudes:
    if propagator == "exact":
        return propagate_exact(params, amps, t)
    if propagator == "adiabatic":
        return propagate_adiabatic(params, amps, t)
    if propagator == "ode":
        return propagate_ode(params, amps, t, cfg or config_for_accuracy(params, t, DEFAULT_ECHO_ACCURACY))
    # lab: convert to the lab frame at the start of the round, integrate the
    # time-dependent Schrodinger equation, project back at the end
    cfg = cfg or config_for_accuracy(params, t, DEFAULT_ECHO_ACCURACY)
    psi = from_eigenbasis(params, 0.0, amps)
    psi_t = propagate_lab(params, psi, t, cfg)
    return to_eigenbasis(params, t, psi_t)


def run_echo(
    config: EchoConfig,
    amps0: Amplitudes = EQUAL_SUPERPOSITION,
    unwrap_anchor: float | None = None,
) -> EchoResult:
    """Execute the full echo sequence and extract the measured phase.

    Parameters
    ----------
    config:
        Drive, loop count and propagation route.
    amps0:
        Initial eigenbasis amplitudes; defaults to the equal superposition
        (1/sqrt(2), 1/sqrt(2)).
    unwrap_anchor:
        Optional unwrapping reference for phi_na.  By default phi_na is moved
        by a multiple of 2*pi to land as close as possible to phi_b; sweep
        drivers pass the continuity-extrapolated value from the previous grid
        point instead.

    Returns
    -------
    EchoResult
        With delta_phi = wrap(phi_na_raw - phi_b) in (-pi, pi].
    """
    T = config.round_duration
    forward = _propagate(config.params, amps0, T, config.propagator, config.integrator)
    mid = pi_pulse(forward)
    final = _propagate(
        config.params.reversed(), mid, T, config.propagator, config.integrator
    )
    phi_b = berry_phase(config)
    phi_na_raw = measured_phase(final)
    anchor = phi_b if unwrap_anchor is None else unwrap_anchor
    phi_na = unwrap_near(phi_na_raw, anchor)
    delta_phi = wrap_angle(phi_na_raw - phi_b)
    return EchoResult(
        phi_na=phi_na,
        phi_b=phi_b,
        delta_phi=delta_phi,
        amps_mid=mid,
        amps_final=final,
        norm_error=final.norm_error,
    )

"""Closed-form propagation of the eigenbasis amplitudes.

With |psi(t)> = alpha(t)|e(t)> + beta(t)|g(t)> and the auxiliary gauge
beta'(t) = beta(t) exp(-i*omega_rot*t), the amplitude equations have constant
coefficients and the general solution is a two-mode superposition

    alpha(t) = A1 exp(i*omega_plus*t) + A2 exp(i*omega_minus*t)
    beta'(t) = B1 exp(i*omega_plus*t) + B2 exp(i*omega_minus*t)

with mode weights fixed by the initial amplitudes:

    A1 = [beta0*omega_rot*sin(theta) + alpha0*(-omega + sigma_plus)] / (2*big_omega)
    A2 = [-beta0*omega_rot*sin(theta) + alpha0*(omega + sigma_minus)] / (2*big_omega)
    B1 = [beta0*(omega + sigma_minus) + alpha0*omega_rot*sin(theta)] / (2*big_omega)
    B2 = [beta0*(-omega + sigma_plus) - alpha0*omega_rot*sin(theta)] / (2*big_omega)

The beta' gauge never leaks out of this module: the public functions accept
and return beta.  A reversed rotation is obtained by negating omega_rot in the
drive parameters; every quantity above (big_omega, omega_+/-, sigma_+/-, the
beta' phase factor) is recomputed with the signed value, there is no separate
code path.

Norms are never re-imposed after propagation, so unitarity can be measured
rather than silently restored.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BerryEchoError, DegenerateModeError, InvalidParameterError
from .model import DriveParams, EigenFrame, eigenframe

#: Input states are required to be normalized to this absolute tolerance.
#: It is loose enough to accept amplitudes coming out of a long fixed-step
#: integration (norm drift up to ~1e-8) without hiding genuinely broken input.
NORM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Amplitudes:
    """Complex amplitudes (alpha, beta) on the instantaneous eigenstates."""

    alpha: complex
    beta: complex

    @property
    def norm_error(self) -> float:
        """Absolute deviation of |alpha|^2 + |beta|^2 from one."""
        return abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0)

    def swapped(self) -> "Amplitudes":
        return Amplitudes(alpha=self.beta, beta=self.alpha)


#: The equal superposition used as the default echo input.
EQUAL_SUPERPOSITION = Amplitudes(alpha=1.0 / math.sqrt(2.0), beta=1.0 / math.sqrt(2.0))


def require_normalized(amps: Amplitudes, tol: float = NORM_TOLERANCE) -> None:
    if amps.norm_error > tol:
        raise InvalidParameterError(
            f"amplitudes must be normalized (|norm^2 - 1| = {amps.norm_error:.3e} > {tol:.1e})"
        )


@dataclass(frozen=True)
class ModeCoefficients:
    """Mode weights (A1, A2, B1, B2) of the two-frequency solution."""

    a1: complex
    a2: complex
    b1: complex
    b2: complex


def mode_coefficients(frame: EigenFrame, omega_rot: float, amps0: Amplitudes) -> ModeCoefficients:
    """Mode weights for initial amplitudes, by direct transcription of the closed forms.

    Raises
    ------
    DegenerateModeError
        If big_omega vanishes (requires omega_rot = omega and theta = 0
        simultaneously); the two modes coincide and the weights diverge.
    """
    omega, big = frame.omega, frame.big_omega
    if big <= 1e-12 * max(omega, abs(omega_rot)):
        raise DegenerateModeError(
            f"degenerate modes: big_omega = {big:.3e} at omega = {omega}, omega_rot = {omega_rot}"
        )
    ws = omega_rot * math.sin(frame.theta)
    a0, b0 = amps0.alpha, amps0.beta
    two_big = 2.0 * big
    a1 = (b0 * ws + a0 * (-omega + frame.sigma_plus)) / two_big
    a2 = (-b0 * ws + a0 * (omega + frame.sigma_minus)) / two_big
    b1 = (b0 * (omega + frame.sigma_minus) + a0 * ws) / two_big
    b2 = (b0 * (-omega + frame.sigma_plus) - a0 * ws) / two_big
    # construction self-check: sigma_plus + sigma_minus = 2*big_omega makes the
    # weights resum to the initial amplitudes exactly
    if abs(a1 + a2 - a0) > 1e-12 or abs(b1 + b2 - b0) > 1e-12:
        raise BerryEchoError(
            "mode coefficient reconstruction failed: "
            f"|A1+A2-alpha0| = {abs(a1 + a2 - a0):.3e}, |B1+B2-beta0| = {abs(b1 + b2 - b0):.3e}"
        )
    return ModeCoefficients(a1=a1, a2=a2, b1=b1, b2=b2)


def propagate_exact(params: DriveParams, amps0: Amplitudes, t: float) -> Amplitudes:
    """Propagate amplitudes for a duration t with the closed-form solution.

    Exact up to floating-point rounding; the rotation direction is carried by
    the sign of params.omega_rot.
    """
    if not (math.isfinite(t) and t >= 0.0):
        raise InvalidParameterError(f"t must be finite and non-negative, got {t!r}")
    require_normalized(amps0)
    frame = eigenframe(params)
    modes = mode_coefficients(frame, params.omega_rot, amps0)
    ep = cmath.exp(1j * frame.omega_plus * t)
    em = cmath.exp(1j * frame.omega_minus * t)
    alpha = modes.a1 * ep + modes.a2 * em
    beta_prime = modes.b1 * ep + modes.b2 * em
    return Amplitudes(alpha=alpha, beta=beta_prime * cmath.exp(1j * params.omega_rot * t))


def propagate_adiabatic(params: DriveParams, amps0: Amplitudes, t: float) -> Amplitudes:
    """Propagate in the adiabatic approximation (coupling term dropped).

    Both amplitudes keep their norms exactly and acquire opposite phases,

        alpha(t) = alpha0 * exp(-i*(omega/2 + omega_rot*sin^2(theta/2))*t)
        beta(t)  = beta0  * exp(+i*(omega/2 + omega_rot*sin^2(theta/2))*t)

    i.e. the dynamical phase omega*t/2 plus the geometric part
    omega_rot*t*(1 - cos(theta))/2.
    """
    if not (math.isfinite(t) and t >= 0.0):
        raise InvalidParameterError(f"t must be finite and non-negative, got {t!r}")
    require_normalized(amps0)
    frame = eigenframe(params)
    phase = (frame.omega / 2.0 + params.omega_rot * math.sin(frame.theta / 2.0) ** 2) * t
    factor = cmath.exp(-1j * phase)
    return Amplitudes(alpha=amps0.alpha * factor, beta=amps0.beta / factor)

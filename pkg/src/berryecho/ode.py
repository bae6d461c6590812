"""Fixed-step RK4 oracles and eigenbasis conversion.

Two independent integrators validate the closed forms:

* ``propagate_ode`` integrates the constant-coefficient amplitude equations in
  the (alpha, beta') gauge,

      d(alpha)/dt = -i*(omega/2 + omega_rot*sin^2(theta/2))*alpha
                    + i*beta'*(omega_rot/2)*sin(theta)
      d(beta')/dt = +i*(omega/2 - omega_rot*cos^2(theta/2))*beta'
                    + i*alpha*(omega_rot/2)*sin(theta)

  For a linear autonomous system the classical RK4 update is exactly the
  degree-4 Taylor polynomial of the matrix exponential, so the step matrix is
  precomputed once and applied sequentially.  beta is reconstructed as
  beta'*exp(i*omega_rot*t) only at output.

* ``propagate_lab`` integrates the two-component Schrodinger equation
  i d|psi>/dt = H(t)|psi> with the explicitly time-dependent lab Hamiltonian.

Both use a final partial step sized to land exactly on t, a resolution guard
h * max(omega, |omega_+|, |omega_-|, |omega_rot|) <= 0.1, and a step budget.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, StepBudgetError, StepTooLargeError
from .exact import Amplitudes, require_normalized
from .model import DriveParams, LabSpinor, eigenframe

RESOLUTION_GUARD = 0.1
_RESYNC_INTERVAL = 1024  # steps between phase-factor resyncs in the lab integrator


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = 1e-3
    max_steps: int = 10_000_000

    def __post_init__(self) -> None:
        if not (math.isfinite(self.step) and self.step > 0.0):
            raise InvalidParameterError(f"step must be positive and finite, got {self.step!r}")
        if self.max_steps < 1:
            raise InvalidParameterError(f"max_steps must be >= 1, got {self.max_steps}")


def frequency_scale(params: DriveParams) -> float:
    """Largest frequency appearing in the equations, used by the resolution guard."""
    frame = eigenframe(params)
    return max(
        frame.omega, abs(frame.omega_plus), abs(frame.omega_minus), abs(params.omega_rot)
    )


def config_for_accuracy(
    params: DriveParams, duration: float, target: float = 1e-9
) -> IntegratorConfig:
    """Pick a step small enough that the estimated RK4 phase error stays below target.

    The per-step truncation of RK4 on an oscillation of angular frequency s is
    about (h*s)^5/120, so the accumulated error over a total phase Phi = t*s is
    roughly Phi*(h*s)^4/120.  A safety factor of 0.6 on the step leaves an
    order-of-magnitude margin.  The step never exceeds the resolution guard.
    """
    if duration < 0 or not math.isfinite(duration):
        raise InvalidParameterError(f"duration must be finite and >= 0, got {duration!r}")
    if not (0.0 < target < 1.0):
        raise InvalidParameterError(f"target must lie in (0, 1), got {target!r}")
    scale = frequency_scale(params)
    total_phase = max(duration * scale, 1.0)
    u = 0.6 * (120.0 * target / total_phase) ** 0.25
    u = min(u, 0.9 * RESOLUTION_GUARD)
    step = u / scale if scale > 0 else 1e-3
    needed = int(math.ceil(duration / step)) + 8
    return IntegratorConfig(step=step, max_steps=max(needed, 1))


def _check_budget_and_guard(params: DriveParams, t: float, cfg: IntegratorConfig) -> int:
    product = cfg.step * frequency_scale(params)
    if product > RESOLUTION_GUARD * (1.0 + 1e-12):
        raise StepTooLargeError(
            f"step {cfg.step:.3e} violates the resolution guard: "
            f"h*max_frequency = {product:.3f} > {RESOLUTION_GUARD}"
        )
    n_steps = int(math.ceil(t / cfg.step - 1e-12)) if t > 0 else 0
    if n_steps > cfg.max_steps:
        raise StepBudgetError(f"{n_steps} steps needed but max_steps = {cfg.max_steps}")
    return n_steps


def _rk4_update_matrix(params: DriveParams, h: float) -> np.ndarray:
    """Classical-RK4 step matrix for the (alpha, beta') system: the degree-4
    Taylor polynomial of exp(h*L) with L = i*M."""
    frame = eigenframe(params)
    wr = params.omega_rot
    half = frame.theta / 2.0
    coupling = 0.5 * wr * math.sin(frame.theta)
    m = np.array(
        [
            [-(frame.omega / 2.0 + wr * math.sin(half) ** 2), coupling],
            [coupling, frame.omega / 2.0 - wr * math.cos(half) ** 2],
        ]
    )
    hl = 1j * h * m
    r = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in (1, 2, 3, 4):
        term = term @ hl / k
        r = r + term
    return r


def propagate_ode(
    params: DriveParams, amps0: Amplitudes, t: float, cfg: IntegratorConfig | None = None
) -> Amplitudes:
    """RK4 propagation of the eigenbasis amplitudes over duration t."""
    if not (math.isfinite(t) and t >= 0.0):
        raise InvalidParameterError(f"t must be finite and non-negative, got {t!r}")
    require_normalized(amps0)
    if cfg is None:
        cfg = IntegratorConfig()
    _check_budget_and_guard(params, t, cfg)

    n_full = int(t / cfg.step)
    remainder = t - n_full * cfg.step
    r = _rk4_update_matrix(params, cfg.step)
    r00, r01, r10, r11 = complex(r[0, 0]), complex(r[0, 1]), complex(r[1, 0]), complex(r[1, 1])
    a, b = complex(amps0.alpha), complex(amps0.beta)
    for _ in range(n_full):
        a, b = r00 * a + r01 * b, r10 * a + r11 * b
    if remainder > 1e-15 * max(t, 1.0):
        rp = _rk4_update_matrix(params, remainder)
        a, b = complex(rp[0, 0]) * a + complex(rp[0, 1]) * b, complex(rp[1, 0]) * a + complex(
            rp[1, 1]
        ) * b
    return Amplitudes(alpha=a, beta=b * cmath.exp(1j * params.omega_rot * t))


def propagate_lab(
    params: DriveParams, psi0: LabSpinor, t: float, cfg: IntegratorConfig | None = None
) -> LabSpinor:
    """RK4 on the lab-frame Schrodinger equation with the time-dependent H(t)."""
    if not (math.isfinite(t) and t >= 0.0):
        raise InvalidParameterError(f"t must be finite and non-negative, got {t!r}")
    if psi0.norm_error > 1e-6:
        raise InvalidParameterError(
            f"psi0 must be normalized (|norm^2 - 1| = {psi0.norm_error:.3e})"
        )
    if cfg is None:
        cfg = IntegratorConfig()
    _check_budget_and_guard(params, t, cfg)

    dz = -0.5j * params.delta
    off = -0.5j * params.omega_rabi
    wr = params.omega_rot

    def stages(c0: complex, c1: complex, h: float, p0: complex, pm: complex, pe: complex):
        # derivative: f0 = dz*c0 + off*conj(p)*c1 ; f1 = off*p*c0 - dz*c1
        k10 = dz * c0 + off * p0.conjugate() * c1
        k11 = off * p0 * c0 - dz * c1
        u0, u1 = c0 + 0.5 * h * k10, c1 + 0.5 * h * k11
        k20 = dz * u0 + off * pm.conjugate() * u1
        k21 = off * pm * u0 - dz * u1
        u0, u1 = c0 + 0.5 * h * k20, c1 + 0.5 * h * k21
        k30 = dz * u0 + off * pm.conjugate() * u1
        k31 = off * pm * u0 - dz * u1
        u0, u1 = c0 + h * k30, c1 + h * k31
        k40 = dz * u0 + off * pe.conjugate() * u1
        k41 = off * pe * u0 - dz * u1
        c0 = c0 + h / 6.0 * (k10 + 2.0 * (k20 + k30) + k40)
        c1 = c1 + h / 6.0 * (k11 + 2.0 * (k21 + k31) + k41)
        return c0, c1

    h = cfg.step
    n_full = int(t / h)
    remainder = t - n_full * h
    q = cmath.exp(0.5j * wr * h)
    q2 = q * q
    c0, c1 = complex(psi0.c0), complex(psi0.c1)
    p = 1.0 + 0.0j
    for k in range(n_full):
        if k % _RESYNC_INTERVAL == 0:
            p = cmath.exp(1j * wr * (k * h))
        c0, c1 = stages(c0, c1, h, p, p * q, p * q2)
        p = p * q2
    if remainder > 1e-15 * max(t, 1.0):
        p = cmath.exp(1j * wr * (n_full * h))
        qr = cmath.exp(0.5j * wr * remainder)
        c0, c1 = stages(c0, c1, remainder, p, p * qr, p * qr * qr)
    return LabSpinor(c0=c0, c1=c1)


def to_eigenbasis(params: DriveParams, t: float, psi: LabSpinor) -> Amplitudes:
    """Project a lab spinor onto the instantaneous eigenstates at time t."""
    theta = math.atan2(params.omega_rabi, params.delta)
    ch, sh = math.cos(theta / 2.0), math.sin(theta / 2.0)
    phase = cmath.exp(1j * params.omega_rot * t)
    alpha = ch * psi.c0 + sh * psi.c1 / phase
    beta = sh * phase * psi.c0 - ch * psi.c1
    return Amplitudes(alpha=alpha, beta=beta)


def from_eigenbasis(params: DriveParams, t: float, amps: Amplitudes) -> LabSpinor:
    """Rebuild the lab spinor alpha|e(t)> + beta|g(t)>."""
    theta = math.atan2(params.omega_rabi, params.delta)
    ch, sh = math.cos(theta / 2.0), math.sin(theta / 2.0)
    phase = cmath.exp(1j * params.omega_rot * t)
    c0 = ch * amps.alpha + sh * amps.beta / phase
    c1 = sh * phase * amps.alpha - ch * amps.beta
    return LabSpinor(c0=c0, c1=c1)

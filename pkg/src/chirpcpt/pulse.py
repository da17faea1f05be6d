"""Tanh-chirped few-cycle pulse with a Gaussian envelope.

Times are in fs and angular frequencies in rad/fs (hbar = 1).  The field
amplitude is carried directly as a Rabi frequency, so there is no separate
dipole moment or field strength.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# arccosh argument within this distance of 1 is treated as a tangency
TANGENCY_TOL = 1e-12


@dataclass(frozen=True)
class ChirpedPulse:
    """Parameters of the chirped pulse.

    The coupling is ``omega_rabi_peak * exp(-(t/tau_p)**2) * cos(phase(t))``
    with ``phase(t) = omega_carrier*t - alpha*tanh((t + t0)/tau_chirp)``.
    """

    omega_rabi_peak: float = 0.60
    tau_p: float = 16.5
    omega_carrier: float = 3.6
    alpha: float = 10.0
    t0: float = 16.5
    tau_chirp: float = 16.5

    def __post_init__(self):
        if not self.tau_p > 0:
            raise ValueError(f"tau_p must be positive, got {self.tau_p}")
        if not self.tau_chirp > 0:
            raise ValueError(f"tau_chirp must be positive, got {self.tau_chirp}")
        if not self.omega_rabi_peak >= 0:
            raise ValueError(f"omega_rabi_peak must be non-negative, got {self.omega_rabi_peak}")
        if not self.omega_carrier > 0:
            raise ValueError(f"omega_carrier must be positive, got {self.omega_carrier}")
        if not math.isfinite(self.alpha) or not math.isfinite(self.t0):
            raise ValueError("alpha and t0 must be finite")

    @property
    def tau_fwhm(self) -> float:
        return 1.177 * self.tau_p


def envelope(t, p: ChirpedPulse):
    """Gaussian envelope of the Rabi coupling, in rad/fs."""
    return p.omega_rabi_peak * np.exp(-((t / p.tau_p) ** 2))


def chirp_phase(t, p: ChirpedPulse):
    """The time-varying part of the phase, ``-alpha*tanh((t + t0)/tau)``."""
    return -p.alpha * np.tanh((t + p.t0) / p.tau_chirp)


def phase(t, p: ChirpedPulse):
    """Total carrier phase ``omega*t + delta(t)`` in rad."""
    return p.omega_carrier * t + chirp_phase(t, p)


def rabi_coupling(t, p: ChirpedPulse):
    """Full oscillating coupling (no rotating-wave approximation)."""
    return envelope(t, p) * np.cos(phase(t, p))


def instantaneous_frequency(t, p: ChirpedPulse):
    """Time derivative of :func:`phase`; a sech^2 dip centred at ``t = -t0``."""
    sech = 1.0 / np.cosh((t + p.t0) / p.tau_chirp)
    return p.omega_carrier - (p.alpha / p.tau_chirp) * sech**2


def resonance_crossings(p: ChirpedPulse, omega_target: float) -> list[float]:
    """Times at which the instantaneous frequency equals ``omega_target``.

    Uses the closed-form inversion of the sech^2 profile.  Returns an empty
    list when the target is never reached, ``[-t0]`` at exact tangency and
    otherwise the two symmetric roots, sorted ascending.
    """
    detuning = p.omega_carrier - omega_target
    depth = p.alpha / p.tau_chirp
    if detuning <= 0 or depth <= 0 or detuning > depth * (1 + TANGENCY_TOL):
        return []
    arg = math.sqrt(depth / detuning)
    if abs(arg - 1.0) <= TANGENCY_TOL:
        return [-p.t0]
    half_width = p.tau_chirp * math.acosh(arg)
    return [-p.t0 - half_width, -p.t0 + half_width]

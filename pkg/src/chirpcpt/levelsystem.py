"""Y-type four-level atom and its non-RWA Hamiltonian.

Level |1> couples to |2>, which couples upward to both |3> and |4>.  There
is no direct 1-3, 1-4 or 3-4 coupling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pulse import ChirpedPulse, rabi_coupling


@dataclass(frozen=True)
class LevelSystem:
    """Absolute level energies (rad/fs) and the two dipole ratios.

    ``beta`` scales the 2-3 dipole and ``gamma`` the 2-4 dipole relative to
    the 1-2 dipole.
    """

    omega_levels: tuple[float, float, float, float]
    beta: float = 0.90
    gamma: float = 1.10

    def __post_init__(self):
        levels = tuple(float(w) for w in self.omega_levels)
        if len(levels) != 4:
            raise ValueError("omega_levels needs exactly four entries")
        object.__setattr__(self, "omega_levels", levels)
        w1, w2, w3, w4 = levels
        if not (w2 > w1 and w3 > w2 and w4 > w2):
            raise ValueError(f"levels {levels} do not form a Y system")
        # beta = 0 is allowed so that a leg can be switched off
        for name in ("beta", "gamma"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")

    @property
    def coupling_pattern(self) -> np.ndarray:
        """Real symmetric matrix V such that H(t) = diag(levels) + c(t) V."""
        v = np.zeros((4, 4))
        v[0, 1] = v[1, 0] = -1.0
        v[1, 2] = v[2, 1] = -self.beta
        v[1, 3] = v[3, 1] = -self.gamma
        return v

    def shifted(self, offset: float) -> "LevelSystem":
        """Same system with every level moved by ``offset``."""
        return LevelSystem(tuple(w + offset for w in self.omega_levels), self.beta, self.gamma)


def from_transitions(omega21: float, omega32: float, omega42: float,
                     beta: float = 0.90, gamma: float = 1.10) -> LevelSystem:
    """Build a :class:`LevelSystem` from transition frequencies, with ground level at 0."""
    for name, value in (("omega21", omega21), ("omega32", omega32), ("omega42", omega42)):
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value}")
    return LevelSystem((0.0, omega21, omega21 + omega32, omega21 + omega42), beta, gamma)


def default_system() -> LevelSystem:
    """Sodium 3s, 3p, 5s, 4d levels."""
    return from_transitions(3.19, 3.06, 3.30, 0.90, 1.10)


def hamiltonian_at(t: float, sys: LevelSystem, p: ChirpedPulse) -> np.ndarray:
    """Dense 4x4 complex Hamiltonian in rad/fs at time ``t``."""
    h = np.diag(np.asarray(sys.omega_levels, dtype=complex))
    h += float(rabi_coupling(t, p)) * sys.coupling_pattern
    return h

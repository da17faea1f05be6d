"""Selective population transfer in Y-type four-level atoms by a chirped few-cycle pulse."""

from .levelsystem import LevelSystem, default_system, from_transitions, hamiltonian_at
from .propagator import (
    PropagationError,
    SimulationConfig,
    TimeSeries,
    final_populations,
    propagate,
    propagate_state,
    propagate_unitary,
    rhs,
)
from .pulse import (
    ChirpedPulse,
    envelope,
    instantaneous_frequency,
    phase,
    rabi_coupling,
    resonance_crossings,
)
from .sweep import AxisSpec, SweepGrid, sweep

__all__ = [
    "AxisSpec", "ChirpedPulse", "LevelSystem", "PropagationError", "SimulationConfig",
    "SweepGrid", "TimeSeries", "default_system", "envelope", "final_populations",
    "from_transitions", "hamiltonian_at", "instantaneous_frequency", "phase", "propagate",
    "propagate_state", "propagate_unitary", "rabi_coupling", "resonance_crossings", "rhs",
    "sweep",
]

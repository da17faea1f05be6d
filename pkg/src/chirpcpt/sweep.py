"""Final populations over 1D and 2D lattices of pulse/atom parameters."""
from __future__ import annotations

import dataclasses
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .levelsystem import LevelSystem
from .propagator import PropagationError, SimulationConfig, final_populations, propagate
from .pulse import ChirpedPulse

PULSE_PARAMETERS = ("alpha", "tau_chirp", "omega_rabi_peak", "t0", "tau_p", "omega_carrier")
SYSTEM_PARAMETERS = ("beta", "gamma")
PARAMETERS = PULSE_PARAMETERS + SYSTEM_PARAMETERS


@dataclass(frozen=True)
class AxisSpec:
    parameter: str
    min: float
    max: float
    count: int

    def __post_init__(self):
        if self.parameter not in PARAMETERS:
            raise ValueError(f"unknown sweep parameter {self.parameter!r}; choose from {PARAMETERS}")
        if self.min > self.max:
            raise ValueError(f"axis {self.parameter}: min {self.min} exceeds max {self.max}")
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"axis {self.parameter}: count must be a positive integer")
        if self.count == 1 and self.min != self.max:
            raise ValueError(f"axis {self.parameter}: a single point needs min == max")

    @classmethod
    def parse(cls, text: str) -> "AxisSpec":
        """Parse ``param:min:max:count``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError(f"axis {text!r} is not of the form param:min:max:count")
        name, lo, hi, count = parts
        return cls(name, float(lo), float(hi), int(count))

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.count)


@dataclass
class SweepGrid:
    """Final populations on the lattice spanned by ``axes``.

    ``populations`` has shape ``(*counts, 4)``; failed points hold NaN and are
    marked False in ``ok`` with the reason in ``errors``.
    """

    axes: tuple[AxisSpec, ...]
    populations: np.ndarray
    ok: np.ndarray
    errors: dict = field(default_factory=dict)
    system: LevelSystem | None = None
    pulse: ChirpedPulse | None = None
    config: SimulationConfig | None = None

    @property
    def shape(self) -> tuple[int, ...]:
        return self.ok.shape

    def points(self):
        """Yield ``(index, axis values)`` in row-major order."""
        for index in np.ndindex(*self.shape):
            yield index, tuple(ax.values[i] for ax, i in zip(self.axes, index))


def _apply(sys: LevelSystem, pulse: ChirpedPulse, updates: dict) -> tuple[LevelSystem, ChirpedPulse]:
    pulse_updates = {k: v for k, v in updates.items() if k in PULSE_PARAMETERS}
    sys_updates = {k: v for k, v in updates.items() if k in SYSTEM_PARAMETERS}
    if pulse_updates:
        pulse = dataclasses.replace(pulse, **pulse_updates)
    if sys_updates:
        sys = dataclasses.replace(sys, **sys_updates)
    return sys, pulse


def _run_point(job):
    sys, pulse, cfg, rho0, updates = job
    try:
        sys, pulse = _apply(sys, pulse, updates)
        return final_populations(propagate(sys, pulse, cfg, rho0)), None
    except (PropagationError, ValueError) as exc:
        return None, str(exc)


def sweep(base_sys: LevelSystem, base_pulse: ChirpedPulse, cfg: SimulationConfig | None,
          axes, workers: int | None = 1, rho0=None) -> SweepGrid:
    """Propagate every lattice point independently and collect final populations.

    ``workers`` > 1 evaluates points in a process pool (``None`` means all
    cores).  Each point lands in its own slot, so the result does not depend
    on the worker count.  A failing point is flagged, not fatal.
    """
    cfg = cfg or SimulationConfig()
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise ValueError("sweep needs one or two axes")
    names = [ax.parameter for ax in axes]
    if len(set(names)) != len(names):
        raise ValueError(f"sweep axes must be distinct, got {names}")

    shape = tuple(ax.count for ax in axes)
    jobs = [
        (base_sys, base_pulse, cfg, rho0, dict(zip(names, map(float, vals))))
        for vals in itertools.product(*(ax.values for ax in axes))
    ]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_run_point, jobs))
    else:
        results = [_run_point(job) for job in jobs]

    pops = np.full(shape + (4,), np.nan)
    ok = np.zeros(shape, dtype=bool)
    errors = {}
    for flat, (value, err) in enumerate(results):
        index = np.unravel_index(flat, shape)
        if err is None:
            pops[index] = value
            ok[index] = True
        else:
            errors[tuple(int(i) for i in index)] = err
    return SweepGrid(axes, pops, ok, errors, base_sys, base_pulse, cfg)

"""Density-matrix propagation under the chirped pulse.

Three routes are provided and are expected to agree:

* :func:`propagate` integrates ``d rho/dt = -i [H(t), rho]`` with an adaptive
  Dormand-Prince pair (or fixed-step RK4);
* :func:`propagate_state` integrates the Schroedinger equation for a pure
  state with the same error control;
* :func:`propagate_unitary` applies ``exp(-i H(t_mid) dt)`` piecewise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _rk
from .levelsystem import LevelSystem, hamiltonian_at
from .pulse import ChirpedPulse, envelope, instantaneous_frequency, rabi_coupling

METHODS = ("adaptive_rk", "fixed_rk4", "unitary_expm")

TRACE_TOL = 1e-8
HERMITIAN_TOL = 1e-10
PURITY_TOL = 1e-6
POPULATION_TOL = 1e-10
# abort only when drift exceeds the stated tolerance by this factor
ABORT_FACTOR = 10.0


class PropagationError(RuntimeError):
    """Numerical failure during propagation."""

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message)
        self.t = t


@dataclass(frozen=True)
class SimulationConfig:
    t_start: float = -99.0
    t_end: float = 99.0
    sample_interval: float = 0.25
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    method: str = "adaptive_rk"
    fixed_dt: float = 0.002

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ValueError(f"t_start ({self.t_start}) must be below t_end ({self.t_end})")
        for name in ("sample_interval", "rel_tol", "abs_tol", "fixed_dt"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")

    def sample_times(self) -> np.ndarray:
        """Sample grid from ``t_start`` in steps of ``sample_interval``; always ends on ``t_end``."""
        n = math.floor((self.t_end - self.t_start) / self.sample_interval + 1e-9)
        times = self.t_start + self.sample_interval * np.arange(n + 1)
        if self.t_end - times[-1] > 1e-9 * self.sample_interval:
            times = np.append(times, self.t_end)
        else:
            times[-1] = self.t_end
        return times


@dataclass
class TimeSeries:
    """Sampled populations, selected coherences and pulse diagnostics."""

    times: np.ndarray
    populations: np.ndarray  # (n, 4) real
    coherences: np.ndarray  # (n, 3) complex: rho12, rho23, rho24
    envelope: np.ndarray
    frequency: np.ndarray
    rho: np.ndarray | None = field(default=None, repr=False)  # (n, 4, 4) when kept

    def __len__(self):
        return len(self.times)


COHERENCE_INDEX = ((0, 1), (1, 2), (1, 3))


def ground_state() -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def rhs(t: float, rho: np.ndarray, sys: LevelSystem, p: ChirpedPulse) -> np.ndarray:
    """Right-hand side ``-i (H rho - rho H)`` of the von Neumann equation."""
    h = hamiltonian_at(t, sys, p)
    return -1j * (h @ rho - rho @ h)


def _interaction_liouville_rhs(sys: LevelSystem, p: ChirpedPulse):
    # rho_I = exp(iDt) rho exp(-iDt) with D = diag(levels): the free precession
    # drops out and only c(t) [V_I(t), rho_I] remains
    w = np.asarray(sys.omega_levels)
    v = -1j * sys.coupling_pattern.astype(complex)
    peak, tp, wc = p.omega_rabi_peak, p.tau_p, p.omega_carrier
    alpha, t0, tc = p.alpha, p.t0, p.tau_chirp
    exp, cos, tanh = math.exp, math.cos, math.tanh

    def f(t, rho):
        c = peak * exp(-((t / tp) ** 2)) * cos(wc * t - alpha * tanh((t + t0) / tc))
        if c == 0.0:
            return np.zeros_like(rho)
        rot = np.exp(1j * w * t)
        vi = (rot[:, None] * v) * rot.conj()[None, :]
        return c * (vi @ rho - rho @ vi)

    return f


def _to_lab(times, rhos, w):
    rot = np.exp(-1j * np.outer(times, w))
    return rot[:, :, None] * rhos * rot.conj()[:, None, :]


def _interaction_rhs(sys: LevelSystem, p: ChirpedPulse):
    # phi = exp(i diag(w) t) psi, so the free evolution drops out and the
    # integrator only has to resolve the coupling
    w = np.asarray(sys.omega_levels)
    v = -1j * sys.coupling_pattern.astype(complex)

    def f(t, phi):
        rot = np.exp(1j * w * t)
        return float(rabi_coupling(t, p)) * (rot * (v @ (phi / rot)))

    return f


def check_invariants(t: float, rho: np.ndarray, purity0: float = 1.0,
                     factor: float = ABORT_FACTOR) -> None:
    """Raise :class:`PropagationError` if ``rho`` drifted past ``factor`` x the tolerances.

    Purity is compared with ``purity0``, the purity of the initial state.
    """
    trace_err = abs(np.trace(rho) - 1.0)
    herm_err = float(np.max(np.abs(rho - rho.conj().T)))
    purity_err = abs(np.trace(rho @ rho).real - purity0)
    pops = np.diag(rho).real
    problems = []
    if trace_err > factor * TRACE_TOL:
        problems.append(f"|Tr rho - 1| = {trace_err:.3g}")
    if herm_err > factor * HERMITIAN_TOL:
        problems.append(f"hermiticity error {herm_err:.3g}")
    if purity_err > factor * PURITY_TOL:
        problems.append(f"purity drift {purity_err:.3g}")
    if pops.min() < -factor * POPULATION_TOL or pops.max() > 1 + factor * POPULATION_TOL:
        problems.append(f"populations out of range {pops}")
    if problems:
        raise PropagationError(f"invariant violation at t = {t:.6g} fs: " + "; ".join(problems), t)


def _validate_rho0(rho0: np.ndarray) -> np.ndarray:
    rho0 = np.array(rho0, dtype=complex)
    if rho0.shape != (4, 4):
        raise ValueError(f"rho0 must be 4x4, got shape {rho0.shape}")
    if np.max(np.abs(rho0 - rho0.conj().T)) > HERMITIAN_TOL:
        raise ValueError("rho0 is not Hermitian")
    if abs(np.trace(rho0) - 1) > TRACE_TOL:
        raise ValueError("rho0 does not have unit trace")
    return rho0


def _series(times, rhos, p, keep_rho) -> TimeSeries:
    pops = np.real(np.einsum("kii->ki", rhos))
    coh = np.stack([rhos[:, i, j] for i, j in COHERENCE_INDEX], axis=1)
    return TimeSeries(
        times=times,
        populations=pops,
        coherences=coh,
        envelope=envelope(times, p),
        frequency=instantaneous_frequency(times, p),
        rho=rhos if keep_rho else None,
    )


def propagate(sys: LevelSystem, p: ChirpedPulse, cfg: SimulationConfig | None = None,
              rho0: np.ndarray | None = None, keep_rho: bool = False) -> TimeSeries:
    """Propagate a density matrix through the pulse and sample it.

    The equation of motion is integrated in the interaction picture of the
    bare levels, which leaves populations untouched and removes the fast free
    precession from the error budget; samples are returned in the lab frame.
    The integrator is picked by ``cfg.method``.  Every recorded sample is
    checked against the trace, Hermiticity and purity invariants and the run
    aborts with :class:`PropagationError` on excessive drift.
    """
    cfg = cfg or SimulationConfig()
    rho0 = ground_state() if rho0 is None else _validate_rho0(rho0)
    if cfg.method == "unitary_expm":
        return propagate_unitary(sys, p, cfg, rho0, keep_rho)

    purity0 = np.trace(rho0 @ rho0).real

    # every checked invariant is unchanged by the frame rotation
    def guard(k, t, rho):
        check_invariants(t, rho, purity0)

    times = cfg.sample_times()
    w = np.asarray(sys.omega_levels)
    rot0 = np.exp(1j * w * times[0])
    rho_i = rot0[:, None] * rho0 * rot0.conj()[None, :]
    f = _interaction_liouville_rhs(sys, p)
    try:
        if cfg.method == "adaptive_rk":
            rhos = _rk.dopri54(f, rho_i, times, cfg.rel_tol, cfg.abs_tol, callback=guard)
        else:
            rhos = _rk.rk4_fixed(f, rho_i, times, cfg.fixed_dt, callback=guard)
    except _rk.StepSizeUnderflow as exc:
        raise PropagationError(str(exc), exc.t) from exc
    return _series(times, _to_lab(times, rhos, w), p, keep_rho)


def propagate_state(sys: LevelSystem, p: ChirpedPulse, cfg: SimulationConfig | None = None,
                    psi0=None) -> tuple[np.ndarray, np.ndarray]:
    """Integrate ``d psi/dt = -i H(t) psi`` for a pure state.

    The integration runs in the interaction picture of the bare levels,
    which conserves the norm far better than the lab frame at the same
    tolerance.  Returned amplitudes are lab-frame, shape ``(n, 4)``, so that
    ``psi psi^dagger`` is directly comparable with :func:`propagate`.
    """
    cfg = cfg or SimulationConfig()
    psi0 = np.array([1, 0, 0, 0] if psi0 is None else psi0, dtype=complex)
    if abs(np.linalg.norm(psi0) - 1) > 1e-12:
        raise ValueError("psi0 must be normalised")
    times = cfg.sample_times()
    w = np.asarray(sys.omega_levels)
    psi0 = np.exp(1j * w * times[0]) * psi0

    def guard(k, t, psi):
        drift = abs(np.vdot(psi, psi).real - 1)
        if drift > ABORT_FACTOR * TRACE_TOL:
            raise PropagationError(f"norm drifted by {drift:.3g} at t = {t:.6g} fs", t)

    f = _interaction_rhs(sys, p)
    try:
        if cfg.method == "fixed_rk4":
            phi = _rk.rk4_fixed(f, psi0, times, cfg.fixed_dt, callback=guard)
        else:
            phi = _rk.dopri54(f, psi0, times, cfg.rel_tol, cfg.abs_tol, callback=guard)
    except _rk.StepSizeUnderflow as exc:
        raise PropagationError(str(exc), exc.t) from exc
    return times, np.exp(-1j * np.outer(times, w)) * phi


def propagate_unitary(sys: LevelSystem, p: ChirpedPulse, cfg: SimulationConfig | None = None,
                      rho0: np.ndarray | None = None, keep_rho: bool = False) -> TimeSeries:
    """Piecewise-constant stepping ``rho -> U rho U^dagger`` with midpoint Hamiltonians.

    Each sampling interval is split into equal steps no longer than
    ``cfg.fixed_dt``.  The step propagators come from a batched eigen
    decomposition of the (real symmetric) midpoint Hamiltonians.
    """
    cfg = cfg or SimulationConfig()
    rho = ground_state() if rho0 is None else _validate_rho0(rho0)
    times = cfg.sample_times()
    spans = np.diff(times)
    nsteps = np.maximum(1, np.ceil(spans / cfg.fixed_dt - 1e-9).astype(int))
    h = np.repeat(spans / nsteps, nsteps)
    starts = np.repeat(times[:-1], nsteps) + h * (
        np.arange(nsteps.sum()) - np.repeat(np.cumsum(nsteps) - nsteps, nsteps))
    mids = starts + h / 2

    levels = np.asarray(sys.omega_levels)
    ham = np.broadcast_to(np.diag(levels), (len(mids), 4, 4)).copy()
    ham += rabi_coupling(mids, p)[:, None, None] * sys.coupling_pattern
    evals, evecs = np.linalg.eigh(ham)
    phases = np.exp(-1j * evals * h[:, None])
    steps = np.einsum("kij,kj,klj->kil", evecs, phases, evecs)

    rhos = np.empty((len(times), 4, 4), dtype=complex)
    rhos[0] = rho
    k = 0
    for idx, n in enumerate(nsteps, start=1):
        u = steps[k]
        for j in range(k + 1, k + n):
            u = steps[j] @ u
        k += n
        rho = u @ rho @ u.conj().T
        rhos[idx] = rho
    return _series(times, rhos, p, keep_rho)


def final_populations(ts: TimeSeries) -> np.ndarray:
    """Populations of the last sample."""
    if len(ts) == 0:
        raise ValueError("empty time series")
    return ts.populations[-1].copy()

"""Explicit Runge-Kutta steppers for complex array-valued ODEs."""
from __future__ import annotations

import math

import numpy as np

# Dormand-Prince 5(4), FSAL
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
# fifth-order weights minus embedded fourth-order weights
_E = (
    71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40,
)

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


class StepSizeUnderflow(RuntimeError):
    """The adaptive stepper could not meet the tolerance."""

    def __init__(self, t: float, h: float):
        super().__init__(f"step size underflow at t = {t:.6g} fs (h = {h:.3g} fs)")
        self.t = t
        self.h = h


def _error_norm(err, y_old, y_new, rtol, atol):
    scale = atol + rtol * np.maximum(np.abs(y_old), np.abs(y_new))
    norm = float(np.max(np.abs(err) / scale))
    # NaN/inf from an overflowing trial step means reject
    return norm if np.isfinite(norm) else np.inf


def dopri54(f, y0, t_eval, rtol=1e-8, atol=1e-10, h0=None, callback=None):
    """Integrate ``y' = f(t, y)`` and return ``y`` at every time in ``t_eval``.

    The error of each step is measured in the max norm.  Steps are clipped so
    that every requested time is hit exactly rather than interpolated.
    ``t_eval[0]`` is the initial time.  ``callback(k, t, y)`` runs on each
    recorded sample and may raise to abort.
    """
    t_eval = np.asarray(t_eval, dtype=float)
    y = np.array(y0, dtype=complex)
    out = np.empty((len(t_eval),) + y.shape, dtype=complex)
    out[0] = y
    if callback is not None:
        callback(0, t_eval[0], y)

    t = float(t_eval[0])
    k1 = f(t, y)
    h = h0 if h0 is not None else _initial_step(f, t, y, k1, rtol, atol)
    stages = [None] * 7
    with np.errstate(over="ignore", invalid="ignore"):
        _dopri_loop(f, y, k1, h, t, t_eval, out, rtol, atol, stages, callback)
    return out


def _dopri_loop(f, y, k1, h, t, t_eval, out, rtol, atol, stages, callback):
    for idx in range(1, len(t_eval)):
        t_target = float(t_eval[idx])
        while t < t_target:
            h_min = 1e-12 * max(1.0, abs(t))
            last = t + h >= t_target
            h_step = t_target - t if last else h
            stages[0] = k1
            for s in range(1, 7):
                acc = y.copy()
                for j, a in enumerate(_A[s]):
                    if a:
                        acc += (h_step * a) * stages[j]
                stages[s] = f(t + _C[s] * h_step, acc)
            # last stage point is the fifth-order solution
            y_new = acc
            err = h_step * sum(e * k for e, k in zip(_E, stages) if e)
            norm = _error_norm(err, y, y_new, rtol, atol)
            if norm <= 1.0:
                t = t_target if last else t + h_step
                y = y_new
                k1 = stages[6]
                factor = MAX_FACTOR if norm == 0 else min(MAX_FACTOR, SAFETY * norm ** -0.2)
                # a step shortened to land on a sample says nothing about h
                if not last or h_step >= h:
                    h = h_step * factor
            else:
                h = h_step * max(MIN_FACTOR, SAFETY * norm ** -0.2)
                if h < h_min:
                    raise StepSizeUnderflow(t, h)
        out[idx] = y
        if callback is not None:
            callback(idx, t, y)


def _initial_step(f, t, y, f0, rtol, atol):
    # Hairer, Norsett & Wanner, Solving ODEs I, sec. II.4
    scale = atol + rtol * np.abs(y)
    d0 = float(np.max(np.abs(y) / scale))
    d1 = float(np.max(np.abs(f0) / scale))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    f1 = f(t + h0, y + h0 * f0)
    d2 = float(np.max(np.abs(f1 - f0) / scale)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1)


def rk4_fixed(f, y0, t_eval, dt, callback=None):
    """Classical RK4 with steps of at most ``dt``, landing on each sample time."""
    t_eval = np.asarray(t_eval, dtype=float)
    y = np.array(y0, dtype=complex)
    out = np.empty((len(t_eval),) + y.shape, dtype=complex)
    out[0] = y
    if callback is not None:
        callback(0, t_eval[0], y)
    for idx in range(1, len(t_eval)):
        t_a, t_b = float(t_eval[idx - 1]), float(t_eval[idx])
        n = max(1, math.ceil((t_b - t_a) / dt - 1e-9))
        h = (t_b - t_a) / n
        for i in range(n):
            t = t_a + i * h
            k1 = f(t, y)
            k2 = f(t + h / 2, y + (h / 2) * k1)
            k3 = f(t + h / 2, y + (h / 2) * k2)
            k4 = f(t + h, y + h * k3)
            y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[idx] = y
        if callback is not None:
            callback(idx, t_b, y)
    return out

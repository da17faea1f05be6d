import numpy as np
import pytest

from chirpcpt import _rk


def test_dopri_exact_rotation():
    t = np.linspace(0.0, 20.0, 41)
    y = _rk.dopri54(lambda t, y: -1j * np.array([1.0, 3.0]) * y, [1.0, 1.0], t, 1e-10, 1e-12)
    exact = np.exp(-1j * np.outer(t, [1.0, 3.0]))
    assert np.max(np.abs(y - exact)) < 1e-8


def test_dopri_lands_on_samples_and_converges():
    # y' = cos(t) y, y = exp(sin t)
    t = np.array([0.0, 0.3, 0.31, 2.0, 7.7])
    coarse = _rk.dopri54(lambda t, y: np.cos(t) * y, [1.0], t, 1e-6, 1e-9)[:, 0]
    fine = _rk.dopri54(lambda t, y: np.cos(t) * y, [1.0], t, 1e-11, 1e-14)[:, 0]
    exact = np.exp(np.sin(t))
    assert np.max(np.abs(fine - exact)) < 1e-9
    assert np.max(np.abs(fine - exact)) < np.max(np.abs(coarse - exact))


def test_dopri_underflow_reports_time():
    # blows up at t = 1
    with pytest.raises(_rk.StepSizeUnderflow) as info:
        _rk.dopri54(lambda t, y: y**2, [1.0], [0.0, 2.0], 1e-8, 1e-10)
    assert info.value.t == pytest.approx(1.0, abs=1e-6)


def test_rk4_order():
    t = np.array([0.0, 1.0, 2.0])
    f = lambda t, y: np.cos(t) * y
    errs = [abs(_rk.rk4_fixed(f, [1.0], t, dt)[-1, 0] - np.exp(np.sin(2.0))) for dt in (0.1, 0.05)]
    assert 12 < errs[0] / errs[1] < 20


def test_callback_can_abort():
    def stop(k, t, y):
        if k == 2:
            raise RuntimeError("stop")

    with pytest.raises(RuntimeError):
        _rk.dopri54(lambda t, y: -1j * y, [1.0], [0.0, 1.0, 2.0, 3.0], 1e-8, 1e-10, callback=stop)

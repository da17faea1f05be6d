import dataclasses

import numpy as np
import pytest

from chirpcpt.levelsystem import default_system
from chirpcpt.propagator import SimulationConfig, final_populations, propagate
from chirpcpt.pulse import ChirpedPulse
from chirpcpt.sweep import AxisSpec, sweep

SHORT = SimulationConfig(t_start=-60.0, t_end=60.0, sample_interval=2.0)


def test_axis_values_inclusive():
    assert AxisSpec("alpha", 9, 11, 5).values.tolist() == [9.0, 9.5, 10.0, 10.5, 11.0]
    assert AxisSpec("tau_chirp", 16.5, 16.5, 1).values.tolist() == [16.5]


def test_axis_parse():
    assert AxisSpec.parse("tau_chirp:12:20:9") == AxisSpec("tau_chirp", 12.0, 20.0, 9)


@pytest.mark.parametrize("text", ["alpha:9:11", "bogus:1:2:3", "alpha:11:9:3", "alpha:1:2:0",
                                  "alpha:1:2:1", "alpha:a:2:3"])
def test_axis_rejects(text):
    with pytest.raises(ValueError):
        AxisSpec.parse(text)


def test_degenerate_grid_equals_direct():
    sys, p = default_system(), ChirpedPulse()
    grid = sweep(sys, p, SHORT, [AxisSpec("alpha", 10.0, 10.0, 1)])
    direct = final_populations(propagate(sys, p, SHORT))
    assert grid.shape == (1,)
    assert np.array_equal(grid.populations[0], direct)


def test_axes_must_be_distinct_and_few():
    sys, p = default_system(), ChirpedPulse()
    with pytest.raises(ValueError):
        sweep(sys, p, SHORT, [AxisSpec("alpha", 9, 10, 2), AxisSpec("alpha", 9, 10, 2)])
    with pytest.raises(ValueError):
        sweep(sys, p, SHORT, [AxisSpec("alpha", 9, 10, 2)] * 0)


def test_two_dimensional_layout():
    sys, p = default_system(), ChirpedPulse()
    axes = [AxisSpec("alpha", 9, 11, 3), AxisSpec("beta", 0.8, 1.0, 2)]
    grid = sweep(sys, p, SHORT, axes)
    assert grid.populations.shape == (3, 2, 4)
    assert grid.ok.all()
    assert np.abs(grid.populations.sum(axis=-1) - 1).max() < 1e-8
    # spot-check one point against a direct run
    direct = final_populations(propagate(dataclasses.replace(sys, beta=1.0),
                                         dataclasses.replace(p, alpha=10.0), SHORT))
    assert np.array_equal(grid.populations[1, 1], direct)
    values = [vals for _, vals in grid.points()]
    assert values[0] == (9.0, 0.8) and values[-1] == (11.0, 1.0)


def test_failed_point_is_flagged_not_fatal():
    grid = sweep(default_system(), ChirpedPulse(), SHORT, [AxisSpec("tau_chirp", 0.0, 16.5, 2)])
    assert grid.ok.tolist() == [False, True]
    assert np.isnan(grid.populations[0]).all()
    assert "tau_chirp" in grid.errors[(0,)]


def test_parallel_is_bit_identical():
    sys, p = default_system(), ChirpedPulse(t0=-16.5)
    axes = [AxisSpec("alpha", 9, 16, 3), AxisSpec("tau_chirp", 12, 20, 2)]
    serial = sweep(sys, p, SHORT, axes, workers=1)
    parallel = sweep(sys, p, SHORT, axes, workers=3)
    again = sweep(sys, p, SHORT, axes, workers=1)
    assert np.array_equal(serial.populations, parallel.populations)
    assert np.array_equal(serial.populations, again.populations)
    assert np.array_equal(serial.ok, parallel.ok)

import numpy as np
import pytest

from chirpcpt.levelsystem import LevelSystem, default_system, from_transitions, hamiltonian_at
from chirpcpt.pulse import ChirpedPulse, rabi_coupling


def test_from_transitions_sodium():
    sys = from_transitions(3.19, 3.06, 3.30, 0.9, 1.1)
    assert sys.omega_levels == pytest.approx((0.0, 3.19, 6.25, 6.49), abs=1e-12)
    assert (sys.beta, sys.gamma) == (0.9, 1.1)
    assert default_system() == sys


def test_from_transitions_unit():
    assert from_transitions(1, 1, 1, 1, 1).omega_levels == (0.0, 1.0, 2.0, 2.0)


@pytest.mark.parametrize("bad", [(3.19, 3.06, -1.0), (0.0, 3.06, 3.3), (3.19, 0.0, 3.3)])
def test_from_transitions_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        from_transitions(*bad, 0.9, 1.1)


def test_rejects_non_y_levels():
    with pytest.raises(ValueError):
        LevelSystem((0.0, 2.0, 1.0, 3.0))
    with pytest.raises(ValueError):
        LevelSystem((0.0, 1.0, 2.0, 3.0), beta=-0.5)


def test_field_free_hamiltonian_is_diagonal():
    h = hamiltonian_at(99.0, default_system(), ChirpedPulse())
    off = h - np.diag(np.diag(h))
    assert np.max(np.abs(off)) < 2e-16
    assert np.diag(h).real == pytest.approx([0.0, 3.19, 6.25, 6.49])


@pytest.mark.parametrize("t", [-20.0, -3.3, 0.0, 7.1])
def test_coupling_structure(t):
    p = ChirpedPulse()
    h = hamiltonian_at(t, default_system(), p)
    c = rabi_coupling(t, p)
    assert h[0, 1] == pytest.approx(-c, abs=1e-15)
    assert h[1, 2] == pytest.approx(-0.9 * c, abs=1e-15)
    assert h[1, 3] == pytest.approx(-1.1 * c, abs=1e-15)
    for i, j in [(0, 2), (0, 3), (2, 3)]:
        assert h[i, j] == 0 and h[j, i] == 0
    assert np.array_equal(h, h.T)
    assert np.all(h.imag == 0)


def test_equal_dipoles_give_equal_couplings():
    sys = from_transitions(3.19, 3.06, 3.30, 1.0, 1.0)
    h = hamiltonian_at(-4.0, sys, ChirpedPulse())
    assert h[1, 2] == h[1, 3]


def test_shifted_moves_all_levels():
    sys = default_system().shifted(5.0)
    assert sys.omega_levels == pytest.approx((5.0, 8.19, 11.25, 11.49))

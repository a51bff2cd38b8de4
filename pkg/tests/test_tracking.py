import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swirllab.errors import DegenerateShearError
from swirllab.shear import BoundaryShear
from swirllab.tracking import locate_xi


def shear_from_vh(r, vh):
    # direction split irrelevant for tracking: put everything azimuthal
    return BoundaryShear(r_grid=r, dzur=np.zeros_like(vh), dzutheta=vh)


def test_peak_at_node_with_symmetric_neighbors():
    r = np.linspace(0.0, 0.1, 21)  # contains 0.05 at index 10
    vh = np.exp(-((r - 0.05) / 0.02) ** 2)  # symmetric about the node
    xi, jump = locate_xi(shear_from_vh(r, vh))
    assert xi == pytest.approx(0.05, abs=1e-12)
    assert not jump


def test_constant_profile_breaks_tie_at_smallest_radius():
    r = np.linspace(0.0, 1.0, 11)
    xi, _ = locate_xi(shear_from_vh(r, np.ones(11)))
    assert xi == r[0]


def test_parabola_recovered_exactly():
    r = np.linspace(0.0, 1.0, 41)
    vh = 1.0 - (r - 0.3) ** 2
    xi, _ = locate_xi(shear_from_vh(r, vh))
    assert xi == pytest.approx(0.3, abs=1e-10)


def test_off_node_parabola():
    r = np.linspace(0.0, 1.0, 37)  # 0.3137 vertex not on a node
    vh = 2.5 - (r - 0.3137) ** 2
    xi, _ = locate_xi(shear_from_vh(r, vh))
    assert xi == pytest.approx(0.3137, abs=1e-10)


def test_zero_shear_rejected():
    r = np.linspace(0.0, 1.0, 16)
    with pytest.raises(DegenerateShearError):
        locate_xi(shear_from_vh(r, np.zeros(16)))


def test_jump_flag():
    r = np.linspace(0.0, 1.0, 101)
    vh1 = np.exp(-((r - 0.2) / 0.05) ** 2)
    vh2 = np.exp(-((r - 0.8) / 0.05) ** 2)
    xi1, _ = locate_xi(shear_from_vh(r, vh1))
    xi2, jump = locate_xi(shear_from_vh(r, vh2), previous=xi1)
    assert jump
    xi3, jump3 = locate_xi(shear_from_vh(r, vh2), previous=xi2)
    assert not jump3


@settings(max_examples=30, deadline=None)
@given(c=st.floats(1e-6, 1e6), center=st.floats(0.1, 0.9))
def test_scale_equivariance(c, center):
    r = np.linspace(0.0, 1.0, 81)
    vh = np.exp(-((r - center) / 0.07) ** 2)
    xi1, _ = locate_xi(shear_from_vh(r, vh))
    xi2, _ = locate_xi(shear_from_vh(r, c * vh))
    assert xi1 == pytest.approx(xi2, rel=0, abs=1e-12)

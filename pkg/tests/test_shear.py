import numpy as np
import pytest
from hypothesis import given, strategies as st

from swirllab.errors import SwirllabError
from swirllab.shear import BoundaryShear, swirl_direction


def test_swirl_direction_pure_cases():
    assert np.allclose(swirl_direction(1.0, 0.0), [0.0, 1.0])
    assert np.allclose(swirl_direction(0.0, 0.0), [1.0, 0.0])
    v = swirl_direction(2**-0.5, 0.0)
    assert np.allclose(v, [2**-0.5, 2**-0.5])


def test_swirl_direction_domain():
    with pytest.raises(ValueError):
        swirl_direction(1.0001, 0.0)


@given(S=st.floats(-1.0, 1.0), theta=st.floats(-10.0, 10.0))
def test_swirl_direction_unit_norm(S, theta):
    v = swirl_direction(S, theta)
    assert np.hypot(v[0], v[1]) == pytest.approx(1.0, abs=1e-12)


def test_shear_invariants():
    r = np.linspace(0.05, 1.0, 40)
    a = 0.3 * np.cos(2 * r)
    b = np.sin(3 * r) + 1.2
    sh = BoundaryShear(r_grid=r, dzur=a, dzutheta=b)
    assert (sh.S[sh.valid] ** 2 <= 1 + 1e-15).all()
    assert np.allclose(sh.S * sh.vh_mag, sh.dzutheta, atol=1e-14)
    assert np.allclose(np.sqrt(1 - sh.S**2) * sh.vh_mag, np.abs(sh.dzur), atol=1e-12)


def test_shear_flags_zero_magnitude():
    r = np.linspace(0.0, 1.0, 20)
    a = np.zeros(20)
    b = r.copy()  # vanishes at the first node
    sh = BoundaryShear(r_grid=r, dzur=a, dzutheta=b)
    assert not sh.valid[0]
    assert np.isnan(sh.S[0])
    assert sh.valid[1:].all()


def test_shear_rejects_bad_grids():
    with pytest.raises(SwirllabError):
        BoundaryShear(r_grid=np.array([0.2, 0.1]), dzur=np.zeros(2), dzutheta=np.zeros(2))
    with pytest.raises(SwirllabError):
        BoundaryShear(r_grid=np.zeros((2, 2)), dzur=np.zeros((2, 2)),
                      dzutheta=np.zeros((2, 2)))

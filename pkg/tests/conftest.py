import numpy as np
import pytest

from swirllab.config import SimConfig, VortexRingIC
from swirllab.field import AxisymField


@pytest.fixture
def small_config():
    return SimConfig(nr=33, nz=33, t_end=0.01, snapshot_every=0.002,
                     ic=VortexRingIC(r0=0.3, z0=0.25, a=0.1, gamma0=1.0, w0=4.0))


@pytest.fixture
def zero_config():
    return SimConfig(nr=33, nz=33, t_end=0.005, snapshot_every=0.001,
                     ic=VortexRingIC(gamma0=0.0, w0=0.0))


def swirl_only_field(n=129, profile=None, zpow=1):
    """u_theta = z^zpow * g(r), u_r = u_z = 0: divergence-free by symmetry."""
    dr = dz = 1.0 / (n - 1)
    r = np.arange(n) * dr
    R, Z = np.meshgrid(r, np.arange(n) * dz, indexing="ij")
    g = profile if profile is not None else (lambda rr: np.exp(-((rr - 0.3) / 0.15) ** 2))
    zeros = np.zeros((n, n))
    return AxisymField(t=0.0, dr=dr, dz=dz, u_r=zeros.copy(),
                       u_theta=Z**zpow * g(R), u_z=zeros.copy(), p=zeros.copy())

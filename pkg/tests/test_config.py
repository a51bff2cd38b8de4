import pytest

from swirllab.config import SimConfig, VortexRingIC, config_from_dict, load_config
from swirllab.errors import ConfigurationError


def test_defaults_validate():
    SimConfig().validate()


@pytest.mark.parametrize("overrides", [
    {"nr": 8},
    {"nz": 15},
    {"nu": 0.0},
    {"nu": -1.0},
    {"cfl": 0.0},
    {"cfl": 1.0},
    {"t_end": -0.5},
    {"snapshot_every": 0.0},
    {"proj_tol": 0.0},
])
def test_invalid_scalars_rejected(overrides):
    with pytest.raises(ConfigurationError):
        SimConfig(**overrides).validate()


@pytest.mark.parametrize("ic", [
    VortexRingIC(r0=0.1, a=0.1),           # r0 - 2a <= 0
    VortexRingIC(r0=0.9, a=0.1),           # r0 + 2a >= r_max
    VortexRingIC(z0=0.15, a=0.1),          # z0 - 2a <= 0
    VortexRingIC(z0=0.85, a=0.1),          # z0 + 2a >= z_max
    VortexRingIC(a=0.0),
])
def test_core_must_sit_inside_domain(ic):
    with pytest.raises(ConfigurationError):
        SimConfig(ic=ic).validate()


def test_toml_roundtrip(tmp_path):
    text = """
nr = 65
nz = 65
t_end = 0.02
nu = 0.5

[ic]
r0 = 0.4
w0 = 2.0

[diagnostics]
N = 5.0
T = 0.02
"""
    path = tmp_path / "case.toml"
    path.write_text(text)
    cfg = load_config(path)
    assert cfg.nr == 65 and cfg.nu == 0.5
    assert cfg.ic.r0 == 0.4 and cfg.ic.w0 == 2.0
    assert cfg.diagnostics.N == 5.0


def test_unknown_key_rejected():
    with pytest.raises(ConfigurationError, match="unknown config key"):
        config_from_dict({"nr": 33, "nz": 33, "bogus": 1})


def test_unparseable_toml(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("nr = [unclosed")
    with pytest.raises(ConfigurationError):
        load_config(path)

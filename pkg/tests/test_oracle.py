import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from swirllab import oracle as oc


def rand_points(n=50, seed=0):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-1, 1, (n, 3))
    pts[:, 2] = np.abs(pts[:, 2])
    return pts


def test_pure_swirl_linear_profile():
    # u_theta = z * r: the azimuthal component of dz(u) at (r=1, z=0) is 1
    f = oc.pure_swirl(q=(1.0,), w=(0.0, 1.0))
    d = oc.exact_derivative(f, [1.0, 0.0, 0.0], (0, 0, 1))
    assert np.allclose(d, [0.0, 1.0, 0.0])


def test_trig_divfree_divergence_vanishes():
    f = oc.trig_divfree()
    assert np.abs(f.divergence_values(rand_points())).max() < 1e-14


def test_noslip_families_vanish_with_tangential_derivatives():
    pts = rand_points()
    pts[:, 2] = 0.0
    fields = [
        oc.poly_noslip(({(1, 0, 0): 2.0, (0, 0, 1): 1.0},
                        {(0, 1, 0): -1.0}, {(1, 1, 0): 0.5}), z_power=2),
        oc.trig_divfree(),
        oc.forced_ns(),
    ]
    for f in fields:
        assert np.abs(f.values(pts)).max() == 0.0
        assert np.abs(f.derivative_values((1, 0, 0), pts)).max() == 0.0
        assert np.abs(f.derivative_values((0, 1, 0), pts)).max() == 0.0


def test_poly_z2_dz_vanishes_on_wall():
    f = oc.poly_noslip(({(1, 0, 0): 1.0}, {}, {}), z_power=2)
    pts = rand_points()
    pts[:, 2] = 0.0
    assert np.abs(f.derivative_values((0, 0, 1), pts)).max() == 0.0


def test_derivative_order_capped():
    f = oc.trig_divfree()
    with pytest.raises(ValueError):
        oc.exact_derivative(f, [0.1, 0.2, 0.3], (2, 1, 1))


def test_forced_ns_boundary_pressure_identity():
    # grad p = lap u on z = 0 (steady, no-slip, nu = 1): the forcing vanishes
    f = oc.forced_ns()
    pts = rand_points()
    pts[:, 2] = 0.0
    assert np.abs(f.forcing_values(pts)).max() < 1e-13
    grad_p = np.stack([f.pressure_derivative(m, pts)
                       for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))], axis=1)
    assert np.abs(grad_p - f.laplacian_values(pts)).max() < 1e-13


@pytest.mark.parametrize("field,expr_fn", [
    (oc.forced_ns(),
     lambda x, y, z: -sp.exp(x) * sp.sin(y) * z**2 * sp.cos(z)),
    (oc.pure_swirl(q=(1.0, -0.3), w=(0.0, 1.0, 0.4)),
     lambda x, y, z: -y * (1 - 0.3 * (x**2 + y**2)) * (z + 0.4 * z**2)),
])
def test_component_x_matches_sympy(field, expr_fn):
    x, y, z = sp.symbols("x y z")
    expr = expr_fn(x, y, z)
    pts = rand_points(30, seed=2)
    for multi in [(0, 0, 0), (1, 0, 0), (0, 2, 0), (0, 0, 3), (1, 1, 1), (2, 0, 1)]:
        ref = sp.lambdify((x, y, z), sp.diff(expr, x, multi[0], y, multi[1],
                                             z, multi[2]), "numpy")
        mine = field.derivative_values(multi, pts)[:, 0]
        theirs = np.broadcast_to(ref(pts[:, 0], pts[:, 1], pts[:, 2]), mine.shape)
        assert np.abs(mine - theirs).max() < 1e-12


def test_trig_divfree_third_derivatives_match_sympy():
    freqs, phases = (1.0, 0.7, 1.3), (0.3, -0.2, 0.9)
    amps = (1.0, 0.6, -0.8)
    f = oc.trig_divfree(freqs, phases, amps)
    x, y, z = sp.symbols("x y z")
    B = [amps[i]
         * sp.sin(freqs[i % 3] * x + phases[i % 3])
         * sp.sin(freqs[(i + 1) % 3] * y + phases[(i + 1) % 3])
         * z**2 * sp.sin(freqs[(i + 2) % 3] * z + phases[(i + 2) % 3])
         for i in range(3)]
    u = [sp.diff(B[2], y) - sp.diff(B[1], z),
         sp.diff(B[0], z) - sp.diff(B[2], x),
         sp.diff(B[1], x) - sp.diff(B[0], y)]
    pts = rand_points(20, seed=5)
    for comp in range(3):
        for multi in [(0, 0, 0), (0, 0, 3), (1, 1, 1), (0, 2, 1)]:
            ref = sp.lambdify((x, y, z),
                              sp.diff(u[comp], x, multi[0], y, multi[1], z, multi[2]),
                              "numpy")
            mine = f.derivative_values(multi, pts)[:, comp]
            assert np.abs(mine - ref(pts[:, 0], pts[:, 1], pts[:, 2])).max() < 1e-11


@settings(max_examples=20, deadline=None)
@given(x=st.floats(-2, 2), y=st.floats(-2, 2), z=st.floats(0, 2))
def test_polynomial_derivatives_are_exact(x, y, z):
    # derivative of x^2 y z^3 terms is pure coefficient arithmetic
    f = oc.poly_noslip(({(2, 1, 2): 3.0}, {}, {}), z_power=1)  # 3 x^2 y z^3
    pt = np.array([x, y, z])
    got = oc.exact_derivative(f, pt, (1, 0, 2))  # d/dx d2/dz2: 36 x y z
    assert got[0] == pytest.approx(36.0 * x * y * z, rel=1e-12, abs=1e-12)

"""Finite-difference stencils used for chart-coordinate derivatives.

All evaluators take a callable ``fn(z, rbar, thetabar) -> ndarray`` that
accepts flat coordinate arrays, so nested derivatives batch every sample
into a single call.  z-stencils switch to one-sided forms automatically
where a centered stencil would cross z < 0 (fields only exist on z >= 0).
"""
from __future__ import annotations

from typing import Callable

import numpy as np

AXIS_Z, AXIS_RBAR, AXIS_THETA = 0, 1, 2

# offsets (in units of h) and weights; weight / h**order gives the derivative
D1_CENTRAL = (np.array([-2, -1, 1, 2]), np.array([1.0, -8.0, 8.0, -1.0]) / 12.0)
D1_FORWARD = (np.arange(5), np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0)
D2_CENTRAL = (np.array([-2, -1, 0, 1, 2]), np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0)
D2_FORWARD = (np.arange(5), np.array([35.0, -104.0, 114.0, -56.0, 11.0]) / 12.0)
# 5-point one-sided third derivative, O(h^2)
D3_FORWARD = (np.arange(5), np.array([-2.5, 9.0, -12.0, 7.0, -1.5]))

_CENTRAL = {1: D1_CENTRAL, 2: D2_CENTRAL}
_FORWARD = {1: D1_FORWARD, 2: D2_FORWARD, 3: D3_FORWARD}

Sampler1 = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


def _stencil_eval(fn: Sampler1, z, rbar, th, axis: int, h: float, offsets, weights, order: int):
    coords = [np.asarray(z, float), np.asarray(rbar, float), np.asarray(th, float)]
    shape = np.broadcast(*coords).shape
    noff = len(offsets)
    grids = [np.broadcast_to(c, (noff,) + shape).copy() for c in coords]
    grids[axis] += offsets.reshape((noff,) + (1,) * len(shape)) * h
    vals = fn(grids[0].ravel(), grids[1].ravel(), grids[2].ravel())
    vals = np.asarray(vals, float).reshape((noff,) + shape)
    return np.tensordot(weights, vals, axes=(0, 0)) / h**order


def fd(fn: Sampler1, z, rbar, th, axis: int, h: float, order: int = 1):
    """4th-order derivative along one chart axis (one-sided near z = 0).

    Points with z < 2h use forward stencils when differentiating in z;
    third derivatives are always one-sided (they are only requested at
    the boundary).
    """
    z = np.asarray(z, float)
    rbar = np.asarray(rbar, float)
    th = np.asarray(th, float)
    if order == 3:
        if axis != AXIS_Z:
            raise ValueError("third derivatives implemented for the z axis only")
        off, w = D3_FORWARD
        return _stencil_eval(fn, z, rbar, th, axis, h, off, w, 3)
    if axis != AXIS_Z:
        off, w = _CENTRAL[order]
        return _stencil_eval(fn, z, rbar, th, axis, h, off, w, order)

    shape = np.broadcast(z, rbar, th).shape
    zb = np.broadcast_to(z, shape)
    near = zb < 2.0 * h - 1e-15
    if not near.any():
        off, w = _CENTRAL[order]
        return _stencil_eval(fn, z, rbar, th, axis, h, off, w, order)
    if near.all():
        off, w = _FORWARD[order]
        return _stencil_eval(fn, z, rbar, th, axis, h, off, w, order)

    zb = zb.ravel()
    rb = np.broadcast_to(rbar, shape).ravel()
    tb = np.broadcast_to(th, shape).ravel()
    out = np.empty(zb.shape, float)
    m = near.ravel()
    off, w = _FORWARD[order]
    out[m] = _stencil_eval(fn, zb[m], rb[m], tb[m], AXIS_Z, h, off, w, order)
    off, w = _CENTRAL[order]
    out[~m] = _stencil_eval(fn, zb[~m], rb[~m], tb[~m], AXIS_Z, h, off, w, order)
    return out.reshape(shape)


def fd_cross(fn: Sampler1, z, rbar, th, axis_a: int, axis_b: int, h: float):
    """Mixed second derivative d^2/(da db), axes distinct."""
    if axis_a == axis_b:
        raise ValueError("axes must differ; use fd(order=2)")
    inner = lambda Z, R, T: fd(fn, Z, R, T, axis_b, h, 1)
    return fd(inner, z, rbar, th, axis_a, h, 1)


def array_d1(values: np.ndarray, h: float) -> np.ndarray:
    """4th-order first derivative of a 1-D sample array (one-sided at ends)."""
    v = np.asarray(values, float)
    n = v.shape[0]
    if n < 5:
        raise ValueError("need at least 5 samples")
    out = np.empty_like(v)
    out[2:-2] = (v[:-4] - 8 * v[1:-3] + 8 * v[3:-1] - v[4:]) / (12 * h)
    fwd = D1_FORWARD[1]
    for k in (0, 1):
        out[k] = np.dot(fwd, v[k:k + 5]) / h
        out[n - 1 - k] = -np.dot(fwd, v[n - 1 - k::-1][:5]) / h
    return out


def array_d2(values: np.ndarray, h: float) -> np.ndarray:
    """4th-order second derivative of a 1-D sample array (one-sided at ends)."""
    v = np.asarray(values, float)
    n = v.shape[0]
    if n < 6:
        raise ValueError("need at least 6 samples")
    out = np.empty_like(v)
    out[2:-2] = (-v[:-4] + 16 * v[1:-3] - 30 * v[2:-2] + 16 * v[3:-1] - v[4:]) / (12 * h * h)
    fwd = D2_FORWARD[1]
    for k in (0, 1):
        out[k] = np.dot(fwd, v[k:k + 5]) / (h * h)
        out[n - 1 - k] = np.dot(fwd, v[n - 1 - k::-1][:5]) / (h * h)
    return out

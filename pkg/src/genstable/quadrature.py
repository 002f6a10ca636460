"""Fixed-rule quadratures used by the special-function and fractional-integral code.

Two rules are provided:

* tanh-sinh (double exponential) on a finite interval, robust against
  algebraic endpoint singularities;
* Gauss-Jacobi with weight ``(1 - t)**p`` on [-1, 1], which absorbs the
  Riemann-Liouville kernel singularity exactly.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

# Beyond this the outermost tanh-sinh weights underflow in double precision.
_TANH_SINH_TMAX = 4.0


@lru_cache(maxsize=64)
def tanh_sinh_rule(nodes: int):
    """Abscissae on [-1, 1] stored as (left offset, right offset, weight).

    Offsets are ``1 + u`` and ``1 - u`` computed without cancellation so that
    nodes crowding the endpoints keep their full relative precision.
    """
    if nodes < 4:
        raise ValueError("tanh-sinh rule needs at least 4 nodes")
    k = nodes // 2
    h = _TANH_SINH_TMAX / k
    t = h * np.arange(-k, k + 1)
    q = 0.5 * math.pi * np.sinh(t)
    # 1 - tanh(q) = 2 / (exp(2q) + 1), stable for both signs of q
    right = 2.0 / (np.exp(2.0 * q) + 1.0)
    left = 2.0 / (np.exp(-2.0 * q) + 1.0)
    w = h * 0.5 * math.pi * np.cosh(t) / np.cosh(q) ** 2
    keep = w > 0.0
    return left[keep], right[keep], w[keep]


def tanh_sinh(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, nodes: int = 64) -> float:
    """Integrate a vectorised ``f`` over [lo, hi] with a tanh-sinh rule."""
    if hi == lo:
        return 0.0
    left, right, w = tanh_sinh_rule(nodes)
    half = 0.5 * (hi - lo)
    # split by sign of the offset so points near either end are exact
    x = np.where(left <= right, lo + half * left, hi - half * right)
    vals = np.asarray(f(x), dtype=float)
    return float(half * np.sum(w * vals))


@lru_cache(maxsize=64)
def gauss_jacobi_rule(nodes: int, exponent: float):
    """Nodes and weights for the weight ``(1 - t)**exponent`` on [-1, 1]."""
    if exponent <= -1.0:
        raise ValueError("Jacobi exponent must exceed -1")
    t, w = roots_jacobi(nodes, exponent, 0.0)
    return t, w


def gauss_jacobi_left_kernel(f, lo: float, x: float, exponent: float, nodes: int = 64) -> float:
    """Compute ``int_lo^x (x - v)**exponent f(v) dv`` with the kernel in the weight."""
    if x == lo:
        return 0.0
    t, w = gauss_jacobi_rule(nodes, float(exponent))
    half = 0.5 * (x - lo)
    v = lo + half * (t + 1.0)
    vals = np.asarray(f(v), dtype=float)
    return float(half ** (exponent + 1.0) * np.sum(w * vals))


def as_vectorized(f):
    """Wrap a scalar callable so that it accepts numpy arrays."""

    def g(v):
        v = np.asarray(v, dtype=float)
        try:
            out = np.asarray(f(v), dtype=float)
            if out.shape == v.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([float(f(float(vi))) for vi in v.ravel()]).reshape(v.shape)

    return g

"""Quasi-periodic fiber kernels of the double-layer operator.

Working in the exponent coordinate (x stands for the point alpha**x on
the graph), the one-sided fiber kernel at Bloch parameter t is the
truncatable series

    K_t(x, y) = |log a|/(2 pi) * sum_j e^{ijt} p_j(x,y)/(1+q_j(x,y)^2)
                * ((1+f'(a^x)^2)/(1+f'(a^y)^2))^(1/4) * a^((x+y+j)/2),

with a = alpha and difference quotients

    q_j = (f(a^{x+j}) - f(a^y)) / (a^{x+j} - a^y),
    p_j = (f(a^{x+j}) - f(a^y) - (a^{x+j}-a^y) f'(a^y)) / (a^{x+j}-a^y)^2.

On the removable singularity a^{x+j} = a^y the Taylor limits p_j =
f''(a^y)/2, q_j = f'(a^y) apply; we switch to them inside a relative
radius EPS_SING where the quotients would be destroyed by cancellation.

Two-sided graphs couple the half lines through off-diagonal kernels
whose quotients have the always-positive denominator a^{x+j} + a^y, so
no singular branch is needed there.

Functions accept anything exposing ``alpha``/``f_pow``/``f1_pow``/
``f2_pow`` (profiles do); arguments broadcast like numpy ufuncs.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .profiles import DilationGraph, Side

__all__ = [
    "EPS_SING",
    "pq",
    "pq_off",
    "kernel_one_sided",
    "kernel_two_sided",
    "Kernel2x2",
]

# Relative switching radius for the removable singularity: below it the
# closed-form quotients lose all precision to cancellation, and the
# Taylor limit is exact.
EPS_SING = 1e-8


def pq(profile, j: int, x, y):
    """Difference quotients (p_j, q_j) of the one-sided kernel term."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    alpha = profile.alpha
    a = alpha ** (x + j)
    b = alpha**y
    h = a - b
    singular = np.abs(h) <= EPS_SING * np.maximum(a, b)
    h_safe = np.where(singular, 1.0, h)
    df = profile.f_pow(x + j) - profile.f_pow(y)
    f1_b = profile.f1_pow(y)
    q = np.where(singular, f1_b, df / h_safe)
    p = np.where(singular, 0.5 * profile.f2_pow(y), (df - h * f1_b) / h_safe**2)
    if p.ndim == 0:
        return float(p), float(q)
    return p, q


def pq_off(graph: DilationGraph, sign: int, j: int, x, y):
    """Quotients (p~_j^s, q~_j^s) of the off-diagonal two-sided kernel term.

    ``sign=+1`` selects the block mapping the minus half line into the
    plus one; the row side contributes f_s(a^{x+j}), the column side
    f_{-s} at a^y.  The denominator a^{x+j} + a^y never vanishes.
    """
    if graph.side is not Side.TWO_SIDED:
        raise ValueError("off-diagonal quotients need a two-sided graph")
    row = graph.profile_plus if sign > 0 else graph.profile_minus
    col = graph.profile_minus if sign > 0 else graph.profile_plus
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    alpha = graph.alpha
    d = alpha ** (x + j) + alpha**y
    df = row.f_pow(x + j) - col.f_pow(y)
    q = df / d
    p = (d * col.f1_pow(y) + df) / d**2
    if p.ndim == 0:
        return float(p), float(q)
    return p, q


def _weight_quarter(profile, s):
    return (1.0 + profile.f1_pow(s) ** 2) ** 0.25


def kernel_one_sided(profile, t: float, x, y, M: int) -> complex | np.ndarray:
    """Truncated one-sided fiber kernel, terms j = -M..M."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    alpha = profile.alpha
    pref = abs(math.log(alpha)) / (2.0 * math.pi)
    w = _weight_quarter(profile, x) / _weight_quarter(profile, y)
    sxy = alpha ** ((x + y) / 2.0)
    acc = np.zeros(np.broadcast(x, y).shape, dtype=complex)
    for j in range(-M, M + 1):
        p, q = pq(profile, j, x, y)
        acc = acc + np.exp(1j * j * t) * (alpha ** (j / 2.0)) * p / (1.0 + np.asarray(q) ** 2)
    out = pref * w * sxy * acc
    return complex(out) if out.ndim == 0 else out


class Kernel2x2(NamedTuple):
    """Values of the four two-sided kernel blocks at (x, y)."""

    diag_minus: complex | np.ndarray
    off_minus: complex | np.ndarray
    off_plus: complex | np.ndarray
    diag_plus: complex | np.ndarray


def kernel_two_sided(graph: DilationGraph, t: float, x, y, M: int) -> Kernel2x2:
    """Truncated two-sided kernel blocks (minus row first, as assembled)."""
    if graph.side is not Side.TWO_SIDED:
        raise ValueError("kernel_two_sided needs a two-sided graph")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    alpha = graph.alpha
    pref = abs(math.log(alpha)) / (2.0 * math.pi)
    sxy = alpha ** ((x + y) / 2.0)
    plus, minus = graph.profile_plus, graph.profile_minus
    wp, wm = _weight_quarter(plus, x), _weight_quarter(minus, x)
    wpy, wmy = _weight_quarter(plus, y), _weight_quarter(minus, y)
    shape = np.broadcast(x, y).shape
    acc = {key: np.zeros(shape, dtype=complex) for key in ("km", "lm", "lp", "kp")}
    for j in range(-M, M + 1):
        phase = np.exp(1j * j * t) * alpha ** (j / 2.0)
        p, q = pq(minus, j, x, y)
        acc["km"] += phase * p / (1.0 + np.asarray(q) ** 2)
        p, q = pq(plus, j, x, y)
        acc["kp"] += phase * p / (1.0 + np.asarray(q) ** 2)
        p, q = pq_off(graph, -1, j, x, y)
        acc["lm"] += phase * p / (1.0 + np.asarray(q) ** 2)
        p, q = pq_off(graph, +1, j, x, y)
        acc["lp"] += phase * p / (1.0 + np.asarray(q) ** 2)
    base = pref * sxy
    vals = Kernel2x2(
        diag_minus=base * (wm / wmy) * acc["km"],
        off_minus=base * (wm / wpy) * acc["lm"],
        off_plus=base * (wp / wmy) * acc["lp"],
        diag_plus=base * (wp / wpy) * acc["kp"],
    )
    if shape == ():
        return Kernel2x2(*(complex(v) for v in vals))
    return vals

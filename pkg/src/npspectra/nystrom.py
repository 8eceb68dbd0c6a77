"""Midpoint-rule discretization of the fiber operators.

The N-point midpoint rule on [0, 1] (nodes (q - 1/2)/N, weights 1/N)
turns each fiber kernel into a dense matrix

    A[p, q] = (1/N) * kernel(x_p, x_q),

N x N for one-sided graphs and 2N x 2N in block order
[[minus,minus], [minus,plus]; [plus,minus], [plus,plus]] for two-sided
ones.  Because the Bloch parameter enters only through the phases
e^{ijt}, the j-indexed term grids are real and t-independent;
``KernelTable`` precomputes them once so that matrices for many t come
from a single real matrix-vector contraction each.  The same grids give
the entrywise t-derivative bound matrix and its norm ||B_N^M||_inf,
which controls the Lipschitz dependence on t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .linalg import inf_norm
from .profiles import DilationGraph, Side

__all__ = [
    "QuadratureGrid",
    "NystromMatrix",
    "KernelTable",
    "assemble",
    "assemble_derivative_bound",
    "dump_matrix_csv",
]


@dataclass(frozen=True)
class QuadratureGrid:
    """Midpoint rule on [0, 1]: uniform weights summing to 1, nodes inside (0, 1)."""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"grid size must be >= 1, got {self.N}")

    @property
    def nodes(self) -> np.ndarray:
        return (np.arange(1, self.N + 1) - 0.5) / self.N

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.N, 1.0 / self.N)


@dataclass(frozen=True)
class NystromMatrix:
    """Dense fiber matrix with its defining parameters."""

    matrix: np.ndarray
    t: float
    N: int
    M: int
    side: Side

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _quotient_grid(profile, j, x_col, cache):
    """p/(1+q^2) on the node grid for the diagonal (one-sided) kernel."""
    alpha = profile.alpha
    a = cache["a_pow"] * alpha**j  # alpha**(x+j) column vector
    b = cache["a_pow"].T  # alpha**y row vector (same nodes)
    h = a - b
    singular = np.abs(h) <= kernels.EPS_SING * np.maximum(a, b)
    h_safe = np.where(singular, 1.0, h)
    df = profile.f_pow(x_col + j) - cache["f_row"]
    q = np.where(singular, cache["f1_row"], df / h_safe)
    p = np.where(singular, 0.5 * cache["f2_row"], (df - h * cache["f1_row"]) / h_safe**2)
    return p / (1.0 + q**2)


def _quotient_grid_off(row_profile, alpha, j, x_col, cache):
    a = cache["a_pow"] * alpha**j
    b = cache["a_pow"].T
    d = a + b
    df = row_profile.f_pow(x_col + j) - cache["f_col_row"]
    q = df / d
    p = (d * cache["f1_col_row"] + df) / d**2
    return p / (1.0 + q**2)


def _term_slices(graph: DilationGraph, N: int, M: int):
    """Yield (j, G_j) real grids with A_t = sum_j e^{ijt} G_j, weights included."""
    if N < 1:
        raise ValueError(f"grid size must be >= 1, got {N}")
    if M < 2:
        raise ValueError(f"truncation order must be >= 2, got {M}")
    alpha = graph.alpha
    nodes = QuadratureGrid(N).nodes
    x_col = nodes[:, None]
    pref = abs(math.log(alpha)) / (2.0 * math.pi * N)
    sqrt_pow = alpha ** (nodes / 2.0)
    outer_half = sqrt_pow[:, None] * sqrt_pow[None, :]  # alpha**((x+y)/2)

    if graph.side is Side.ONE_SIDED:
        profile = graph.profile_plus
        w = (1.0 + profile.f1_pow(nodes) ** 2) ** 0.25
        weight = (w[:, None] / w[None, :]) * outer_half * pref
        cache = {
            "a_pow": alpha ** nodes[:, None],
            "f_row": profile.f_pow(nodes)[None, :],
            "f1_row": profile.f1_pow(nodes)[None, :],
            "f2_row": profile.f2_pow(nodes)[None, :],
        }
        for j in range(-M, M + 1):
            core = _quotient_grid(profile, j, x_col, cache)
            yield j, alpha ** (j / 2.0) * weight * core
        return

    plus, minus = graph.profile_plus, graph.profile_minus
    wp = (1.0 + plus.f1_pow(nodes) ** 2) ** 0.25
    wm = (1.0 + minus.f1_pow(nodes) ** 2) ** 0.25
    base = outer_half * pref
    weights = {
        "km": (wm[:, None] / wm[None, :]) * base,
        "lm": (wm[:, None] / wp[None, :]) * base,
        "lp": (wp[:, None] / wm[None, :]) * base,
        "kp": (wp[:, None] / wp[None, :]) * base,
    }
    a_pow = alpha ** nodes[:, None]
    diag_cache = {
        prof: {
            "a_pow": a_pow,
            "f_row": prof.f_pow(nodes)[None, :],
            "f1_row": prof.f1_pow(nodes)[None, :],
            "f2_row": prof.f2_pow(nodes)[None, :],
        }
        for prof in (plus, minus)
    }
    off_cache = {
        prof: {
            "a_pow": a_pow,
            "f_col_row": prof.f_pow(nodes)[None, :],
            "f1_col_row": prof.f1_pow(nodes)[None, :],
        }
        for prof in (plus, minus)
    }
    for j in range(-M, M + 1):
        scale = alpha ** (j / 2.0)
        km = weights["km"] * _quotient_grid(minus, j, x_col, diag_cache[minus])
        kp = weights["kp"] * _quotient_grid(plus, j, x_col, diag_cache[plus])
        lm = weights["lm"] * _quotient_grid_off(minus, alpha, j, x_col, off_cache[plus])
        lp = weights["lp"] * _quotient_grid_off(plus, alpha, j, x_col, off_cache[minus])
        yield j, scale * np.block([[km, lm], [lp, kp]])


class KernelTable:
    """Precomputed t-independent term grids for one (graph, N, M) triple.

    Building the table costs one pass over the 2M+1 term grids; every
    subsequent ``matrix(t)`` is two real GEMVs.  Memory is
    (2M+1) * dim^2 doubles, with dim = N or 2N.
    """

    def __init__(self, graph: DilationGraph, N: int, M: int):
        self.graph = graph
        self.N = N
        self.M = M
        self.dim = 2 * N if graph.side is Side.TWO_SIDED else N
        self._flat = np.empty((2 * M + 1, self.dim * self.dim))
        for row, (_, g) in enumerate(_term_slices(graph, N, M)):
            self._flat[row] = g.ravel()
        self._js = np.arange(-M, M + 1, dtype=float)

    def matrix(self, t: float) -> np.ndarray:
        jt = self._js * t
        re = np.cos(jt) @ self._flat
        im = np.sin(jt) @ self._flat
        return (re + 1j * im).reshape(self.dim, self.dim)

    def nystrom_matrix(self, t: float) -> NystromMatrix:
        return NystromMatrix(matrix=self.matrix(t), t=t, N=self.N, M=self.M, side=self.graph.side)

    def derivative_bound_matrix(self) -> np.ndarray:
        b = np.abs(self._js) @ np.abs(self._flat)
        return b.reshape(self.dim, self.dim)

    def derivative_bound(self) -> float:
        return inf_norm(self.derivative_bound_matrix())


def assemble(graph: DilationGraph, t: float, N: int, M: int) -> NystromMatrix:
    """Single fiber matrix A_{t,N}^M (use KernelTable for many t at one N, M)."""
    acc = None
    for j, g in _term_slices(graph, N, M):
        term = np.exp(1j * j * t) * g
        acc = term if acc is None else acc + term
    return NystromMatrix(matrix=acc, t=t, N=N, M=M, side=graph.side)


def assemble_derivative_bound(graph: DilationGraph, N: int, M: int) -> float:
    """||B_N^M||_inf: row-sum norm of the entrywise t-derivative bound matrix."""
    acc = None
    for j, g in _term_slices(graph, N, M):
        term = abs(j) * np.abs(g)
        acc = term if acc is None else acc + term
    return inf_norm(acc)


def dump_matrix_csv(mat: NystromMatrix, fh) -> None:
    """Debug dump: one 'p,q,re,im' row per entry (1-based indices)."""
    fh.write("p,q,re,im\n")
    m = mat.matrix
    for p in range(m.shape[0]):
        for q in range(m.shape[1]):
            v = m[p, q]
            fh.write(f"{p + 1},{q + 1},{float(v.real)!r},{float(v.imag)!r}\n")

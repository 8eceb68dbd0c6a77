"""Spectrum approximations and their convergence diagnostics.

The essential spectrum of the double-layer operator on a dilation
invariant graph is approximated by

    sigma_N = {0}  union  { eig(A_{t,N}^M) : t in T },

with T the half-open Bloch grid t_k = (k - 1/2) pi / m, k = 1..m;
negative-t fibers contribute the complex conjugates, so only positive t
is ever solved.  Clouds carry full provenance metadata and a fixed
deterministic point order (ascending t, then eigenvalues sorted by
(Re, Im); the adjoined 0 comes first), so emitted files are reproducible
byte for byte.

For corner synthesis the clouds of the corner graphs are unioned with
set semantics, and for the straight cone the spectrum is known in
closed form, which serves as the exact oracle in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from ._concurrency import ordered_map
from .linalg import EigenSolverError, eigenvalues
from .nystrom import KernelTable
from .profiles import DilationGraph

__all__ = [
    "SpectrumCloud",
    "spectrum_approx",
    "radius",
    "synthesize",
    "union_clouds",
    "hausdorff",
    "cone_exact_spectrum",
    "cone_exact_radius",
    "cloud_to_csv",
]


@dataclass(frozen=True)
class SpectrumCloud:
    """Finite multiset of spectrum points with provenance metadata."""

    points: np.ndarray
    meta: dict
    contains_zero: bool = True

    def __post_init__(self):
        if len(self.points) == 0:
            raise ValueError("a spectrum cloud is never empty (it contains 0)")

    def to_json_dict(self) -> dict:
        return {
            "meta": self.meta,
            "points": [[float(z.real), float(z.imag)] for z in self.points],
        }


def _lex_sorted(values: np.ndarray) -> np.ndarray:
    order = np.lexsort((values.imag, values.real))
    return values[order]


def _positive_ts(m: int, k_stride: int) -> tuple[list[int], np.ndarray]:
    if m < 1:
        raise ValueError(f"Bloch grid size must be >= 1, got {m}")
    if k_stride < 1:
        raise ValueError(f"k stride must be >= 1, got {k_stride}")
    ks = list(range(k_stride, m + 1, k_stride))
    if not ks:
        raise ValueError("empty Bloch grid after subsampling")
    return ks, np.array([(k - 0.5) * math.pi / m for k in ks])


def spectrum_approx(
    graph: DilationGraph,
    N: int,
    m: int,
    M: int,
    k_stride: int = 1,
    workers: int | None = None,
) -> SpectrumCloud:
    """Cloud {0} + eigenvalues over the Bloch grid, closed under conjugation.

    ``k_stride`` keeps every stride-th grid index (smoke subsampling of
    the full k = 1..m grid); the grid itself is unchanged.
    """
    ks, ts = _positive_ts(m, k_stride)
    table = KernelTable(graph, N, M)

    def job(t: float) -> np.ndarray:
        try:
            return _lex_sorted(eigenvalues(table.matrix(t)))
        except EigenSolverError as exc:
            raise EigenSolverError(str(exc), shape=(table.dim, table.dim), context=f"t={t!r}") from exc

    blocks = ordered_map(job, ts, workers=workers)
    negative = [_lex_sorted(np.conj(blocks[i])) for i in range(len(blocks) - 1, -1, -1)]
    points = np.concatenate([np.zeros(1, dtype=complex), *negative, *blocks])
    meta = {
        "kind": "spectrum",
        "graph": graph.digest(),
        "side": graph.side.value,
        "N": N,
        "m": m,
        "M": M,
        "k_stride": k_stride,
        "t_grid": "(k-1/2)*pi/m, k=1..m, plus conjugate fibers",
        "order": "0 first, then ascending t with eigenvalues sorted by (re, im)",
    }
    return SpectrumCloud(points=points, meta=meta)


def radius(cloud: SpectrumCloud | np.ndarray) -> float:
    """Largest modulus over the cloud."""
    pts = np.asarray(getattr(cloud, "points", cloud))
    if pts.size == 0:
        raise ValueError("radius of an empty point set")
    return float(np.abs(pts).max())


def union_clouds(clouds: list[SpectrumCloud]) -> SpectrumCloud:
    """Set-semantics union of clouds, sorted lexicographically by (re, im)."""
    if not clouds:
        raise ValueError("at least one cloud is required")
    points = np.unique(np.concatenate([c.points for c in clouds]))
    meta = {
        "kind": "synthesis",
        "corners": [c.meta.get("graph") for c in clouds],
        "corner_meta": [c.meta for c in clouds],
        "order": "lexicographic (re, im), duplicates removed",
    }
    return SpectrumCloud(points=points, meta=meta)


def synthesize(
    corner_graphs: list[DilationGraph],
    N: int,
    m: int,
    M: int,
    k_stride: int = 1,
    workers: int | None = None,
) -> SpectrumCloud:
    """Union of the corner clouds computed with shared grid parameters."""
    if not corner_graphs:
        raise ValueError("at least one corner graph is required")
    clouds = [spectrum_approx(g, N, m, M, k_stride=k_stride, workers=workers) for g in corner_graphs]
    return union_clouds(clouds)


def _as_plane(points) -> np.ndarray:
    pts = np.asarray(getattr(points, "points", points), dtype=complex).ravel()
    if pts.size == 0:
        raise ValueError("hausdorff distance needs nonempty point sets")
    return np.column_stack([pts.real, pts.imag])


def hausdorff(set_a, set_b) -> float:
    """Symmetric Hausdorff distance between two finite point sets."""
    a, b = _as_plane(set_a), _as_plane(set_b)
    d_ab = cKDTree(b).query(a)[0].max()
    d_ba = cKDTree(a).query(b)[0].max()
    return float(max(d_ab, d_ba))


def cone_exact_spectrum(mu: float, ys) -> np.ndarray:
    """Exact spectrum samples {0, +-lemniscate(y)} of the straight cone f = mu*|x|."""
    ys = np.asarray(ys, dtype=float)
    a = math.atan(abs(mu))
    w = 1.0 - 1j * ys
    pts = np.sin(a * w) / (2.0 * np.sin(np.pi * w / 2.0))
    return np.concatenate([np.zeros(1, dtype=complex), pts, -pts])


def cone_exact_radius(mu: float) -> float:
    return abs(mu) / (2.0 * math.sqrt(1.0 + mu * mu))


def cloud_to_csv(cloud: SpectrumCloud, fh) -> None:
    fh.write("re,im\n")
    for z in cloud.points:
        fh.write(f"{float(z.real)!r},{float(z.imag)!r}\n")

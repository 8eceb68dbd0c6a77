"""Certified lower bounds on the numerical range of the fiber operators.

Compressing a fiber kernel onto the trigonometric polynomials of degree
<= p gives a (2p+1) x (2p+1) matrix T whose numerical range sits inside
W(D_Gamma).  The classical rotated-Hermitian-part construction yields
boundary points: for angles theta_l = 2 pi l / n take the top eigenpair
of Re(e^{-i theta_l} T) and the Rayleigh quotient z_l of its
eigenvector; the convex hull of the z_l is contained in W(T).  If 0 is
interior to that polygon, the disc of radius

    R* = min_l |z_l| * cos(theta_max / 2) - C7

is certified to lie in W(D_Gamma), where theta_max is the largest
angular gap between vertices and C7 accounts for quadrature and series
truncation.  Two-sided graphs are handled through their half graphs
(either half embeds its numerical range into the full one).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._concurrency import ordered_map
from .bounds import c1_constant, strip_kernel_bounds_one_sided
from .linalg import hermitian_top_eigenpair
from .nystrom import QuadratureGrid, assemble
from .profiles import DilationGraph, PeriodicProfile, Side

__all__ = [
    "NumRangePolygon",
    "InscribedDisc",
    "HalfGraphNumRange",
    "restricted_matrix",
    "johnson_polygon",
    "inscribed_radius",
    "c7_constant",
    "graph_inscribed_disc",
    "polygon_to_csv",
]


def restricted_matrix(
    profile: PeriodicProfile,
    p: int,
    t: float,
    N: int,
    M: int,
    include_phase: bool = False,
) -> np.ndarray:
    """Compression of the (discretized, truncated) fiber kernel onto degree-p trig polynomials.

    By default the Bloch phase factor e^{i(x_m - x_n)t} is dropped (the
    convention used for the reported radii); ``include_phase`` restores
    the fully periodic form.
    """
    if p < 0:
        raise ValueError(f"degree must be >= 0, got {p}")
    graph = DilationGraph.one_sided(profile)
    kernel = assemble(graph, t, N, M).matrix * N  # kernel values on the grid
    nodes = QuadratureGrid(N).nodes
    if include_phase:
        phase = np.exp(1j * t * nodes)
        kernel = phase[:, None] * kernel * phase[None, :].conj()
    freqs = np.arange(-p, p + 1)
    basis = np.exp(2j * np.pi * nodes[:, None] * freqs[None, :])  # (N, 2p+1)
    return basis.conj().T @ kernel @ basis / N**2


@dataclass(frozen=True)
class NumRangePolygon:
    """Closed vertex chain z_0..z_n (z_n = z_0) inside the numerical range of T."""

    vertices: np.ndarray
    p: int
    t: float
    N: int
    M: int
    n: int
    c7: float | None = None
    phase_included: bool = False

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "t": self.t,
            "N": self.N,
            "M": self.M,
            "n": self.n,
            "C7": self.c7,
            "phase_included": self.phase_included,
            "vertices": [[float(z.real), float(z.imag)] for z in self.vertices],
        }


def johnson_polygon(
    T: np.ndarray,
    n: int,
    p: int = -1,
    t: float = float("nan"),
    N: int = -1,
    M: int = -1,
    c7: float | None = None,
    phase_included: bool = False,
    workers: int | None = None,
) -> NumRangePolygon:
    """Boundary-touching vertices of W(T) from n rotated Hermitian parts."""
    if n < 3:
        raise ValueError(f"at least 3 polygon angles are required, got {n}")
    T = np.asarray(T, dtype=complex)

    def vertex(ell: int) -> complex:
        rotated = np.exp(-2j * math.pi * ell / n) * T
        _, vec = hermitian_top_eigenpair((rotated + rotated.conj().T) / 2.0)
        return complex(vec.conj() @ (T @ vec))

    verts = np.array(ordered_map(vertex, range(n), workers=workers) + [0j])
    verts[n] = verts[0]
    return NumRangePolygon(
        vertices=verts, p=p, t=t, N=N, M=M, n=n, c7=c7, phase_included=phase_included
    )


@dataclass(frozen=True)
class InscribedDisc:
    """Result of the inscribed-disc extraction; r_star is None when no disc is certified."""

    r_star: float | None
    r_min: float | None = None
    theta_max: float | None = None
    reason: str | None = None


def inscribed_radius(polygon: NumRangePolygon, c7: float) -> InscribedDisc:
    """Certified inscribed radius R* = R_min cos(theta_max/2) - C7, if 0 is interior."""
    verts = polygon.vertices[:-1]
    moduli = np.abs(verts)
    r_min = float(moduli.min())
    if r_min <= 1e-12:
        return InscribedDisc(None, r_min=r_min, reason="a vertex sits at the origin")
    args = np.sort(np.angle(verts))
    gaps = np.diff(args, append=args[0] + 2.0 * math.pi)
    theta_max = float(gaps.max())
    if theta_max >= math.pi:
        return InscribedDisc(
            None, r_min=r_min, theta_max=theta_max, reason="origin is not interior to the polygon"
        )
    r_star = r_min * math.cos(theta_max / 2.0) - c7
    if r_star <= 0.0:
        return InscribedDisc(
            None, r_min=r_min, theta_max=theta_max, reason="certified radius is not positive"
        )
    return InscribedDisc(r_star, r_min=r_min, theta_max=theta_max)


def c7_constant(profile: PeriodicProfile, c: float, p: int, N: int, M: int) -> float:
    """Hausdorff-distance bound between the exact and computed restricted ranges."""
    sb = strip_kernel_bounds_one_sided(profile, c)
    c1 = c1_constant(DilationGraph.one_sided(profile), M)
    expo = 2.0 * math.pi * N * c
    quad = 0.0 if expo > 700.0 else (
        2.0 * (2 * p + 1) * math.exp(math.pi * c * (2 * p + 1)) * (sb.c5 + sb.c6) / math.expm1(expo)
    )
    return quad + c1


@dataclass(frozen=True)
class HalfGraphNumRange:
    label: str
    polygon: NumRangePolygon
    disc: InscribedDisc


def graph_inscribed_disc(
    graph: DilationGraph,
    c: float,
    p: int,
    t: float,
    N: int,
    M: int,
    n: int,
    include_phase: bool = False,
) -> tuple[HalfGraphNumRange, list[HalfGraphNumRange]]:
    """Best certified disc over the half graphs (both halves for two-sided graphs)."""
    halves = [("plus", graph.profile_plus)]
    if graph.side is Side.TWO_SIDED:
        halves.append(("minus", graph.profile_minus))
    results = []
    for label, profile in halves:
        c7 = c7_constant(profile, c, p, N, M)
        T = restricted_matrix(profile, p, t, N, M, include_phase=include_phase)
        poly = johnson_polygon(T, n, p=p, t=t, N=N, M=M, c7=c7, phase_included=include_phase)
        results.append(HalfGraphNumRange(label=label, polygon=poly, disc=inscribed_radius(poly, c7)))

    def score(r: HalfGraphNumRange) -> float:
        return r.disc.r_star if r.disc.r_star is not None else -math.inf

    best = max(results, key=score)
    return best, results


def polygon_to_csv(polygon: NumRangePolygon, fh) -> None:
    fh.write("re,im\n")
    for z in polygon.vertices:
        fh.write(f"{float(z.real)!r},{float(z.imag)!r}\n")

"""Explicit constants for the fully discrete spectral-radius certificate.

Everything here is closed-form arithmetic in the strip norms of the
generators: geometric tail bounds for the two series shapes that occur
in the kernels, sup-norm bounds C5/C6 for the analytic continuation of
the kernel off the real line, the truncation constant C1(M), the
uniform matrix-norm bound C3, and the quadrature constant
C4 = 2 e^{2 pi c} * (product/row-sum of strip bounds), which together
drive the test  L_c = C4/(e^{2 pi N c} - 1)  <  R_c.

Infinite sums are replaced by their upper bounds B*_10 / C*_10
throughout, which keeps every constant a valid over-estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .profiles import (
    Aggregates,
    DilationGraph,
    Side,
    StripViolation,
    aggregate_norms,
    pair_kappa,
    strip_norms,
    validate_strip,
)

__all__ = [
    "StripValidationError",
    "tail_b",
    "tail_b_star",
    "tail_c",
    "tail_c_star",
    "OneSidedStripBounds",
    "TwoSidedStripBounds",
    "strip_kernel_bounds_one_sided",
    "strip_kernel_bounds_two_sided",
    "c1_constant",
    "c3_constant",
    "CertificateConstants",
    "certificate_constants",
]


class StripValidationError(ValueError):
    """Raised when bounds are requested on an inadmissible strip."""

    def __init__(self, violations: list[StripViolation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def _check_alpha(alpha: float):
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


def tail_b(n: int, alpha: float) -> float:
    """Integral bound B_n on the tail sum_{j>n} alpha^(j/2)/(alpha - alpha^j), n >= 2."""
    _check_alpha(alpha)
    if n < 2:
        raise ValueError(f"tail index must be >= 2, got {n}")
    la = math.log(alpha)
    return math.log(math.tanh((n - 1) * abs(la) / 4.0)) / (math.sqrt(alpha) * la)


def tail_b_star(n: int, alpha: float) -> float:
    """Upper bound B*_n on the full sum_{j>=2} alpha^(j/2)/(alpha - alpha^j)."""
    _check_alpha(alpha)
    if n < 2:
        raise ValueError(f"tail index must be >= 2, got {n}")
    partial = sum(alpha ** (j / 2.0) / (alpha - alpha**j) for j in range(2, n + 1))
    return partial + tail_b(n, alpha)


def tail_c(n: int, alpha: float) -> float:
    """Integral bound C_n on the one-sided tail of sum_j alpha^(j/2)/(alpha^(j+2)+alpha^2)."""
    _check_alpha(alpha)
    if n < 0:
        raise ValueError(f"tail index must be >= 0, got {n}")
    return 2.0 * math.atan(alpha ** (n / 2.0)) / (alpha**2 * abs(math.log(alpha)))


def tail_c_star(n: int, alpha: float) -> float:
    """Upper bound C*_n on the two-sided sum_{j in Z} alpha^(j/2)/(alpha^(j+2)+alpha^2)."""
    _check_alpha(alpha)
    if n < 0:
        raise ValueError(f"tail index must be >= 0, got {n}")
    partial = sum(1.0 / (alpha ** (j / 2.0) + alpha ** (-j / 2.0)) for j in range(1, n + 1))
    return 0.5 / alpha**2 + 2.0 / alpha**2 * partial + 2.0 * tail_c(n, alpha)


def _corner_factor(alpha: float) -> float:
    # (1 + alpha^(1/2) + alpha^(-1/2)) / (4 alpha^2): the |j| <= 1 terms
    return (1.0 + math.sqrt(alpha) + 1.0 / math.sqrt(alpha)) / (4.0 * alpha**2)


def _require_strip(graph: DilationGraph, c: float):
    violations = validate_strip(graph, c)
    if violations:
        raise StripValidationError(violations)


def _diag_bounds(agg: Aggregates, alpha: float) -> tuple[float, float]:
    """Strip bounds (||K||_{c,0}, ||K||_{0,c}) of a diagonal kernel from its aggregates."""
    la = abs(math.log(alpha))
    bstar = tail_b_star(10, alpha)
    body_c0 = agg.Gc * _corner_factor(alpha) + la * (agg.Fc + agg.F0) * bstar
    body_0c = agg.Gc * _corner_factor(alpha) + 2.0 * la * agg.Fc * bstar
    c0 = (1.0 + agg.Fc**2) ** 0.25 / (math.pi * (1.0 - agg.Ic**2)) * body_c0
    zc = (1.0 + agg.F0**2) ** 0.25 / (math.pi * (1.0 - agg.Ic**2) ** 1.25) * body_0c
    return c0, zc


@dataclass(frozen=True)
class OneSidedStripBounds:
    """C5 >= ||K_t||_{c,0} and C6 >= ||K_t||_{0,c}, uniform in t."""

    c: float
    c5: float
    c6: float

    @property
    def c4(self) -> float:
        return 2.0 * math.exp(2.0 * math.pi * self.c) * self.c5 * self.c6


def strip_kernel_bounds_one_sided(profile, c: float) -> OneSidedStripBounds:
    graph = profile if isinstance(profile, DilationGraph) else DilationGraph.one_sided(profile)
    if graph.side is not Side.ONE_SIDED:
        raise ValueError("one-sided bounds need a one-sided graph")
    _require_strip(graph, c)
    c5, c6 = _diag_bounds(aggregate_norms(graph.profile_plus, c), graph.alpha)
    return OneSidedStripBounds(c=c, c5=c5, c6=c6)


@dataclass(frozen=True)
class TwoSidedStripBounds:
    """The eight strip bounds of the 2x2 kernel and the row-sum constant.

    ``k_plus_c0`` bounds ||K_t^+||_{c,0} etc.; ``ctilde_star`` is the
    larger of the two row sums of pairwise products that bounds the
    composed quadrature error, and C4 = 2 e^{2 pi c} * ctilde_star.
    """

    c: float
    k_plus_c0: float
    k_plus_0c: float
    k_minus_c0: float
    k_minus_0c: float
    l_plus_c0: float
    l_plus_0c: float
    l_minus_c0: float
    l_minus_0c: float

    @property
    def ctilde_star(self) -> float:
        row_minus = (
            self.k_minus_0c * self.k_minus_c0
            + self.l_minus_0c * self.l_plus_c0
            + self.k_minus_0c * self.l_minus_c0
            + self.l_minus_0c * self.k_plus_c0
        )
        row_plus = (
            self.l_plus_0c * self.k_minus_c0
            + self.k_plus_0c * self.l_plus_c0
            + self.l_plus_0c * self.l_minus_c0
            + self.k_plus_0c * self.k_plus_c0
        )
        return max(row_minus, row_plus)

    @property
    def c4(self) -> float:
        return 2.0 * math.exp(2.0 * math.pi * self.c) * self.ctilde_star


def strip_kernel_bounds_two_sided(graph: DilationGraph, c: float) -> TwoSidedStripBounds:
    if graph.side is not Side.TWO_SIDED:
        raise ValueError("two-sided bounds need a two-sided graph")
    _require_strip(graph, c)
    alpha = graph.alpha
    la = abs(math.log(alpha))
    cstar = tail_c_star(10, alpha)
    agg = {+1: aggregate_norms(graph.profile_plus, c), -1: aggregate_norms(graph.profile_minus, c)}
    kap = dict(zip((+1, -1), pair_kappa(graph.profile_plus, graph.profile_minus, c)))
    img = {
        +1: strip_norms(graph.profile_plus, c).im_g,
        -1: strip_norms(graph.profile_minus, c).im_g,
    }

    def denom(s: int) -> float:
        return 1.0 - (img[s] + alpha * c * kap[s]) ** 2 / alpha**4

    def l_c0(s: int) -> float:
        return (
            (la * agg[-s].F0 + kap[s])
            / denom(s)
            * (1.0 + agg[s].Fc**2) ** 0.25
            * cstar
            / (2.0 * math.pi)
        )

    def l_0c(s: int) -> float:
        return (
            (la * agg[-s].Fc + kap[-s])
            / denom(-s)
            * ((1.0 + agg[s].F0**2) / (1.0 - agg[-s].Ic ** 2)) ** 0.25
            * cstar
            / (2.0 * math.pi)
        )

    kp_c0, kp_0c = _diag_bounds(agg[+1], alpha)
    km_c0, km_0c = _diag_bounds(agg[-1], alpha)
    return TwoSidedStripBounds(
        c=c,
        k_plus_c0=kp_c0,
        k_plus_0c=kp_0c,
        k_minus_c0=km_c0,
        k_minus_0c=km_0c,
        l_plus_c0=l_c0(+1),
        l_plus_0c=l_0c(+1),
        l_minus_c0=l_c0(-1),
        l_minus_0c=l_0c(-1),
    )


def c1_constant(graph: DilationGraph, M: int) -> float:
    """Uniform bound on the series-truncation error of the assembled matrix."""
    if M < 2:
        raise ValueError(f"truncation order must be >= 2, got {M}")
    alpha = graph.alpha
    la = abs(math.log(alpha))
    if graph.side is Side.ONE_SIDED:
        agg = aggregate_norms(graph.profile_plus, 0.0)
        return 2.0 * la * agg.F0 / math.pi * (1.0 + agg.F0**2) ** 0.25 * tail_b(M, alpha)
    f0p = aggregate_norms(graph.profile_plus, 0.0).F0
    f0m = aggregate_norms(graph.profile_minus, 0.0).F0
    kappa0 = pair_kappa(graph.profile_plus, graph.profile_minus, 0.0)[0]
    bm, cm = tail_b(M, alpha), tail_c(M, alpha)
    row_plus = (1.0 + f0p**2) ** 0.25 * (2.0 * la * f0p * bm + (la * f0m + kappa0) * cm)
    row_minus = (1.0 + f0m**2) ** 0.25 * (2.0 * la * f0m * bm + (la * f0p + kappa0) * cm)
    return max(row_plus, row_minus) / math.pi


def c3_constant(graph: DilationGraph) -> float:
    """Uniform bound on the infinity norm of the fiber operators (all t, N)."""
    alpha = graph.alpha
    la = abs(math.log(alpha))
    bstar = tail_b_star(10, alpha)
    if graph.side is Side.ONE_SIDED:
        agg = aggregate_norms(graph.profile_plus, 0.0)
        body = agg.G0 * _corner_factor(alpha) + 2.0 * la * agg.F0 * bstar
        return (1.0 + agg.F0**2) ** 0.25 / math.pi * body
    cstar = tail_c_star(10, alpha)
    rfac = (1.0 + math.sqrt(alpha) + 1.0 / math.sqrt(alpha)) / (2.0 * alpha**2)
    ap = aggregate_norms(graph.profile_plus, 0.0)
    am = aggregate_norms(graph.profile_minus, 0.0)
    kappa0 = pair_kappa(graph.profile_plus, graph.profile_minus, 0.0)[0]
    row_plus = (1.0 + ap.F0**2) ** 0.25 * (
        ap.G0 * rfac + 4.0 * la * ap.F0 * bstar + (la * am.F0 + kappa0) * cstar
    )
    row_minus = (1.0 + am.F0**2) ** 0.25 * (
        am.G0 * rfac + 4.0 * la * am.F0 * bstar + (la * ap.F0 + kappa0) * cstar
    )
    return max(row_plus, row_minus) / (2.0 * math.pi)


@dataclass(frozen=True)
class CertificateConstants:
    """All closed-form constants entering a certificate, tagged with their M.

    ``norm_path`` records, per profile, whether the strip norms feeding
    these constants were closed forms or generic Fourier bounds.
    """

    side: Side
    c: float
    M: int
    c1: float
    c3: float
    c4: float
    c5: float | None = None  # one-sided only
    c6: float | None = None
    norm_path: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        out = {
            "C1": self.c1, "C3": self.c3, "C4": self.c4, "M": self.M, "c": self.c,
            "norm_path": list(self.norm_path),
        }
        if self.side is Side.ONE_SIDED:
            out.update({"C5": self.c5, "C6": self.c6})
        return out


def _norm_path(graph: DilationGraph, c: float) -> tuple[str, ...]:
    out = []
    for profile in graph.profiles:
        exact = strip_norms(profile, 0.0).exact and strip_norms(profile, c).exact
        out.append("exact" if exact else "bounded")
    return tuple(out)


def certificate_constants(graph: DilationGraph, c: float, M: int) -> CertificateConstants:
    c1 = c1_constant(graph, M)
    c3 = c3_constant(graph)
    path = _norm_path(graph, c)
    if graph.side is Side.ONE_SIDED:
        sb = strip_kernel_bounds_one_sided(graph, c)
        return CertificateConstants(
            side=graph.side, c=c, M=M, c1=c1, c3=c3, c4=sb.c4, c5=sb.c5, c6=sb.c6,
            norm_path=path,
        )
    sb = strip_kernel_bounds_two_sided(graph, c)
    return CertificateConstants(side=graph.side, c=c, M=M, c1=c1, c3=c3, c4=sb.c4, norm_path=path)

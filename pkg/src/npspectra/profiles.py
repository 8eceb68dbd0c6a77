"""Periodic generators of dilation-invariant graphs.

A graph ``y = f(x)`` on the half line with the self-similarity
``f(alpha*x) = alpha*f(x)`` is encoded by its 1-periodic generator

    g(x) = alpha**(-x) * f(alpha**x),   i.e.   f(x) = x * g(log_alpha(x)).

We represent ``g`` as a finite real Fourier series, which makes the
analytic continuation to the strip ``|Im z| < c`` and sup-norm bounds on
that strip mechanically computable.  All certificate constants consume
only these (upper bounds on) strip norms, so replacing an exact norm by
a bound keeps every certificate valid.
"""

from __future__ import annotations

import enum
import hashlib
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Side",
    "NormTable",
    "PeriodicProfile",
    "Aggregates",
    "DilationGraph",
    "StripViolation",
    "ProfileFormatError",
    "strip_norms",
    "aggregate_norms",
    "pair_kappa",
    "validate_strip",
    "max_admissible_width",
    "sin2_profile",
    "cone_profile",
    "flat_profile",
    "parse_profile",
    "format_profile",
    "load_profile",
]


class Side(enum.Enum):
    ONE_SIDED = "one-sided"
    TWO_SIDED = "two-sided"


class ProfileFormatError(ValueError):
    """Raised for malformed profile files."""


@dataclass(frozen=True)
class NormTable:
    """Sup norms of g, g', g'' and of their imaginary parts on the strip |Im z| < c.

    ``exact`` records whether the entries are closed forms or generic
    Fourier-coefficient upper bounds; both are valid certificate inputs.
    """

    c: float
    norm_g: float
    norm_g1: float
    norm_g2: float
    im_g: float
    im_g1: float
    exact: bool = False

    def __post_init__(self):
        if self.c < 0:
            raise ValueError(f"strip half-width must be >= 0, got {self.c}")
        for name in ("norm_g", "norm_g1", "norm_g2", "im_g", "im_g1"):
            v = getattr(self, name)
            if not (v >= 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be finite and >= 0, got {v}")


@dataclass(frozen=True)
class PeriodicProfile:
    """Finite Fourier series g(x) = a0 + sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x).

    ``fourier[k] = (a_k, b_k)``; the ``b_0`` entry is ignored.  A finite
    series is entire, so strip norms are finite for every c >= 0.
    ``exact_norms`` optionally carries closed-form norm tables at selected
    strip widths (used by the presets); elsewhere generic Fourier bounds
    are returned.
    """

    alpha: float
    fourier: tuple[tuple[float, float], ...]
    exact_norms: tuple[NormTable, ...] = ()
    name: str = ""

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie strictly in (0, 1), got {self.alpha}")
        if not self.fourier:
            raise ValueError("at least the constant Fourier coefficient is required")
        for pair in self.fourier:
            if len(pair) != 2 or not all(math.isfinite(v) for v in pair):
                raise ValueError(f"bad Fourier coefficient pair {pair!r}")

    # -- generator and derivatives on the real line ---------------------

    def g(self, x):
        x = np.asarray(x, dtype=float)
        out = np.full_like(x, self.fourier[0][0])
        for k, (a, b) in enumerate(self.fourier[1:], start=1):
            w = 2.0 * np.pi * k
            out = out + a * np.cos(w * x) + b * np.sin(w * x)
        return out if out.ndim else float(out)

    def g1(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for k, (a, b) in enumerate(self.fourier[1:], start=1):
            w = 2.0 * np.pi * k
            out = out + w * (-a * np.sin(w * x) + b * np.cos(w * x))
        return out if out.ndim else float(out)

    def g2(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for k, (a, b) in enumerate(self.fourier[1:], start=1):
            w = 2.0 * np.pi * k
            out = out - w * w * (a * np.cos(w * x) + b * np.sin(w * x))
        return out if out.ndim else float(out)

    # -- f and derivatives ----------------------------------------------

    @property
    def log_alpha(self) -> float:
        return math.log(self.alpha)

    def f(self, x):
        """f(x) = x * g(log_alpha x) for x > 0."""
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise ValueError("f is defined on the open half line x > 0")
        u = np.log(x) / self.log_alpha
        out = x * self.g(u)
        return out if out.ndim else float(out)

    def f1(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise ValueError("f' is defined on the open half line x > 0")
        u = np.log(x) / self.log_alpha
        out = self.g(u) + self.g1(u) / self.log_alpha
        return out if out.ndim else float(out)

    def f2(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise ValueError("f'' is defined on the open half line x > 0")
        u = np.log(x) / self.log_alpha
        out = (self.g1(u) / self.log_alpha + self.g2(u) / self.log_alpha**2) / x
        return out if out.ndim else float(out)

    # Kernel evaluation works in the exponent variable s with x = alpha**s;
    # these forms avoid the log/exp round trip of f(alpha**s).

    def f_pow(self, s):
        return self.alpha**np.asarray(s, dtype=float) * self.g(s)

    def f1_pow(self, s):
        return self.g(s) + self.g1(s) / self.log_alpha

    def f2_pow(self, s):
        s = np.asarray(s, dtype=float)
        return (self.g1(s) / self.log_alpha + self.g2(s) / self.log_alpha**2) / self.alpha**s

    def digest(self) -> str:
        payload = repr((self.alpha, self.fourier)).encode()
        return hashlib.sha256(payload).hexdigest()[:12]


def strip_norms(profile: PeriodicProfile, c: float) -> NormTable:
    """Norm table of the generator on the strip |Im z| < c.

    Returns the profile's exact closed-form entry when one is tabulated at
    this c; otherwise the generic Fourier bounds

        ||g^(j)||_c  <= sum_k (2 pi k)^j (|a_k| + |b_k|) cosh(2 pi k c)
        ||Im g^(j)||_c <= sum_k (2 pi k)^j (|a_k| + |b_k|) sinh(2 pi k c)

    (k = 0 contributes |a_0| to j = 0 only).
    """
    if c < 0:
        raise ValueError(f"strip half-width must be >= 0, got {c}")
    for entry in profile.exact_norms:
        if abs(entry.c - c) <= 1e-12 * max(1.0, abs(c)):
            return entry
    ng = abs(profile.fourier[0][0])
    ng1 = ng2 = img = img1 = 0.0
    for k, (a, b) in enumerate(profile.fourier[1:], start=1):
        w = 2.0 * math.pi * k
        weight = abs(a) + abs(b)
        ch, sh = math.cosh(w * c), math.sinh(w * c)
        ng += weight * ch
        ng1 += w * weight * ch
        ng2 += w * w * weight * ch
        img += weight * sh
        img1 += w * weight * sh
    return NormTable(c=c, norm_g=ng, norm_g1=ng1, norm_g2=ng2, im_g=img, im_g1=img1)


@dataclass(frozen=True)
class Aggregates:
    """Derived quantities feeding the certificate constants.

    F_d = ||g||_d + ||g'||_d / |log alpha|   (d = 0 and d = c)
    G_d = ||g'||_d + ||g''||_d / |log alpha|
    I_c = ||Im g||_c + ||Im g'||_c / |log alpha|
    """

    c: float
    F0: float
    Fc: float
    G0: float
    Gc: float
    Ic: float
    table0: NormTable
    tablec: NormTable


def aggregate_norms(profile: PeriodicProfile, c: float) -> Aggregates:
    la = abs(profile.log_alpha)
    t0 = strip_norms(profile, 0.0)
    tc = strip_norms(profile, c)
    return Aggregates(
        c=c,
        F0=t0.norm_g + t0.norm_g1 / la,
        Fc=tc.norm_g + tc.norm_g1 / la,
        G0=t0.norm_g1 + t0.norm_g2 / la,
        Gc=tc.norm_g1 + tc.norm_g2 / la,
        Ic=tc.im_g + tc.im_g1 / la,
        table0=t0,
        tablec=tc,
    )


def pair_kappa(plus: PeriodicProfile, minus: PeriodicProfile, c: float) -> tuple[float, float]:
    """Coupling constants K_{c,+}, K_{c,-} = |log alpha|/alpha * max(||g_pm||_c, ||g_mp||_0)."""
    la = abs(plus.log_alpha)
    scale = la / plus.alpha
    k_plus = scale * max(strip_norms(plus, c).norm_g, strip_norms(minus, 0.0).norm_g)
    k_minus = scale * max(strip_norms(minus, c).norm_g, strip_norms(plus, 0.0).norm_g)
    return k_plus, k_minus


@dataclass(frozen=True)
class DilationGraph:
    """A dilation-invariant Lipschitz graph, one- or two-sided.

    Two-sided graphs are described by the generators of the two half
    lines; both must share the dilation ratio.  f(0) = 0 holds by
    construction since g is bounded.
    """

    side: Side
    profile_plus: PeriodicProfile
    profile_minus: PeriodicProfile | None = None

    def __post_init__(self):
        if self.side is Side.TWO_SIDED:
            if self.profile_minus is None:
                raise ValueError("two-sided graphs need both profiles")
            if self.profile_minus.alpha != self.profile_plus.alpha:
                raise ValueError("the two profiles must share alpha")
        elif self.profile_minus is not None:
            raise ValueError("one-sided graphs take a single profile")

    @classmethod
    def one_sided(cls, profile: PeriodicProfile) -> "DilationGraph":
        return cls(Side.ONE_SIDED, profile)

    @classmethod
    def two_sided(cls, plus: PeriodicProfile, minus: PeriodicProfile) -> "DilationGraph":
        return cls(Side.TWO_SIDED, plus, minus)

    @property
    def alpha(self) -> float:
        return self.profile_plus.alpha

    @property
    def profiles(self) -> tuple[PeriodicProfile, ...]:
        if self.side is Side.ONE_SIDED:
            return (self.profile_plus,)
        return (self.profile_plus, self.profile_minus)

    def digest(self) -> str:
        payload = (self.side.value + ":" + ",".join(p.digest() for p in self.profiles)).encode()
        return hashlib.sha256(payload).hexdigest()[:12]


@dataclass(frozen=True)
class StripViolation:
    condition: str
    lhs: float
    rhs: float

    def __str__(self):
        return f"{self.condition}: {self.lhs:.6g} (must be < {self.rhs:.6g})"


def max_admissible_width(graph: DilationGraph, hi: float | None = None, tol: float = 1e-6) -> float:
    """Largest admissible strip half-width, located by bisection.

    Admissibility is downward closed (every condition is monotone in c),
    so bisection against validate_strip is exact up to ``tol``.
    """
    alpha = graph.alpha
    upper = hi if hi is not None else math.acos(alpha) / abs(math.log(alpha))
    if not validate_strip(graph, min(tol, upper)):
        lo = min(tol, upper)
    else:
        return 0.0
    hi_bound = upper
    if not validate_strip(graph, hi_bound):
        return hi_bound
    while hi_bound - lo > tol:
        mid = (lo + hi_bound) / 2.0
        if validate_strip(graph, mid):
            hi_bound = mid
        else:
            lo = mid
    return lo


def validate_strip(graph: DilationGraph, c: float) -> list[StripViolation]:
    """Check admissibility of the strip half-width c for the certificate bounds.

    One-sided: c <= arccos(alpha)/|log alpha| and I_c < 1.  Two-sided
    graphs additionally need, for both sign pairs,
    ||Im g_pm||_c + alpha*c*K_{c,pm} < alpha**2.  Violations are returned
    as data (empty list means admissible).
    """
    if c <= 0:
        raise ValueError(f"strip half-width must be > 0, got {c}")
    alpha = graph.alpha
    la = abs(math.log(alpha))
    out: list[StripViolation] = []
    c_max = math.acos(alpha) / la
    if c > c_max:
        out.append(StripViolation("c <= arccos(alpha)/|log alpha|", c, c_max))
    labels = ("+", "-") if graph.side is Side.TWO_SIDED else ("",)
    for profile, label in zip(graph.profiles, labels):
        agg = aggregate_norms(profile, c)
        if not agg.Ic < 1.0:
            out.append(StripViolation(f"I_c{label} < 1", agg.Ic, 1.0))
    if graph.side is Side.TWO_SIDED:
        k_plus, k_minus = pair_kappa(graph.profile_plus, graph.profile_minus, c)
        for profile, kappa, label in (
            (graph.profile_plus, k_plus, "+"),
            (graph.profile_minus, k_minus, "-"),
        ):
            lhs = strip_norms(profile, c).im_g + alpha * c * kappa
            if not lhs < alpha**2:
                out.append(
                    StripViolation(f"||Im g{label}||_c + alpha*c*K_c{label} < alpha^2", lhs, alpha**2)
                )
    return out


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------


def _sin2_table(c: float) -> NormTable:
    # closed forms for g(x) = sin^2(pi x)
    return NormTable(
        c=c,
        norm_g=math.cosh(math.pi * c) ** 2,
        norm_g1=math.pi * math.cosh(2 * math.pi * c),
        norm_g2=2 * math.pi**2 * math.cosh(2 * math.pi * c),
        im_g=math.sinh(2 * math.pi * c) / 2,
        im_g1=math.pi * math.sinh(2 * math.pi * c),
        exact=True,
    )


def sin2_profile(alpha: float, exact_at: tuple[float, ...] = ()) -> PeriodicProfile:
    """The oscillatory generator g(x) = sin^2(pi x) = 1/2 - cos(2 pi x)/2."""
    return PeriodicProfile(
        alpha=alpha,
        fourier=((0.5, 0.0), (-0.5, 0.0)),
        exact_norms=tuple(_sin2_table(c) for c in exact_at),
        name=f"sin2(alpha={alpha:g})",
    )


def cone_profile(alpha: float, mu: float, exact_at: tuple[float, ...] = ()) -> PeriodicProfile:
    """Constant generator g = mu, i.e. the straight half line f(x) = mu*x."""
    tables = tuple(
        NormTable(c=c, norm_g=abs(mu), norm_g1=0.0, norm_g2=0.0, im_g=0.0, im_g1=0.0, exact=True)
        for c in exact_at
    )
    return PeriodicProfile(
        alpha=alpha, fourier=((mu, 0.0),), exact_norms=tables, name=f"cone(mu={mu:g})"
    )


def flat_profile(alpha: float) -> PeriodicProfile:
    return PeriodicProfile(alpha=alpha, fourier=((0.0, 0.0),), name="flat")


# ---------------------------------------------------------------------------
# Profile files: plain-text key/value format
# ---------------------------------------------------------------------------
#
#   alpha 0.75
#   fourier 0 0.5 0.0
#   fourier 1 -0.5 0.0
#   norms 0.013 <g> <g'> <g''> <Im g> <Im g'>     (optional, marked exact)


def parse_profile(text: str, name: str = "") -> PeriodicProfile:
    alpha = None
    coeffs: dict[int, tuple[float, float]] = {}
    tables: list[NormTable] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]
        try:
            if key == "alpha":
                (val,) = args
                alpha = float(val)
            elif key == "fourier":
                k, a, b = args
                coeffs[int(k)] = (float(a), float(b))
            elif key == "norms":
                c, ng, ng1, ng2, img, img1 = (float(v) for v in args)
                tables.append(
                    NormTable(c=c, norm_g=ng, norm_g1=ng1, norm_g2=ng2, im_g=img, im_g1=img1, exact=True)
                )
            else:
                raise ValueError(f"unknown key {key!r}")
        except (ValueError, TypeError) as exc:
            raise ProfileFormatError(f"line {lineno}: {raw.strip()!r}: {exc}") from exc
    if alpha is None:
        raise ProfileFormatError("missing 'alpha' line")
    if not coeffs:
        raise ProfileFormatError("missing 'fourier' lines")
    kmax = max(coeffs)
    fourier = tuple(coeffs.get(k, (0.0, 0.0)) for k in range(kmax + 1))
    try:
        return PeriodicProfile(alpha=alpha, fourier=fourier, exact_norms=tuple(tables), name=name)
    except ValueError as exc:
        raise ProfileFormatError(str(exc)) from exc


def format_profile(profile: PeriodicProfile) -> str:
    lines = [f"alpha {profile.alpha!r}"]
    for k, (a, b) in enumerate(profile.fourier):
        lines.append(f"fourier {k} {a!r} {b!r}")
    for t in profile.exact_norms:
        lines.append(f"norms {t.c!r} {t.norm_g!r} {t.norm_g1!r} {t.norm_g2!r} {t.im_g!r} {t.im_g1!r}")
    return "\n".join(lines) + "\n"


def load_profile(path) -> PeriodicProfile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_profile(fh.read(), name=str(path))

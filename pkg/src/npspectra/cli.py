"""Command-line front end.

Subcommands
    spectrum     eigenvalue cloud approximating the essential spectrum
    certify      fully discrete spectral-radius certificate
    synthesize   union cloud / aggregate certificate over several corners
    numrange     certified disc inside the numerical range
    cone-oracle  closed-form spectrum and radius of the straight cone
    converge     (N, L_c, R_c, r_max) table over a doubling schedule

Presets carry the reference parameter sets of the four worked examples
(example1, example2/cone, example3, example4, flat); any flag overrides
its preset value.  Long certification runs subsample the Bloch grid
unless --full is given; outputs record the stride used.  Exit status is
0 on success (CERTIFIED where applicable), 2 for an INCONCLUSIVE
certificate, and 1 for errors.  Rerunning a command with identical
flags reproduces the output byte for byte apart from the timestamp
field of JSON artifacts.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from ._concurrency import ENV_THREADS
from .certify import CornerParams, certify, certify_synthesized
from .linalg import eigenvalues
from .numrange import graph_inscribed_disc, polygon_to_csv
from .nystrom import assemble
from .profiles import (
    DilationGraph,
    ProfileFormatError,
    cone_profile,
    flat_profile,
    load_profile,
    sin2_profile,
)
from .spectra import (
    SpectrumCloud,
    cloud_to_csv,
    cone_exact_radius,
    cone_exact_spectrum,
    radius,
    spectrum_approx,
    union_clouds,
)

# Without --full, the Bloch grid is subsampled so that the work stays
# near a fixed budget of O(dim^3) kernel solves; small matrices (all the
# reference cone runs) are never subsampled.  The certificate's covering
# radius always reflects the walked subset, so a subsampled run can only
# weaken, never fake, a CERTIFIED verdict.
SMOKE_WALK_BUDGET = 8_000_000
SMOKE_EIG_BUDGET = 30_000_000


def _smoke_walk_cap(dim: int) -> int:
    return max(50, SMOKE_WALK_BUDGET // (dim * dim))


def _smoke_eig_cap(dim: int) -> int:
    return max(100, SMOKE_EIG_BUDGET // (dim * dim))


@dataclass
class Preset:
    name: str
    build: object  # (alpha, mu) -> DilationGraph
    c: float
    N: int
    m: int
    M: int
    p: int = 10
    n: int = 100
    t: float = math.pi / 18
    alpha: float | None = None
    mu: float | None = None


def _example1(alpha, mu):
    return DilationGraph.one_sided(sin2_profile(alpha, exact_at=(0.0, 0.013)))


def _cone(alpha, mu):
    prof = cone_profile(alpha, mu, exact_at=(0.0, 0.57))
    return DilationGraph.two_sided(prof, prof)


def _example3(alpha, mu):
    prof = sin2_profile(alpha, exact_at=(0.0, 0.019))
    return DilationGraph.two_sided(prof, prof)


def _example4(alpha, mu):
    return DilationGraph.two_sided(sin2_profile(alpha, exact_at=(0.0, 0.019)), flat_profile(alpha))


def _flat(alpha, mu):
    return DilationGraph.two_sided(flat_profile(alpha), flat_profile(alpha))


PRESETS = {
    "example1": Preset("example1", _example1, c=0.013, N=512, m=16000, M=100, alpha=0.75,
                       t=math.pi / 18),
    "example2": Preset("example2", _cone, c=0.57, N=16, m=2000, M=200, alpha=7 / 8, mu=10.0,
                       t=math.pi / 18),
    "cone": Preset("cone", _cone, c=0.57, N=16, m=2000, M=200, alpha=7 / 8, mu=10.0,
                   t=math.pi / 18),
    "example3": Preset("example3", _example3, c=0.019, N=256, m=10000, M=60, alpha=2 / 3,
                       t=math.pi / 13),
    "example4": Preset("example4", _example4, c=0.019, N=256, m=5000, M=50, alpha=2 / 3,
                       t=math.pi / 13),
    "flat": Preset("flat", _flat, c=0.019, N=8, m=10, M=2, alpha=2 / 3),
}


class CliError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="npspectra",
        description="Spectra and spectral-radius certificates for the double-layer "
        "operator on dilation-invariant graphs.",
    )
    parser.add_argument("--version", action="version", version=f"npspectra {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, walk=False, nr=False):
        p.add_argument("--preset", help=f"named parameter set ({', '.join(sorted(PRESETS))})")
        p.add_argument("--profile-file", help="profile file for a one-sided graph")
        p.add_argument("--alpha", type=float, help="dilation ratio override")
        p.add_argument("--mu", type=float, help="cone slope override")
        p.add_argument("--N", type=int, help="quadrature size")
        p.add_argument("--m", type=int, help="Bloch grid size")
        p.add_argument("--M", type=int, help="kernel series truncation")
        p.add_argument("--c", type=float, help="strip half-width")
        p.add_argument("--rho0", type=float, default=0.5, help="target radius (default 1/2)")
        p.add_argument("--t", type=float, help="single Bloch parameter mode")
        p.add_argument("--output", help="artifact path (default: stdout)")
        p.add_argument("--threads", type=int, help=f"worker pool size (env {ENV_THREADS} overrides)")
        p.add_argument("--full", action="store_true", help="run the full Bloch grid (no subsampling)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if nr:
            p.add_argument("--p", type=int, help="trig-polynomial degree")
            p.add_argument("--n", type=int, help="polygon angle count")
            p.add_argument("--include-phase", action="store_true",
                           help="keep the Bloch phase in the restricted matrix")

    common(sub.add_parser("spectrum", help="eigenvalue cloud"))
    common(sub.add_parser("certify", help="spectral-radius certificate"))
    common(sub.add_parser("synthesize", help="union over corner presets"))
    sub.choices["synthesize"].add_argument(
        "--corners", help="comma-separated preset names (default: the chosen --preset)"
    )
    common(sub.add_parser("numrange", help="certified numerical-range disc"), nr=True)
    oracle = sub.add_parser("cone-oracle", help="closed-form cone spectrum")
    oracle.add_argument("--mu", type=float, required=True)
    oracle.add_argument("--y-max", type=float, default=40.0)
    oracle.add_argument("--samples", type=int, default=4001)
    oracle.add_argument("--output")
    oracle.add_argument("--format", choices=("json", "csv"), default="json")
    common(sub.add_parser("converge", help="L_c / R_c / r_max against N"))
    sub.choices["converge"].add_argument(
        "--schedule", help="comma-separated N values (default: doublings up to N)"
    )
    return parser


def _resolve(args) -> tuple[DilationGraph, dict]:
    """Merge preset defaults and explicit flags into a graph + parameter dict."""
    if args.preset and args.preset not in PRESETS:
        raise CliError(f"unknown preset {args.preset!r} (choose from {', '.join(sorted(PRESETS))})")
    preset = PRESETS.get(args.preset) if args.preset else None
    if args.profile_file:
        if preset:
            raise CliError("--preset and --profile-file are mutually exclusive")
        try:
            graph = DilationGraph.one_sided(load_profile(args.profile_file))
        except (OSError, ProfileFormatError) as exc:
            raise CliError(f"cannot load profile file: {exc}") from exc
        params = dict(c=None, N=64, m=200, M=40, p=10, n=100, t=math.pi / 18)
    elif preset:
        alpha = args.alpha if args.alpha is not None else preset.alpha
        mu = args.mu if args.mu is not None else preset.mu
        graph = preset.build(alpha, mu)
        params = dict(c=preset.c, N=preset.N, m=preset.m, M=preset.M, p=preset.p,
                      n=preset.n, t=preset.t)
    else:
        raise CliError("choose a --preset or give a --profile-file")
    for key, flag in (("N", "N"), ("m", "m"), ("M", "M"), ("c", "c"), ("t", "t"),
                      ("p", "p"), ("n", "n")):
        val = getattr(args, flag, None)
        if val is not None:
            params[key] = val
    for key in ("N", "m", "M"):
        if params.get(key) is not None and params[key] < 1:
            raise CliError(f"{key} must be positive")
    params["rho0"] = args.rho0
    params["workers"] = args.threads
    return graph, params


def _require_width(prm) -> float:
    if prm.get("c") is None:
        raise CliError("a strip half-width --c is required for this command")
    return prm["c"]


def _graph_dim(graph: DilationGraph, n_quad: int) -> int:
    return 2 * n_quad if graph.side.value == "two-sided" else n_quad


def _stride(m: int, cap: int, full: bool) -> int:
    return 1 if full else max(1, m // cap)


def _emit(args, payload_json: dict, csv_writer, summary: str) -> None:
    if args.format == "json":
        payload_json = {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"), **payload_json}
        text = json.dumps(payload_json, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        csv_writer(buf)
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)


def _cmd_spectrum(args) -> int:
    graph, prm = _resolve(args)
    if args.t is not None:
        cloud = _single_t_cloud(graph, prm)
    else:
        cap = _smoke_eig_cap(_graph_dim(graph, prm["N"]))
        stride = _stride(prm["m"], cap, args.full)
        cloud = spectrum_approx(graph, prm["N"], prm["m"], prm["M"], k_stride=stride,
                                workers=prm["workers"])
    r = radius(cloud)
    _emit(args, {**cloud.to_json_dict(), "radius": r}, lambda fh: cloud_to_csv(cloud, fh),
          f"spectrum: {len(cloud.points)} points, radius {r:.6f}")
    return 0


def _single_t_cloud(graph, prm) -> SpectrumCloud:
    mat = assemble(graph, prm["t"], prm["N"], prm["M"])
    ev = eigenvalues(mat.matrix)
    order = np.lexsort((ev.imag, ev.real))
    pts = np.concatenate([np.zeros(1, dtype=complex), np.conj(ev[order])[::-1], ev[order]])
    meta = {"kind": "spectrum", "graph": graph.digest(), "side": graph.side.value,
            "N": prm["N"], "M": prm["M"], "t": prm["t"], "t_grid": "single fiber"}
    return SpectrumCloud(points=pts, meta=meta)


def _cmd_certify(args) -> int:
    graph, prm = _resolve(args)
    width = _require_width(prm)
    stride = _stride(prm["m"], _smoke_walk_cap(_graph_dim(graph, prm["N"])), args.full)
    cert = certify(graph, prm["rho0"], width, prm["m"], prm["M"], prm["N"],
                   k_stride=stride, workers=prm["workers"])

    def to_csv(fh):
        fh.write("t,rho_A,n_k,nu_min,nu_max\n")
        for p in cert.per_t:
            fh.write(f"{float(p.t)!r},{float(p.rho_A)!r},{p.n_k},{float(p.nu_min)!r},{float(p.nu_max)!r}\n")

    _emit(args, cert.to_json_dict(), to_csv,
          f"certify: {cert.verdict} (r_max={cert.r_max}, L_c={cert.L_c}, R_c={cert.R_c},"
          f" k_stride={stride})")
    return 0 if cert.certified else 2


def _cmd_synthesize(args) -> int:
    corner_names = (args.corners or args.preset or "").split(",")
    corner_names = [name.strip() for name in corner_names if name.strip()]
    if not corner_names:
        raise CliError("synthesize needs --corners or --preset")
    graphs, params = [], []
    for name in corner_names:
        if name not in PRESETS:
            raise CliError(f"unknown preset {name!r}")
        pre = PRESETS[name]
        g = pre.build(pre.alpha, pre.mu)
        graphs.append(g)
        stride = _stride(pre.m, _smoke_walk_cap(_graph_dim(g, pre.N)), args.full)
        params.append(CornerParams(c=pre.c, m=pre.m, M=pre.M, N=pre.N, k_stride=stride))
    agg = certify_synthesized(graphs, args.rho0, params, workers=args.threads)
    cloud = union_clouds([
        spectrum_approx(
            g, p.N, p.m, p.M,
            k_stride=_stride(p.m, _smoke_eig_cap(_graph_dim(g, p.N)), args.full),
            workers=args.threads,
        )
        for g, p in zip(graphs, params)
    ])

    def to_csv(fh):
        cloud_to_csv(cloud, fh)

    payload = {**agg.to_json_dict(), "cloud": cloud.to_json_dict(), "radius": radius(cloud)}
    _emit(args, payload, to_csv,
          f"synthesize: {agg.verdict} over {len(graphs)} corners, S_c={agg.S_c},"
          f" cloud radius {radius(cloud):.6f}")
    return 0 if agg.certified else 2


def _cmd_numrange(args) -> int:
    graph, prm = _resolve(args)
    best, halves = graph_inscribed_disc(
        graph, _require_width(prm), prm["p"], prm["t"], prm["N"], prm["M"], prm["n"],
        include_phase=bool(getattr(args, "include_phase", False)),
    )
    payload = {
        "r_star": best.disc.r_star,
        "half": best.label,
        "C7": best.polygon.c7,
        "reason": best.disc.reason,
        "halves": [
            {"half": h.label, "r_star": h.disc.r_star, "reason": h.disc.reason,
             "polygon": h.polygon.to_json_dict()}
            for h in halves
        ],
    }
    _emit(args, payload, lambda fh: polygon_to_csv(best.polygon, fh),
          f"numrange: R*={best.disc.r_star} (half={best.label}, C7={best.polygon.c7})")
    return 0


def _cmd_cone_oracle(args) -> int:
    ys = np.linspace(-args.y_max, args.y_max, args.samples)
    pts = cone_exact_spectrum(args.mu, ys)
    r = cone_exact_radius(args.mu)
    payload = {"mu": args.mu, "radius": r,
               "points": [[float(z.real), float(z.imag)] for z in pts]}

    def to_csv(fh):
        fh.write("re,im\n")
        for z in pts:
            fh.write(f"{z.real!r},{z.imag!r}\n")

    _emit(args, payload, to_csv, f"cone-oracle: radius {r:.6f}")
    return 0


def _cmd_converge(args) -> int:
    graph, prm = _resolve(args)
    if getattr(args, "schedule", None):
        try:
            schedule = [int(v) for v in args.schedule.split(",")]
        except ValueError as exc:
            raise CliError(f"bad --schedule: {exc}") from exc
    else:
        start = 2 if graph.side.value == "two-sided" else 8
        schedule, n = [], start
        while n <= prm["N"]:
            schedule.append(n)
            n *= 2
    if not schedule:
        raise CliError("empty N schedule")
    rows = []
    width = _require_width(prm)
    strides = {}
    for n_quad in schedule:
        stride = _stride(prm["m"], _smoke_walk_cap(_graph_dim(graph, n_quad)), args.full)
        strides[n_quad] = stride
        cert = certify(graph, prm["rho0"], width, prm["m"], prm["M"], n_quad,
                       k_stride=stride, workers=prm["workers"])
        rows.append({"N": n_quad, "L_c": cert.L_c, "R_c": cert.R_c, "r_max": cert.r_max,
                     "verdict": cert.verdict, "k_stride": stride})
    crossed = next((row["N"] for row in rows
                    if row["R_c"] is not None and row["L_c"] is not None
                    and row["L_c"] < row["R_c"]), None)

    def to_csv(fh):
        fh.write("N,L_c,R_c,r_max,verdict,crossed\n")
        for row in rows:
            fh.write(f"{row['N']},{row['L_c']!r},{row['R_c']!r},{row['r_max']!r},"
                     f"{row['verdict']},{row['N'] == crossed}\n")

    payload = {"schedule": rows, "first_crossing_N": crossed, "k_strides": strides}
    _emit(args, payload, to_csv,
          f"converge: first N with L_c < R_c is {crossed}")
    return 0


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "certify": _cmd_certify,
    "synthesize": _cmd_synthesize,
    "numrange": _cmd_numrange,
    "cone-oracle": _cmd_cone_oracle,
    "converge": _cmd_converge,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: graph-info (trace ratios of a graph), qfi (quantum Fisher
information with a built-in cross-check), fi (homodyne Fisher information,
fixed angles or optimized), figure (scaling/saturation sweep tables as CSV),
and verify (randomized equivalence suites). Every subcommand accepts
--save-manifest to record the run; `cvgraphsense --manifest path` replays a
recorded run through the identical code path, reproducing byte-identical
output. Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import figures, oracle
from .gaussian import (graph_state_covariance, mean_photon_number,
                       squeeze_for_photon_budget)
from .graph import (EdgelessGraphError, adjacency_square_sum, chi_disp,
                    chi_phase, empty_graph, load_edge_list,
                    multipartite_graph, rectangular_graph, star_graph,
                    trace_power)
from .homodyne import fi_star_ansatz, optimize_angles, qfi_reference
from .qfi import (qfi_displacement, qfi_displacement_closed_form,
                  qfi_phase_closed_form, qfi_phase_generic)

CROSS_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class RunManifest:
    """Replayable record of one CLI invocation."""

    command: str
    parameters: dict
    output_path: str
    seed: int

    def to_dict(self):
        return asdict(self)

    @staticmethod
    def from_dict(d):
        return RunManifest(command=str(d["command"]), parameters=dict(d["parameters"]),
                           output_path=str(d.get("output_path", "")),
                           seed=int(d.get("seed", 0)))


@dataclass(frozen=True)
class FisherReport:
    """Scalar information value plus the configuration that produced it."""

    value: float
    modality: str
    graph: str
    n: int
    r: float
    n_bar: float
    phi: float
    alpha: float
    beta: float

    def to_dict(self):
        return asdict(self)


def _fmt(v):
    if isinstance(v, (list, tuple, np.ndarray)):
        return ";".join(_fmt(x) for x in v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return f"{float(v):.12g}"


def write_csv(columns, rows, stream):
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(row[c]) for c in columns) + "\n")


def _emit(payload, params, stream):
    """Print a mapping as JSON (default) or a one-row CSV table."""
    if params.get("csv"):
        write_csv(list(payload.keys()), [payload], stream)
    else:
        stream.write(json.dumps(payload, indent=2) + "\n")


def build_graph(params):
    if params.get("star") is not None:
        return star_graph(int(params["star"]))
    if params.get("multipartite") is not None:
        l, m = params["multipartite"]
        return multipartite_graph(int(l), int(m))
    if params.get("rectangular") is not None:
        return rectangular_graph(int(params["rectangular"]))
    if params.get("empty") is not None:
        return empty_graph(int(params["empty"]))
    if params.get("edges") is not None:
        return load_edge_list(params["edges"])
    raise ValueError("no graph specified")


def parse_f(spec, length):
    """Responsivity vector from a single float or a comma-separated list."""
    parts = [p for p in str(spec).split(",") if p.strip() != ""]
    if len(parts) == 1:
        return np.full(length, float(parts[0]))
    if len(parts) != length:
        raise ValueError(f"expected 1 or {length} responsivity entries, got {len(parts)}")
    return np.array([float(p) for p in parts])


def _resolve_r(g, params):
    if params.get("target_n") is not None:
        r = squeeze_for_photon_budget(g, float(params["target_n"]))
    else:
        r = float(params["r"])
    return r


def run_graph_info(params, stream):
    g = build_graph(params)
    t2 = trace_power(g, 2)
    t4 = trace_power(g, 4)
    payload = {
        "graph": g.label,
        "n": g.n,
        "edge_count": g.edge_count,
        "trace_A2": t2,
        "trace_A4": t4,
        "sum_A2": adjacency_square_sum(g),
    }
    try:
        payload["chi_phase"] = chi_phase(g)
        payload["chi_disp"] = chi_disp(g)
    except EdgelessGraphError:
        payload["chi_phase"] = "undefined"
        payload["chi_disp"] = "undefined"
    _emit(payload, params, stream)
    return 0


def run_qfi(params, stream):
    g = build_graph(params)
    modality = params["modality"]
    r = _resolve_r(g, params)
    state = graph_state_covariance(g, r)
    if modality == "phase":
        f = parse_f(params.get("f", "1"), g.n)
        closed = qfi_phase_closed_form(g, r, f)
        cross = qfi_phase_generic(state, f)
    else:
        f = parse_f(params.get("f", "1"), 2 * g.n)
        closed = qfi_displacement_closed_form(g, r, f)
        cross = qfi_displacement(state, f)
    diff = oracle.rel_error(closed, cross)
    payload = {
        "value": closed,
        "closed_form": closed,
        "cross_check": cross,
        "rel_difference": diff,
        "modality": modality,
        "graph": g.label,
        "n": g.n,
        "r": r,
        "N_bar": mean_photon_number(g, r),
        "f": list(f),
    }
    _emit(payload, params, stream)
    if diff > CROSS_CHECK_TOL:
        stream.write(f"cross-check failed: relative difference {diff:.3e}\n")
        return 1
    return 0


def run_fi(params, stream):
    g = build_graph(params)
    modality = params["modality"]
    r = _resolve_r(g, params)
    phi = float(params.get("phi", 0.0))
    length = g.n if modality == "phase" else 2 * g.n
    f = parse_f(params.get("f", "1"), length)
    if params.get("optimize"):
        alpha, beta, fi = optimize_angles(g, r, f, phi, modality)
    else:
        alpha = float(params["alpha"])
        beta = float(params["beta"])
        fi = fi_star_ansatz(g, r, f, phi, alpha, beta, modality)
    qfi = qfi_reference(g, r, f, modality)
    report = FisherReport(value=fi, modality=modality, graph=g.label, n=g.n,
                          r=r, n_bar=mean_photon_number(g, r), phi=phi,
                          alpha=alpha, beta=beta)
    payload = report.to_dict()
    payload["qfi"] = qfi
    payload["ratio"] = fi / qfi
    _emit(payload, params, stream)
    return 0


def run_figure(params, stream):
    name = params["name"]
    columns, rows, warnings = figures.figure_table(
        name, n_max=int(params.get("n_max", figures.DEFAULT_N_MAX)),
        ntilde_max=float(params.get("ntilde_max", 10.0)),
        phi=float(params.get("phi", 0.0)))
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    out_path = params.get("output") or ""
    if params.get("json"):
        text = json.dumps([{c: row[c] for c in columns} for row in rows], indent=2) + "\n"
    else:
        import io
        buf = io.StringIO()
        write_csv(columns, rows, buf)
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stream.write(text)
    return 0


def run_verify(params, stream):
    cases = int(params.get("cases", 200))
    if cases < 1:
        raise ValueError("--cases must be at least 1")
    seed = int(params.get("seed", 42))
    suite = params.get("suite", "all")
    if suite == "all":
        reports = oracle.run_all(cases, seed)
    elif suite in oracle.SUITES:
        reports = [oracle.SUITES[suite](cases, seed)]
    else:
        raise ValueError(f"unknown suite {suite!r}")
    stream.write(json.dumps([rep.to_dict() for rep in reports], indent=2) + "\n")
    return 0 if all(rep.passed for rep in reports) else 1


RUNNERS = {
    "graph-info": run_graph_info,
    "qfi": run_qfi,
    "fi": run_fi,
    "figure": run_figure,
    "verify": run_verify,
}

# parameters each command contributes to its manifest
_MANIFEST_KEYS = {
    "graph-info": ("star", "multipartite", "rectangular", "empty", "edges", "csv"),
    "qfi": ("modality", "star", "multipartite", "rectangular", "empty", "edges",
            "r", "target_n", "f", "csv"),
    "fi": ("modality", "star", "multipartite", "rectangular", "empty", "edges",
           "r", "target_n", "f", "phi", "alpha", "beta", "optimize", "csv"),
    "figure": ("name", "output", "n_max", "ntilde_max", "phi", "json"),
    "verify": ("suite", "cases", "seed"),
}


def _add_graph_args(sub):
    grp = sub.add_mutually_exclusive_group(required=True)
    grp.add_argument("--star", type=int, metavar="N")
    grp.add_argument("--multipartite", type=int, nargs=2, metavar=("L", "M"))
    grp.add_argument("--rectangular", type=int, metavar="M")
    grp.add_argument("--empty", type=int, metavar="N")
    grp.add_argument("--edges", metavar="PATH")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cvgraphsense",
        description="Fisher information of continuous-variable graph-state probes")
    parser.add_argument("--manifest", metavar="PATH",
                        help="replay a recorded run manifest")
    subs = parser.add_subparsers(dest="command")

    gi = subs.add_parser("graph-info", help="trace ratios and counts of a graph")
    _add_graph_args(gi)
    gi.add_argument("--csv", action="store_true")

    qf = subs.add_parser("qfi", help="quantum Fisher information with cross-check")
    qf.add_argument("modality", choices=("phase", "displacement"))
    _add_graph_args(qf)
    rgrp = qf.add_mutually_exclusive_group(required=True)
    rgrp.add_argument("--r", type=float)
    rgrp.add_argument("--target-N", dest="target_n", type=float)
    qf.add_argument("--f", default="1")
    qf.add_argument("--csv", action="store_true")

    fi = subs.add_parser("fi", help="homodyne Fisher information on a star graph")
    fi.add_argument("modality", choices=("phase", "displacement"))
    _add_graph_args(fi)
    rgrp = fi.add_mutually_exclusive_group(required=True)
    rgrp.add_argument("--r", type=float)
    rgrp.add_argument("--target-N", dest="target_n", type=float)
    fi.add_argument("--f", default="1")
    fi.add_argument("--phi", type=float, default=0.0)
    fi.add_argument("--alpha", type=float)
    fi.add_argument("--beta", type=float)
    fi.add_argument("--optimize", action="store_true")
    fi.add_argument("--csv", action="store_true")

    fg = subs.add_parser("figure", help="emit a sweep table")
    fg.add_argument("name", choices=("fig2", "fig3", "fig4", "fig5"))
    fg.add_argument("--output", metavar="PATH")
    fg.add_argument("--n-max", dest="n_max", type=int, default=figures.DEFAULT_N_MAX)
    fg.add_argument("--ntilde-max", dest="ntilde_max", type=float, default=10.0)
    fg.add_argument("--phi", type=float, default=0.0)
    fg.add_argument("--json", action="store_true")

    vf = subs.add_parser("verify", help="run randomized equivalence suites")
    vf.add_argument("suite", choices=("all",) + tuple(oracle.SUITES),
                    nargs="?", default="all")
    vf.add_argument("--cases", type=int, default=200)
    vf.add_argument("--seed", type=int, default=42)

    for sub in (gi, qf, fi, fg, vf):
        sub.add_argument("--save-manifest", dest="save_manifest", metavar="PATH")
    return parser


def _manifest_from_args(args):
    params = {}
    for key in _MANIFEST_KEYS[args.command]:
        val = getattr(args, key, None)
        if isinstance(val, tuple):
            val = list(val)
        params[key] = val
    seed = int(getattr(args, "seed", 0) or 0)
    output = getattr(args, "output", "") or ""
    return RunManifest(command=args.command, parameters=params,
                       output_path=output, seed=seed)


def _validate_fi_angles(args, parser):
    if args.command != "fi":
        return
    has_angles = args.alpha is not None or args.beta is not None
    if args.optimize and has_angles:
        parser.error("--optimize and --alpha/--beta are mutually exclusive")
    if not args.optimize:
        if args.alpha is None or args.beta is None:
            parser.error("provide both --alpha and --beta, or --optimize")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.manifest:
        try:
            with open(args.manifest, "r", encoding="utf-8") as fh:
                manifest = RunManifest.from_dict(json.load(fh))
        except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
            print(f"error: cannot load manifest: {exc}", file=sys.stderr)
            return 2
        if manifest.command not in RUNNERS:
            print(f"error: unknown manifest command {manifest.command!r}", file=sys.stderr)
            return 2
        try:
            return RUNNERS[manifest.command](dict(manifest.parameters), sys.stdout)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2

    if not args.command:
        parser.error("a subcommand or --manifest is required")
    _validate_fi_angles(args, parser)

    manifest = _manifest_from_args(args)
    if args.save_manifest:
        with open(args.save_manifest, "w", encoding="utf-8") as fh:
            json.dump(manifest.to_dict(), fh, indent=2)
            fh.write("\n")
    try:
        return RUNNERS[args.command](dict(manifest.parameters), sys.stdout)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()

"""``hyperheat`` command line: one subcommand per analysis, JSON or CSV on stdout or --out."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import fano as fano_mod
from .classify import classify, is_positive_generator
from .duality import (
    SimplicialComplex,
    face_label,
    graph_dual_report,
    hodge_laplacian,
    hypergraph_embedding,
)
from .formats import (
    FORMATS,
    InputError,
    dumps,
    fmt_float,
    hypergraph_to_json,
    parse_input,
    table_csv,
)
from .hypergraph import (
    DirectedHypergraph,
    HypergraphError,
    degree_profile,
    dual,
    dual_laplacian,
    incidence,
    is_equipotent,
    is_graph,
    laplacian,
)
from .plotting import PlottingUnavailable, gnuplot_script, plot_threshold, plot_trajectory
from .schemas import SCHEMA_VERSION
from .semigroup import (
    ENTRY_TOL,
    GRID_POINTS,
    NORM_TOL,
    default_domination_horizon,
    domination_gap,
    eventual_domination_threshold,
    heat_matrices,
    heat_trajectory,
    threshold_search,
)
from .spectra import (
    CLUSTER_TOL,
    eigenvalue_clusters,
    eigh,
    gershgorin_bounds,
    in_region,
    dms_inclusion_3x3,
    kernel_dim,
)
from .surgery import (
    MODES,
    VertexSubset,
    d_subhypergraph,
    dirichlet_laplacian,
    induced_subhypergraph,
    union_spectrum_verifier,
)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class UsageError(ValueError):
    """Bad option value; reported like an input error."""


# --------------------------------------------------------------------------
# argument helpers


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return x


def _nonneg(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (x >= 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {text!r}")
    return x


def _count(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return k


def _split(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def _vertex(h: DirectedHypergraph, token: str) -> int:
    """A vertex label, or failing that a 1-based position."""
    if token in h.vertices:
        return h.index(token)
    try:
        k = int(token)
    except ValueError:
        raise UsageError(f"unknown vertex {token!r}") from None
    if not 1 <= k <= h.n_vertices:
        raise UsageError(f"vertex position {k} out of range 1..{h.n_vertices}")
    return k - 1


def _initial_state(h: DirectedHypergraph, value: str) -> np.ndarray:
    n = h.n_vertices
    if value == "ones":
        return np.ones(n)
    if value.startswith("unit:"):
        u = np.zeros(n)
        u[_vertex(h, value[5:])] = 1.0
        return u
    path = Path(value)
    text = path.read_text(encoding="utf-8") if path.exists() else value
    try:
        vals = [float(x) for x in text.replace("\n", ",").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--u0: cannot read {value!r} as comma-separated numbers, 'ones' or 'unit:V'") from None
    if len(vals) != n:
        raise UsageError(f"--u0 has {len(vals)} entries, the hypergraph has {n} vertices")
    return np.array(vals)


def _load(args: argparse.Namespace, index: int = 0) -> Any:
    paths = args.input if isinstance(args.input, list) else [args.input]
    return parse_input(paths[index], args.format)


def _hypergraph(args: argparse.Namespace, index: int = 0) -> DirectedHypergraph:
    obj = _load(args, index)
    if not isinstance(obj, DirectedHypergraph):
        raise InputError("this command expects a hypergraph (json or incidence-csv), not a complex")
    return obj


def _report(command: str, result: dict) -> str:
    return dumps({"schema_version": SCHEMA_VERSION, "command": command, "result": result})


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# subcommands


def cmd_laplacian(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    p = degree_profile(h)
    return _report("laplacian", {
        "vertices": list(h.vertices),
        "incidence": incidence(h),
        "laplacian": laplacian(h),
        "degree": p.deg,
        "in_degree": p.deg_in,
        "out_degree": p.deg_out,
        "edge_degree": p.edge_deg,
        "equipotent": is_equipotent(h),
        "graph": is_graph(h),
    })


def cmd_spectrum(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    s = eigh(laplacian(h))
    return _report("spectrum", {
        "vertices": list(h.vertices),
        "eigenvalues": s.eigenvalues,
        "clusters": [{"value": c.value, "multiplicity": c.multiplicity} for c in eigenvalue_clusters(s)],
        "kernel_dim": kernel_dim(s) if s.n else 0,
        "zero_tol": s.zero_tol,
        "residual": s.residual,
        "eigenvectors": s.vectors.T if args.vectors else None,
    })


def cmd_classify(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    rep = classify(h, thresholds=not args.no_thresholds, horizon=args.horizon)
    return _report("classify", {"vertices": list(h.vertices), "classification": rep.as_dict(args.witnesses)})


def cmd_flow(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    if args.t1 < args.t0:
        raise UsageError("--t1 must not be smaller than --t0")
    u0 = _initial_state(h, args.u0)
    times = np.linspace(args.t0, args.t1, args.steps + 1)
    traj = heat_trajectory(eigh(laplacian(h)), u0, times)
    header = ["t"] + [f"u({v})" for v in h.vertices]
    rows = [[float(t)] + [float(x) for x in row] for t, row in zip(times, traj)]
    text = table_csv(header, rows)
    if args.plot:
        plot_trajectory(times, traj, h.vertices, args.plot)
    if args.gnuplot:
        csv_name = Path(args.out).name if args.out else "flow.csv"
        Path(args.gnuplot).write_text(gnuplot_script(csv_name, h.vertices), encoding="utf-8")
    return text


def cmd_threshold(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    s = eigh(laplacian(h))
    rep = threshold_search(s, args.property, args.horizon, args.tol)
    if args.plot and s.n:
        ts = np.linspace(0.0, rep.horizon, GRID_POINTS)
        mats = heat_matrices(s, ts)
        if args.property == "positivity":
            curve, level, label = mats.min(axis=(1, 2)), 0.0, "min entry of exp(-tL)"
        else:
            curve, level, label = np.abs(mats).sum(axis=2).max(axis=1), 1.0, "||exp(-tL)||_inf"
        plot_threshold(ts, curve, level, rep.t0, label, args.plot)
    return _report("threshold", {"vertices": list(h.vertices), "threshold": rep.as_dict(), "plot": args.plot})


def cmd_dual(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    a = eigh(laplacian(h)).eigenvalues
    b = eigh(dual_laplacian(h)).eigenvalues
    tol = CLUSTER_TOL
    nz_a, nz_b = a[a > tol], b[b > tol]
    shared = nz_a.shape == nz_b.shape and bool(np.allclose(nz_a, nz_b, atol=tol, rtol=0))
    return _report("dual", {
        "dual": hypergraph_to_json(dual(h)),
        "dual_laplacian": dual_laplacian(h),
        "nonzero_spectrum_shared": shared,
    })


def cmd_dirichlet(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    keep = VertexSubset(h.n_vertices, tuple(_vertex(h, v) for v in _split(args.keep)))
    d_sub = d_subhypergraph(h, keep)
    induced = induced_subhypergraph(h, keep)
    lap_d = laplacian(d_sub)
    return _report("dirichlet", {
        "keep": [h.vertices[v] for v in keep.members],
        "dirichlet_laplacian": dirichlet_laplacian(h, keep),
        "d_subhypergraph": hypergraph_to_json(d_sub),
        "d_subhypergraph_laplacian": lap_d,
        "induced_subhypergraph": hypergraph_to_json(induced),
        "induced_laplacian": laplacian(induced),
        "d_subhypergraph_positive": is_positive_generator(d_sub)[0],
        "eigenvalues": eigh(lap_d).eigenvalues,
    })


def cmd_union_lemma(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    sources = [_vertex(h, v) for v in _split(args.sources)] if args.sources else None
    rep = union_spectrum_verifier(h, args.mode, sources)
    return _report("union-lemma", {**rep.as_dict(), "union": hypergraph_to_json(rep.union)})


def cmd_hodge(args: argparse.Namespace) -> str:
    k = _load(args)
    if not isinstance(k, SimplicialComplex):
        raise InputError("hodge expects a complex-json input with 'maximal_faces'")
    i = args.degree
    lap = hodge_laplacian(k, i)
    emb = hypergraph_embedding(k, i)
    d = dual(emb)
    rep = classify(d, thresholds=True)
    return _report("hodge", {
        "degree": i,
        "faces": [face_label(f) for f in k.faces[i]],
        "hodge_laplacian": lap,
        "embedding": hypergraph_to_json(emb),
        "matches_embedding_dual": bool(np.array_equal(lap, dual_laplacian(emb))),
        "eigenvalues": rep.eigenvalues,
        "classification": rep.as_dict(args.witnesses),
    })


def cmd_graph_dual(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    return _report("graph-dual", graph_dual_report(h).as_dict())


def _fano_table(classes: list[fano_mod.FanoClass], with_flags: bool) -> str:
    names = sorted(classes[0].flags) if with_flags and classes else []
    header = ["key", "size", "representative_mask", "laplacian_upper", "eigenvalues"] + names
    rows = []
    for c in classes:
        upper = "".join("+" if x > 0 else "-" for x in c.matrix[np.triu_indices(7, 1)])
        row: list[Any] = [c.digest, c.size, c.representative, upper,
                          ";".join(fmt_float(x) for x in c.eigenvalues)]
        rows.append(row + [int(c.flags[n]) for n in names])
    return table_csv(header, rows)


def cmd_fano(args: argparse.Namespace) -> str:
    if args.summary and not args.classify:
        raise UsageError("--summary needs --classify")
    classes = fano_mod.permutation_classes(classify=args.classify)
    if args.summary:
        rep = fano_mod.verify_fano_universal_negatives(classes)
        Path(args.summary).write_text(_report("fano", rep.as_dict()), encoding="utf-8")
    return _fano_table(classes, args.classify)


def cmd_bounds(args: argparse.Namespace) -> str:
    h = _hypergraph(args)
    lap = laplacian(h)
    s = eigh(lap)
    b = gershgorin_bounds(h)
    lo, hi = b.admissible()
    contained = bool(np.all((s.eigenvalues >= lo - CLUSTER_TOL) & (s.eigenvalues <= hi + CLUSTER_TOL)))
    dms = None
    if h.n_vertices == 3:
        dms = dms_inclusion_3x3(lap)
        contained = contained and all(in_region(x, dms) for x in s.eigenvalues)
    return _report("bounds", {
        "eigenvalues": s.eigenvalues,
        "gershgorin": b.as_dict(),
        "admissible": [lo, hi],
        "contained": contained,
        "dms": None if dms is None else [list(iv) for iv in dms],
    })


def cmd_dominate(args: argparse.Namespace) -> str:
    if len(args.input) != 2:
        raise UsageError("dominate needs exactly two --input files: the dominating one first")
    a, b = _hypergraph(args, 0), _hypergraph(args, 1)
    if a.n_vertices != b.n_vertices:
        raise UsageError(f"vertex counts differ: {a.n_vertices} vs {b.n_vertices}")
    sa, sb = eigh(laplacian(a)), eigh(laplacian(b))
    tol = ENTRY_TOL if args.tol is None else args.tol
    horizon = args.horizon or default_domination_horizon(sa, sb)
    rep = eventual_domination_threshold(sa, sb, horizon, tol)
    checks = []
    if args.at:
        ts = np.array(args.at, dtype=float)
        gaps = domination_gap(sa, sb, ts)
        checks = [{"t": float(t), "dominates": bool(g >= -tol), "gap": float(g)} for t, g in zip(ts, gaps)]
    return _report("dominate", {
        "vertices": list(a.vertices),
        "lambda1": [sa.lambda1 if sa.n else 0.0, sb.lambda1 if sb.n else 0.0],
        "threshold": rep.as_dict(),
        "checks": checks,
    })


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperheat",
        description="Laplacians, heat semigroups and positivity properties of directed hypergraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func, help_text: str, *, needs_input: bool = True, multi: bool = False):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if needs_input:
            if multi:
                p.add_argument("--input", action="append", required=True, help="input file (repeatable)")
            else:
                p.add_argument("--input", required=True, help="input file")
            p.add_argument("--format", choices=FORMATS, default=None,
                           help="input format (default: from extension and content)")
        p.add_argument("--out", help="write the main output here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("laplacian", cmd_laplacian, "incidence matrix, Laplacian and degrees")

    p = add("spectrum", cmd_spectrum, "Laplacian eigenvalues, clusters and kernel dimension")
    p.add_argument("--vectors", action="store_true", help="include eigenvectors (one row per eigenvalue)")

    p = add("classify", cmd_classify, "positivity, contractivity and asymptotic flags")
    p.add_argument("--witnesses", action="store_true", help="attach a witness to every flag")
    p.add_argument("--horizon", type=_positive, help="time horizon for threshold searches")
    p.add_argument("--no-thresholds", action="store_true", help="skip threshold searches")

    p = add("flow", cmd_flow, "heat trajectory u(t) = exp(-tL) u0 as CSV")
    p.add_argument("--t0", type=_nonneg, default=0.0)
    p.add_argument("--t1", type=_nonneg, default=5.0)
    p.add_argument("--steps", type=_count, default=100, help="number of time intervals")
    p.add_argument("--u0", default="ones",
                   help="'ones', 'unit:V' (label or 1-based position), comma-separated values or a file")
    p.add_argument("--plot", help="also render the curves to this PNG file")
    p.add_argument("--gnuplot", help="also write a gnuplot script for the CSV")

    p = add("threshold", cmd_threshold, "time after which the semigroup stays positive or contractive")
    p.add_argument("--property", choices=("positivity", "inf_contractivity"), default="positivity")
    p.add_argument("--horizon", type=_positive)
    p.add_argument("--tol", type=_positive, help=f"entry tolerance (default {ENTRY_TOL:g}, norm {NORM_TOL:g})")
    p.add_argument("--plot", help="render the monitored quantity to this PNG file")

    add("dual", cmd_dual, "dual hypergraph and its Laplacian")

    p = add("dirichlet", cmd_dirichlet, "Dirichlet Laplacian, D-sub-hypergraph and induced sub-hypergraph")
    p.add_argument("--keep", required=True, help="comma-separated vertices to keep")

    p = add("union-lemma", cmd_union_lemma, "spectrum of a graph plus one full hyperedge")
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--sources", help="comma-separated source side of the full hyperedge")

    p = add("hodge", cmd_hodge, "Hodge Laplacian of a simplicial complex via its hypergraph embedding")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--witnesses", action="store_true")

    add("graph-dual", cmd_graph_dual, "kernel, stability and positivity of a graph's dual")

    p = add("fano", cmd_fano, "enumerate every oriented Fano plane", needs_input=False)
    p.add_argument("action", choices=("enumerate",))
    p.add_argument("--classify", action="store_true", help="add a 0/1 column per property flag")
    p.add_argument("--summary", help="with --classify: write the JSON enumeration summary here")

    add("bounds", cmd_bounds, "Gershgorin-type eigenvalue bounds and their containment check")

    p = add("dominate", cmd_dominate, "eventual domination of the second semigroup by the first", multi=True)
    p.add_argument("--horizon", type=_positive)
    p.add_argument("--tol", type=_positive)
    p.add_argument("--at", type=_nonneg, action="append", help="also test domination at this time (repeatable)")
    return parser


def _fail(command: str | None, kind: str, message: str, code: int) -> int:
    sys.stderr.write(dumps({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": {"kind": kind, "message": message},
    }))
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        text = args.func(args)
        _emit(args, text)
    except (InputError, HypergraphError, UsageError) as exc:
        return _fail(args.command, "input_error", str(exc), EXIT_INPUT)
    except PlottingUnavailable as exc:
        return _fail(args.command, "input_error", str(exc), EXIT_INPUT)
    except (ArithmeticError, np.linalg.LinAlgError, ValueError) as exc:
        return _fail(args.command, "numeric_failure", f"{type(exc).__name__}: {exc}", EXIT_NUMERIC)
    except OSError as exc:
        return _fail(args.command, "input_error", f"{exc.filename}: {exc.strerror}", EXIT_INPUT)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

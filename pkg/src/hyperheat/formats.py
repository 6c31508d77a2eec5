"""Reading and writing hypergraph JSON, incidence CSV and simplicial-complex JSON."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .duality import SimplicialComplex, closure
from .hypergraph import DirectedHypergraph, HypergraphError, Hyperedge, incidence

FORMATS = ("json", "incidence-csv", "complex-json")


class InputError(ValueError):
    """Malformed input file; the message names the offending field or line."""


# --------------------------------------------------------------------------
# hypergraph JSON


def hypergraph_from_json(obj: Any) -> DirectedHypergraph:
    if not isinstance(obj, dict):
        raise InputError("top level: expected an object with 'vertices' and 'hyperedges'")
    for key in ("vertices", "hyperedges"):
        if key not in obj:
            raise InputError(f"missing field '{key}'")
    verts = obj["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, (str, int)) for v in verts):
        raise InputError("field 'vertices': expected a list of labels")
    labels = [str(v) for v in verts]
    if len(set(labels)) != len(labels):
        raise InputError("field 'vertices': labels must be distinct")
    pos = {v: k for k, v in enumerate(labels)}
    edges = obj["hyperedges"]
    if not isinstance(edges, list):
        raise InputError("field 'hyperedges': expected a list")
    out = []
    for k, e in enumerate(edges):
        if not isinstance(e, dict):
            raise InputError(f"hyperedges[{k}]: expected an object with 'sources' and 'targets'")
        sides = []
        for side in ("sources", "targets"):
            members = e.get(side, [])
            if not isinstance(members, list):
                raise InputError(f"hyperedges[{k}].{side}: expected a list of vertex labels")
            idx = []
            for v in members:
                if str(v) not in pos:
                    raise InputError(f"hyperedges[{k}].{side}: unknown vertex {v!r}")
                idx.append(pos[str(v)])
            if len(set(idx)) != len(idx):
                raise InputError(f"hyperedges[{k}].{side}: repeated vertex")
            sides.append(idx)
        shared = set(sides[0]) & set(sides[1])
        if shared:
            names = sorted(labels[v] for v in shared)
            raise InputError(f"hyperedge {k}: {names} listed as both source and target")
        out.append(Hyperedge.of(*sides))
    try:
        return DirectedHypergraph(tuple(labels), tuple(out))
    except HypergraphError as exc:
        raise InputError(str(exc)) from exc


def hypergraph_to_json(h: DirectedHypergraph) -> dict:
    return {
        "vertices": list(h.vertices),
        "hyperedges": [
            {
                "sources": [h.vertices[v] for v in sorted(e.sources)],
                "targets": [h.vertices[v] for v in sorted(e.targets)],
            }
            for e in h.hyperedges
        ],
    }


# --------------------------------------------------------------------------
# incidence CSV


def _is_int(text: str) -> bool:
    try:
        int(text.strip())
        return True
    except ValueError:
        return False


def hypergraph_from_csv(text: str) -> DirectedHypergraph:
    """Dense incidence CSV; an optional header row and label column are detected."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise InputError("incidence CSV is empty")
    if not all(_is_int(c) for c in rows[0]):
        rows = rows[1:]
    labelled = bool(rows) and not _is_int(rows[0][0])
    labels = []
    values = []
    for line, r in enumerate(rows, start=1):
        cells = r[1:] if labelled else r
        if labelled:
            labels.append(r[0].strip())
        try:
            nums = [int(c.strip()) for c in cells]
        except ValueError:
            raise InputError(f"incidence CSV row {line}: non-integer entry") from None
        bad = [x for x in nums if x not in (-1, 0, 1)]
        if bad:
            raise InputError(f"incidence CSV row {line}: entry {bad[0]} not in {{-1, 0, 1}}")
        values.append(nums)
    widths = {len(v) for v in values}
    if len(widths) > 1:
        raise InputError("incidence CSV rows have different lengths")
    width = widths.pop() if widths else 0
    m = np.array(values, dtype=np.int64).reshape(len(values), width)
    try:
        return DirectedHypergraph.from_incidence(m, labels if labelled else None)
    except HypergraphError as exc:
        raise InputError(str(exc)) from exc


def hypergraph_to_csv(h: DirectedHypergraph) -> str:
    m = incidence(h)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["vertex"] + [f"e{j + 1}" for j in range(h.n_edges)])
    for label, row in zip(h.vertices, m):
        w.writerow([label] + [int(x) for x in row])
    return buf.getvalue()


# --------------------------------------------------------------------------
# complex JSON


def complex_from_json(obj: Any) -> SimplicialComplex:
    if not isinstance(obj, dict) or "maximal_faces" not in obj:
        raise InputError("complex JSON needs a 'maximal_faces' field")
    faces = obj["maximal_faces"]
    if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
        raise InputError("field 'maximal_faces': expected a list of vertex lists")
    n = obj.get("n")
    if n is not None and (not isinstance(n, int) or n < 0):
        raise InputError("field 'n': expected a nonnegative integer")
    for k, f in enumerate(faces):
        if not all(isinstance(v, int) for v in f):
            raise InputError(f"maximal_faces[{k}]: vertices must be integers")
    try:
        return closure(faces, n)
    except HypergraphError as exc:
        raise InputError(str(exc)) from exc


def complex_to_json(k: SimplicialComplex) -> dict:
    covered: set = set()
    tops = []
    for i in range(k.dim, -1, -1):
        for f in k.faces[i]:
            if f not in covered:
                tops.append(list(f))
            for j in range(len(f)):
                covered.add(f[:j] + f[j + 1:])
            covered.add(f)
    # every face of a chosen maximal face is covered; recompute faithfully
    maximal = [f for f in tops if not any(set(f) < set(g) for g in tops)]
    return {"n": k.n, "maximal_faces": sorted(maximal, key=lambda f: (len(f), f))}


# --------------------------------------------------------------------------
# dispatch


def detect_format(path: Path, text: str) -> str:
    if path.suffix.lower() == ".csv":
        return "incidence-csv"
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        return "incidence-csv"
    if isinstance(obj, dict) and "maximal_faces" in obj:
        return "complex-json"
    return "json"


def parse_text(text: str, fmt: str) -> DirectedHypergraph | SimplicialComplex:
    if fmt == "incidence-csv":
        return hypergraph_from_csv(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if fmt == "json":
        return hypergraph_from_json(obj)
    if fmt == "complex-json":
        return complex_from_json(obj)
    raise InputError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def parse_input(path: str | Path, fmt: str | None = None) -> DirectedHypergraph | SimplicialComplex:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror}") from None
    return parse_text(text, fmt or detect_format(p, text))


# --------------------------------------------------------------------------
# output helpers


def fmt_float(x: float) -> str:
    """17 significant digits, '.' decimal separator, no negative zero."""
    x = float(x)
    if x == 0:
        x = 0.0
    if math.isnan(x) or math.isinf(x):
        return repr(x)
    return f"{x:.17g}"


def plain(obj: Any) -> Any:
    """Convert numpy containers and scalars to JSON-ready Python values."""
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return 0.0 if f == 0 else f
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(plain(obj), indent=2, allow_nan=False) + "\n"


def table_csv(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt_float(x) if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()

"""JSON Schemas (draft 2020-12) for every report the CLI prints."""

from __future__ import annotations

import copy

from .classify import FLAG_NAMES

SCHEMA_VERSION = 1

_num = {"type": "number"}
_int = {"type": "integer"}
_bool = {"type": "boolean"}
_str = {"type": "string"}
_vec = {"type": "array", "items": _num}
_mat = {"type": "array", "items": _vec}
_imat = {"type": "array", "items": {"type": "array", "items": _int}}
_labels = {"type": "array", "items": _str}
_interval = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}
_nullable_num = {"type": ["number", "null"]}


def _obj(props: dict, required: list[str] | None = None, extra: bool = False) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": extra,
    }


HYPERGRAPH = _obj({
    "vertices": _labels,
    "hyperedges": {"type": "array", "items": _obj({"sources": _labels, "targets": _labels})},
})

THRESHOLD = _obj({
    "property": {"enum": ["positivity", "inf_contractivity", "domination"]},
    "t0": _nullable_num,
    "bracket": {"oneOf": [_interval, {"type": "null"}]},
    "horizon": _num,
    "entry_tol": _num,
    "certified_tail": _bool,
    "holds_at_zero": _bool,
})

FLAG = _obj({"value": _bool, "witness": {}}, required=["value"])

CLASSIFICATION = _obj({
    "flags": _obj({k: FLAG for k in FLAG_NAMES}),
    "eigenvalues": _vec,
    "thresholds": {"type": "object", "additionalProperties": THRESHOLD},
})

RESULTS: dict[str, dict] = {
    "laplacian": _obj({
        "vertices": _labels,
        "incidence": _imat,
        "laplacian": _imat,
        "degree": {"type": "array", "items": _int},
        "in_degree": {"type": "array", "items": _int},
        "out_degree": {"type": "array", "items": _int},
        "edge_degree": {"type": "array", "items": _int},
        "equipotent": _bool,
        "graph": _bool,
    }),
    "spectrum": _obj({
        "vertices": _labels,
        "eigenvalues": _vec,
        "clusters": {"type": "array", "items": _obj({"value": _num, "multiplicity": _int})},
        "kernel_dim": _int,
        "zero_tol": _num,
        "residual": _num,
        "eigenvectors": {"oneOf": [_mat, {"type": "null"}]},
    }),
    "classify": _obj({"vertices": _labels, "classification": CLASSIFICATION}),
    "threshold": _obj({"vertices": _labels, "threshold": THRESHOLD, "plot": {"type": ["string", "null"]}}),
    "dual": _obj({
        "dual": HYPERGRAPH,
        "dual_laplacian": _imat,
        "nonzero_spectrum_shared": _bool,
    }),
    "dirichlet": _obj({
        "keep": _labels,
        "dirichlet_laplacian": _imat,
        "d_subhypergraph": HYPERGRAPH,
        "d_subhypergraph_laplacian": _imat,
        "induced_subhypergraph": HYPERGRAPH,
        "induced_laplacian": _imat,
        "d_subhypergraph_positive": _bool,
        "eigenvalues": _vec,
    }),
    "union-lemma": _obj({
        "mode": _str,
        "union": HYPERGRAPH,
        "eigenvalues": _vec,
        "predicted": {"oneOf": [_vec, {"type": "null"}]},
        "components": _int,
        "kernel_dim": _int,
        "kernel_vector": {"oneOf": [_vec, {"type": "null"}]},
        "holds": _bool,
    }),
    "hodge": _obj({
        "degree": _int,
        "faces": _labels,
        "hodge_laplacian": _imat,
        "embedding": HYPERGRAPH,
        "matches_embedding_dual": _bool,
        "eigenvalues": _vec,
        "classification": CLASSIFICATION,
    }),
    "graph-dual": _obj({
        "kernel_dim": _int,
        "cyclomatic": _int,
        "cyclomatic_identity": _bool,
        "components": _int,
        "exponentially_stable": _bool,
        "forest": _bool,
        "deg_max": _int,
        "positive_as_given": _bool,
        "positive_orientation_exists": _bool,
        "coherent_orientation": {"oneOf": [{"type": "array"}, {"type": "null"}]},
        "sub_markovian": _bool,
        "stochastic": _bool,
        "eigenvalues": _vec,
        "lowest_projector_min": _num,
        "lowest_projector_norm": _num,
    }),
    "fano": _obj({
        "realisations": _int,
        "distinct_laplacians": _int,
        "positive": _int,
        "inf_contractive": _int,
        "classes": _int,
        "class_counts": {"type": "object", "additionalProperties": _int},
        "realisation_counts": {"type": "object", "additionalProperties": _int},
    }),
    "bounds": _obj({
        "eigenvalues": _vec,
        "gershgorin": _obj({
            "vertex_interval": _interval,
            "edge_upper": _num,
            "raw_interval": _interval,
            "dual_raw_upper": _num,
            "stable_by_rows": _bool,
            "stable_by_edge_degrees": _bool,
        }),
        "admissible": _interval,
        "contained": _bool,
        "dms": {"oneOf": [{"type": "array", "items": _interval}, {"type": "null"}]},
    }),
    "dominate": _obj({
        "vertices": _labels,
        "lambda1": _interval,
        "threshold": THRESHOLD,
        "checks": {"type": "array", "items": _obj({"t": _num, "dominates": _bool, "gap": _num})},
    }),
}

ERROR = _obj({
    "schema_version": {"const": SCHEMA_VERSION},
    "command": {"type": ["string", "null"]},
    "error": _obj({"kind": {"enum": ["input_error", "numeric_failure"]}, "message": _str}),
})


def report_schema(command: str) -> dict:
    """Envelope schema for one subcommand's JSON output."""
    if command not in RESULTS:
        raise KeyError(command)
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": f"hyperheat {command} report",
        **_obj({
            "schema_version": {"const": SCHEMA_VERSION},
            "command": {"const": command},
            "result": copy.deepcopy(RESULTS[command]),
        }),
    }


def error_schema() -> dict:
    return {"$schema": "https://json-schema.org/draft/2020-12/schema", **copy.deepcopy(ERROR)}

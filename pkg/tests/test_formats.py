import json
from pathlib import Path

import numpy as np
import pytest

from hyperheat import gallery
from hyperheat.duality import closure
from hyperheat.formats import (
    InputError,
    complex_from_json,
    complex_to_json,
    detect_format,
    dumps,
    fmt_float,
    hypergraph_from_csv,
    hypergraph_from_json,
    hypergraph_to_csv,
    hypergraph_to_json,
    parse_input,
    parse_text,
    plain,
    table_csv,
)
from hyperheat.hypergraph import incidence, laplacian

GALLERY = [
    gallery.one_to_two(),
    gallery.two_to_two_with_pendant(),
    gallery.kernel_positive_mixed(),
    gallery.full_hyperedge(4),
    gallery.signless_class(3),
    gallery.directed_cycle(5),
]


@pytest.mark.parametrize("h", GALLERY)
def test_json_round_trip(h):
    text = json.dumps(hypergraph_to_json(h))
    assert hypergraph_from_json(json.loads(text)) == h


@pytest.mark.parametrize("h", GALLERY)
def test_csv_round_trip(h):
    back = hypergraph_from_csv(hypergraph_to_csv(h))
    assert back.vertices == h.vertices
    assert np.array_equal(incidence(back), incidence(h))


def test_csv_without_header_or_labels():
    h = hypergraph_from_csv("-1\n1\n1\n")
    assert h.vertices == ("v1", "v2", "v3")
    assert laplacian(h).tolist() == laplacian(gallery.one_to_two()).tolist()


def test_fano_csv_fixture(data_dir):
    h = parse_input(data_dir / "fano_base.csv")
    assert h.n_vertices == 7 and h.n_edges == 7
    assert int(np.trace(laplacian(h))) == 21


@pytest.mark.parametrize("text,needle", [
    ("", "empty"),
    ("a,b\nv1,2\n", "not in"),
    ("a,b\nv1,x\n", "non-integer"),
    ("1,0\n1\n", "different lengths"),
])
def test_csv_errors(text, needle):
    with pytest.raises(InputError, match=needle):
        hypergraph_from_csv(text)


@pytest.mark.parametrize("obj,needle", [
    ([], "top level"),
    ({"vertices": ["a"]}, "hyperedges"),
    ({"vertices": ["a", "a"], "hyperedges": []}, "distinct"),
    ({"vertices": ["a"], "hyperedges": [{"sources": ["b"]}]}, "unknown vertex"),
    ({"vertices": ["a"], "hyperedges": [{"sources": ["a", "a"]}]}, "repeated"),
    ({"vertices": ["a"], "hyperedges": [{"sources": "a"}]}, r"hyperedges\[0\]\.sources"),
    ({"vertices": ["a"], "hyperedges": [3]}, r"hyperedges\[0\]"),
])
def test_json_errors_name_the_field(obj, needle):
    with pytest.raises(InputError, match=needle):
        hypergraph_from_json(obj)


def test_overlap_fixture_names_the_vertex(data_dir):
    with pytest.raises(InputError, match=r"\['a'\].*both source and target"):
        parse_input(data_dir / "bad_overlap.json")


def test_invalid_json_reports_position():
    with pytest.raises(InputError, match="line 1, column"):
        parse_text("{", "json")


def test_unreadable_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        parse_input(tmp_path / "missing.json")


def test_complex_round_trip():
    k = closure([(0, 1, 2), (1, 2, 3), (1, 3, 4)], n=5)
    obj = complex_to_json(k)
    assert obj == {"n": 5, "maximal_faces": [[0, 1, 2], [1, 2, 3], [1, 3, 4]]}
    assert complex_from_json(obj) == k
    mixed = closure([(0, 1, 2), (2, 3)], n=5)
    assert complex_from_json(complex_to_json(mixed)) == mixed


@pytest.mark.parametrize("obj", [{}, {"maximal_faces": 3}, {"maximal_faces": [["a"]]},
                                 {"maximal_faces": [[0]], "n": -1}, {"maximal_faces": [[1, 0]]}])
def test_complex_errors(obj):
    with pytest.raises(InputError):
        complex_from_json(obj)


def test_detect_format():
    assert detect_format(Path("x.csv"), "{}") == "incidence-csv"
    assert detect_format(Path("x.json"), '{"maximal_faces": []}') == "complex-json"
    assert detect_format(Path("x.json"), '{"vertices": []}') == "json"
    assert detect_format(Path("x.txt"), "1,0\n") == "incidence-csv"


def test_unknown_format():
    with pytest.raises(InputError, match="unknown format"):
        parse_text("{}", "yaml")


def test_fmt_float():
    assert fmt_float(0.1) == "0.10000000000000001"
    assert fmt_float(-0.0) == "0"
    assert fmt_float(2.0) == "2"
    assert float(fmt_float(1 / 3)) == 1 / 3
    assert fmt_float(float("inf")) == "inf"


def test_plain_and_dumps():
    obj = {"a": np.arange(3), "b": np.float64(-0.0), "c": np.bool_(True), 1: (np.int32(4),)}
    assert plain(obj) == {"a": [0, 1, 2], "b": 0.0, "c": True, "1": [4]}
    text = dumps(obj)
    assert text.endswith("\n") and json.loads(text)["c"] is True
    with pytest.raises(ValueError):
        dumps({"x": float("nan")})


def test_table_csv_formats_floats_only():
    text = table_csv(["t", "k"], [[0.5, 3], [np.float64(1 / 3), 4]])
    assert text == "t,k\n0.5,3\n0.33333333333333331,4\n"

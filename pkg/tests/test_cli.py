import csv
import io
import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from hyperheat.cli import EXIT_INPUT, EXIT_NUMERIC, EXIT_OK, main
from hyperheat.schemas import RESULTS, error_schema, report_schema


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_OK, err
    doc = json.loads(out)
    jsonschema.validate(doc, report_schema(argv[0]))
    return doc["result"]


def error(capsys, code_expected, *argv):
    code, out, err = run(capsys, *argv)
    assert code == code_expected and out == ""
    doc = json.loads(err)
    jsonschema.validate(doc, error_schema())
    return doc["error"]


def test_every_schema_is_valid():
    for name in RESULTS:
        jsonschema.Draft202012Validator.check_schema(report_schema(name))
    jsonschema.Draft202012Validator.check_schema(error_schema())


def test_laplacian(capsys, data_dir):
    r = report(capsys, "laplacian", "--input", data_dir / "one_to_two.json")
    assert r["laplacian"] == [[1, -1, -1], [-1, 1, 1], [-1, 1, 1]]
    assert r["incidence"] == [[-1], [1], [1]]
    assert not r["equipotent"] and not r["graph"]


def test_laplacian_from_csv(capsys, data_dir):
    r = report(capsys, "laplacian", "--input", data_dir / "fano_base.csv")
    assert r["laplacian"] == (2 * np.eye(7, dtype=int) + 1).tolist()


def test_spectrum(capsys, data_dir):
    r = report(capsys, "spectrum", "--input", data_dir / "decorated.json", "--vectors")
    assert np.allclose(r["eigenvalues"], [0, 2, 3], atol=1e-12)
    assert r["kernel_dim"] == 1
    assert np.allclose(r["eigenvectors"][0], np.array([2, 1, 1]) / np.sqrt(6), atol=1e-12)
    r = report(capsys, "spectrum", "--input", data_dir / "decorated.json")
    assert r["eigenvectors"] is None


def test_classify(capsys, data_dir):
    r = report(capsys, "classify", "--input", data_dir / "kernel_positive_mixed.json", "--witnesses")
    c = r["classification"]
    assert not c["flags"]["positive"]["value"] and c["flags"]["eventually_irreducible"]["value"]
    assert c["thresholds"]["positivity"]["t0"] == pytest.approx(1.216, abs=5e-3)
    r = report(capsys, "classify", "--input", data_dir / "empty.json", "--no-thresholds")
    assert r["classification"]["thresholds"] == {}


def test_flow_csv(capsys, data_dir):
    code, out, _ = run(capsys, "flow", "--input", data_dir / "one_to_two.json", "--t1", "1", "--steps", "4",
                       "--u0", "unit:v2")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["t", "u(v1)", "u(v2)", "u(v3)"]
    assert len(rows) == 6
    t, *u = map(float, rows[-1])
    e = np.exp(-3 * t)
    assert np.allclose(u, [(1 - e) / 3, (2 + e) / 3, (e - 1) / 3], atol=1e-14)


def test_flow_u0_variants(capsys, data_dir, tmp_path):
    f = tmp_path / "u0.txt"
    f.write_text("1\n0\n0\n")
    a = run(capsys, "flow", "--input", data_dir / "path3.json", "--u0", str(f))[1]
    b = run(capsys, "flow", "--input", data_dir / "path3.json", "--u0", "1,0,0")[1]
    c = run(capsys, "flow", "--input", data_dir / "path3.json", "--u0", "unit:1")[1]
    assert a == b == c


def test_flow_outputs_are_byte_identical(capsys, data_dir, tmp_path):
    argv = ["flow", "--input", data_dir / "kernel_positive_mixed.json", "--steps", "50"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    out = tmp_path / "flow.csv"
    assert run(capsys, *argv, "--out", out)[1] == ""
    assert out.read_text() == first


def test_flow_plot_and_gnuplot(capsys, data_dir, tmp_path):
    png, gp, out = tmp_path / "f.png", tmp_path / "f.gp", tmp_path / "f.csv"
    code, _, err = run(capsys, "flow", "--input", data_dir / "path3.json", "--plot", png, "--gnuplot", gp,
                       "--out", out)
    assert code == EXIT_OK, err
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    script = gp.read_text()
    assert "f.csv" in script and "using 1:4" in script and "columnhead" in script


def test_threshold(capsys, data_dir, tmp_path):
    png = tmp_path / "t.png"
    r = report(capsys, "threshold", "--input", data_dir / "kernel_positive_mixed.json", "--plot", png)
    assert r["threshold"]["t0"] == pytest.approx(1.216, abs=5e-3)
    assert png.stat().st_size > 0
    r = report(capsys, "threshold", "--input", data_dir / "path_with_full.json", "--property", "inf_contractivity")
    assert r["threshold"]["property"] == "inf_contractivity"


def test_dual(capsys, data_dir):
    r = report(capsys, "dual", "--input", data_dir / "p4.json")
    assert r["dual_laplacian"] == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    assert r["nonzero_spectrum_shared"]


def test_dirichlet(capsys, data_dir):
    r = report(capsys, "dirichlet", "--input", data_dir / "two_to_two_pendant.json", "--keep", "v2,v3,v5")
    assert r["dirichlet_laplacian"] == [
        [0, 0, 0, 0, 0], [0, 1, -1, 0, 0], [0, -1, 2, 0, -1], [0, 0, 0, 0, 0], [0, 0, -1, 0, 1]]
    assert r["d_subhypergraph_laplacian"] == [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]
    assert r["keep"] == ["v2", "v3", "v5"]


def test_union_lemma(capsys, data_dir):
    r = report(capsys, "union-lemma", "--input", data_dir / "p4.json", "--mode", "equipotent_half",
               "--sources", "v1,v2")
    assert r["holds"] and r["kernel_dim"] == 1


def test_hodge(capsys, data_dir):
    r = report(capsys, "hodge", "--input", data_dir / "triangle2.json", "--degree", "1")
    assert r["hodge_laplacian"] == (3 * np.eye(3, dtype=int)).tolist()
    assert r["matches_embedding_dual"]
    r = report(capsys, "hodge", "--input", data_dir / "tetra_faces.json", "--degree", "2")
    assert r["hodge_laplacian"] == [[3, 1, 0], [1, 3, -1], [0, -1, 3]]
    assert min(r["eigenvalues"]) == pytest.approx(3 - np.sqrt(2), abs=1e-12)


def test_graph_dual(capsys, data_dir):
    r = report(capsys, "graph-dual", "--input", data_dir / "star3.json")
    assert np.allclose(r["eigenvalues"], [1, 1, 4])
    assert not r["positive_orientation_exists"]


def test_bounds(capsys, data_dir):
    r = report(capsys, "bounds", "--input", data_dir / "decorated.json")
    assert r["contained"] and r["dms"] is not None
    r = report(capsys, "bounds", "--input", data_dir / "p4.json")
    assert r["contained"] and r["dms"] is None


def test_dominate(capsys, data_dir):
    r = report(capsys, "dominate", "--input", data_dir / "path3.json", "--input", data_dir / "path_with_full.json",
               "--at", "0.5", "--at", "2")
    assert r["threshold"]["t0"] == pytest.approx(1.006, abs=5e-3)
    assert [c["dominates"] for c in r["checks"]] == [False, True]


@pytest.mark.slow
def test_fano_enumerate(capsys, tmp_path):
    summary = tmp_path / "fano.json"
    code, out, err = run(capsys, "fano", "enumerate", "--classify", "--summary", summary)
    assert code == EXIT_OK, err
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 112
    assert sum(int(r["size"]) for r in rows) == 16384
    assert all(r["positive"] == "0" and r["inf_contractive"] == "0" for r in rows)
    doc = json.loads(summary.read_text())
    jsonschema.validate(doc, report_schema("fano"))
    assert doc["result"]["distinct_laplacians"] == 16384 and doc["result"]["classes"] == 112


# --- failure modes --------------------------------------------------------


def test_missing_file_is_input_error(capsys, tmp_path):
    e = error(capsys, EXIT_INPUT, "laplacian", "--input", tmp_path / "nope.json")
    assert e["kind"] == "input_error" and "cannot read" in e["message"]


def test_overlap_is_input_error(capsys, data_dir):
    e = error(capsys, EXIT_INPUT, "spectrum", "--input", data_dir / "bad_overlap.json")
    assert "both source and target" in e["message"]


def test_complex_given_to_hypergraph_command(capsys, data_dir):
    error(capsys, EXIT_INPUT, "laplacian", "--input", data_dir / "triangle2.json")


def test_hypergraph_given_to_hodge(capsys, data_dir):
    error(capsys, EXIT_INPUT, "hodge", "--input", data_dir / "p4.json", "--degree", "0")


def test_bad_option_values(capsys, data_dir):
    e = error(capsys, EXIT_INPUT, "flow", "--input", data_dir / "path3.json", "--u0", "1,2")
    assert "3 vertices" in e["message"]
    error(capsys, EXIT_INPUT, "flow", "--input", data_dir / "path3.json", "--u0", "unit:zz")
    error(capsys, EXIT_INPUT, "flow", "--input", data_dir / "path3.json", "--t0", "2", "--t1", "1")
    error(capsys, EXIT_INPUT, "dirichlet", "--input", data_dir / "path3.json", "--keep", "v9")
    error(capsys, EXIT_INPUT, "dominate", "--input", data_dir / "path3.json")
    error(capsys, EXIT_INPUT, "dominate", "--input", data_dir / "path3.json", "--input", data_dir / "p4.json")
    error(capsys, EXIT_INPUT, "union-lemma", "--input", data_dir / "one_to_two.json", "--mode", "co_oriented_full")
    error(capsys, EXIT_INPUT, "hodge", "--input", data_dir / "triangle2.json", "--degree", "5")
    error(capsys, EXIT_INPUT, "fano", "enumerate", "--summary", "x.json")


def test_argparse_errors_exit_two(capsys):
    assert main(["threshold", "--input", "x", "--property", "stochasticity"]) == EXIT_INPUT
    assert main(["flow", "--input", "x", "--steps", "0"]) == EXIT_INPUT
    assert main([]) == EXIT_INPUT
    capsys.readouterr()


def test_numeric_failure_exit_three(capsys, data_dir, monkeypatch):
    from hyperheat import cli
    from hyperheat.spectra import ConvergenceError

    def boom(_):
        raise ConvergenceError("off-diagonal mass did not vanish")

    monkeypatch.setattr(cli, "eigh", boom)
    e = error(capsys, EXIT_NUMERIC, "spectrum", "--input", data_dir / "p4.json")
    assert e["kind"] == "numeric_failure" and "ConvergenceError" in e["message"]


def test_console_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "hyperheat.cli", "laplacian", "--input",
                           str(data_dir / "path3.json")], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "laplacian"

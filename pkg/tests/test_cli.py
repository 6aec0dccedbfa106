import json
import math

import numpy as np
import pytest

from conftest import cycle_graph, k2_graph
from magneto import graph_from_json
from magneto.cli import main


def write_graph(tmp_path, g, name="g.json"):
    path = tmp_path / name
    path.write_text(g.to_json())
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


def test_oracle_cycle(capsys):
    code, rep, err = run(capsys, ["oracle", "cycle", "--n", "4", "--k", "2", "--j", "1"])
    assert code == 0
    assert rep["status"] == "OK"
    res = rep["results"]
    assert res["iota"] == 2.0
    assert res["h"] == 0.5
    assert res["c_delta"] == pytest.approx(2.0 / 4.0 ** (2.0 / 3.0))
    assert "OK" in err


def test_frustration_command(tmp_path, capsys):
    path = write_graph(tmp_path, cycle_graph(4, 2, 1))
    code, rep, _ = run(capsys, ["frustration", path])
    assert code == 0
    assert rep["results"]["value"] == pytest.approx(2.0, abs=1e-12)
    assert rep["results"]["exact"] is True

    code, rep, _ = run(capsys, ["frustration", path, "--heuristic", "--seed", "3"])
    assert code == 0
    assert rep["results"]["value"] >= 2.0 - 1e-9
    assert rep["results"]["exact"] is False


def test_frustration_subset_mask(tmp_path, capsys):
    path = write_graph(tmp_path, cycle_graph(4, 2, 1))
    # vertices {0, 1} induce a single edge: a tree, frustration 0
    code, rep, _ = run(capsys, ["frustration", path, "--subset", "3"])
    assert code == 0
    assert rep["results"]["value"] == 0.0


def test_cheeger_and_isoperimetric_commands(tmp_path, capsys):
    path = write_graph(tmp_path, cycle_graph(4, 2, 1))
    code, rep, _ = run(capsys, ["cheeger", path])
    assert code == 0
    assert rep["results"]["h"] == pytest.approx(0.5, abs=1e-12)
    assert rep["results"]["argmin"]["subset"] == [0, 1, 2, 3]

    code, rep, _ = run(capsys, ["cheeger", path, "--profile"])
    assert len(rep["results"]["profile"]) == 15

    code, rep, _ = run(capsys, ["isoperimetric", path, "--delta", "3"])
    assert code == 0
    assert rep["results"]["c_delta"] == pytest.approx(2.0 / 4.0 ** (2.0 / 3.0))

    code, rep, _ = run(capsys, ["isoperimetric", path, "--delta", "1"])
    assert code == 1
    assert rep["status"] == "ERROR"
    assert rep["results"]["error"] == "BAD_DELTA"


def test_product_command(tmp_path, capsys):
    p1 = write_graph(tmp_path, cycle_graph(3, 2, 1), "a.json")
    p2 = write_graph(tmp_path, k2_graph(2, 0), "b.json")
    out = str(tmp_path / "prod.json")
    code, rep, _ = run(capsys, ["product", p1, p2, "-o", out])
    assert code == 0
    assert rep["results"]["n"] == 6
    assert rep["results"]["edges"] == 3 * 1 + 2 * 3
    prod = graph_from_json(open(out).read())
    assert prod.n == 6


def test_spectrum_and_heat_commands(tmp_path, capsys):
    path = write_graph(tmp_path, cycle_graph(4, 2, 1))
    code, rep, _ = run(capsys, ["spectrum", path])
    assert code == 0
    lam = rep["results"]["eigenvalues"]
    assert lam == sorted(lam)
    assert rep["results"]["balanced"] is False
    assert lam[0] == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-9)

    code, rep, _ = run(capsys, ["heat", path, "--t", "1.0"])
    assert code == 0
    trace = rep["results"]["trace"]
    assert trace == pytest.approx(sum(math.exp(-x) for x in lam), abs=1e-9)

    code, rep, _ = run(capsys, ["heat", path, "--t", "0.5", "--unsigned"])
    assert code == 0
    assert np.min(rep["results"]["matrix_re"]) >= -1e-12


def test_verify_suites(tmp_path, capsys):
    path = write_graph(tmp_path, cycle_graph(4, 2, 1))
    for suite in ("coarea", "sobolev", "kato", "domination", "trace", "product"):
        code, rep, _ = run(capsys, ["verify", path, "--suite", suite, "--trials", "5"])
        assert code == 0, rep
        assert rep["status"] == "OK"
    code, rep, _ = run(capsys, ["verify", path, "--suite", "all", "--trials", "5"])
    assert code == 0
    assert set(rep["results"]) == {
        "coarea", "sobolev", "kato", "domination", "trace", "product"
    }


def test_verify_skips_balanced_sobolev(tmp_path, capsys):
    path = write_graph(tmp_path, k2_graph(2, 1))
    code, rep, _ = run(capsys, ["verify", path, "--suite", "sobolev", "--trials", "3"])
    assert code == 0
    assert "skipped" in rep["results"]["sobolev"]


def test_missing_file_is_an_error(capsys):
    code, rep, _ = run(capsys, ["cheeger", "/no/such/file.json"])
    assert code == 1
    assert rep["status"] == "ERROR"
    assert rep["results"]["error"] == "IO_ERROR"


def test_budget_env_var(tmp_path, capsys, monkeypatch):
    path = write_graph(tmp_path, cycle_graph(6, 4, 1))
    monkeypatch.setenv("MAGNETO_BUDGET", "10")
    code, rep, _ = run(capsys, ["frustration", path])
    assert code == 1
    assert rep["results"]["error"] == "BUDGET_EXCEEDED"


def test_stdout_is_deterministic(tmp_path, capsys):
    path = write_graph(tmp_path, cycle_graph(5, 3, 1))
    argv = ["verify", path, "--suite", "coarea", "--trials", "10", "--seed", "42"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second

import json
from pathlib import Path

import pytest

from pnbundles.cli import main

CATALOG = str(Path(__file__).resolve().parents[1] / "catalog" / "catalog.json")


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload), encoding="utf-8")
    return str(p)


@pytest.fixture()
def kernel_node_file(tmp_path):
    return write(tmp_path, "node.json", {
        "n": 3,
        "construction": {"ker": {"matrix": {
            "src": [2, 2, 2, 1], "tgt": [3],
            "rows": [["x0", "x1", "x2", "x3^2"]]}}}})


def test_chern_command(kernel_node_file, capsys):
    assert main(["chern", kernel_node_file, "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"rank": 3, "c": [4, 6, 2]}


def test_rr_command(capsys):
    assert main(["rr", "--n", "3", "--rank", "1", "--c", "2,0,0", "--l", "0",
                 "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["chi"] == 10


def test_coh_command(kernel_node_file, capsys):
    assert main(["--window=-3:-2", "coh", kernel_node_file, "--json"]) == 0
    cells = {(i, l): h for i, l, h in
             json.loads(capsys.readouterr().out)["cells"]}
    assert cells[(1, -3)] == 1 and cells[(1, -2)] == 1


def test_gg_command(kernel_node_file, capsys):
    assert main(["--trials", "60", "gg", kernel_node_file, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["generated"] is True


def test_gg_negative_exit_code(tmp_path, capsys):
    node = write(tmp_path, "k.json", {
        "n": 3,
        "construction": {"ker": {"matrix": {
            "src": [2, 2, 1, 1], "tgt": [3],
            "rows": [["x0", "x1", "x2^2", "x3^2"]]}}}})
    rc = main(["--trials", "20", "gg", node, "--json",
               "--hint-line", "0,0,1,0;0,0,0,1"])
    assert rc == 1
    out = json.loads(capsys.readouterr().out)
    assert out["generated"] is False and out["splitting"] == [2, 2, -1]


def test_splits_command(tmp_path, capsys):
    node = write(tmp_path, "k.json", {
        "n": 3,
        "construction": {"ker": {"matrix": {
            "src": [2, 2, 1, 1], "tgt": [3],
            "rows": [["x0", "x1", "x2^2", "x3^2"]]}}}})
    assert main(["splits", node, "--line", "0,0,1,0;0,0,0,1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["splitting"] == [2, 2, -1]


def test_spectra_commands(capsys):
    assert main(["spectra", "--c2", "2", "--kmin", "-2", "--kmax", "1",
                 "--c3-nonneg", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert sorted(map(tuple, out["spectra"])) == [(-1, -1), (0, -1), (0, 0)]
    assert main(["spectra", "--spectrum", "0,0,-1", "--h1", "-1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["h1"] == 2


def test_classify_pencil_command(tmp_path, capsys):
    mfile = tmp_path / "m.txt"
    mfile.write_text("x0, x1, x2, 0\n0, x0, x1, x2\n", encoding="utf-8")
    assert main(["classify-pencil", str(mfile), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["tag"] == "case-6" and out["coker_degree"] == 1


def test_cb_and_edges_commands(tmp_path, capsys):
    pts = write(tmp_path, "pts.json",
                {"points": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]})
    assert main(["cb", "--points", pts, "--degree", "1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["cayley_bacharach"] is True
    zf = write(tmp_path, "z.json", {"points": [[1, 0, 0, 0], [0, 1, 0, 0],
                                               [0, 0, 1, 0], [0, 0, 0, 1]]})
    assert main(["edges", "--line", "1,2,3,4;4,1,2,3", "--points", zf,
                 "--json"]) == 0
    assert "avoids_edges" in json.loads(capsys.readouterr().out)


def test_beilinson_command(tmp_path, capsys):
    cells = [[i, l, 0] for i in range(4) for l in range(-4, 2)]
    table = {"n": 3, "cells": cells}
    for trip in table["cells"]:
        if trip[0] == 1 and trip[1] == -1:
            trip[2] = 3
        if trip[0] == 1 and trip[1] == 0:
            trip[2] = 5
        if trip[0] == 2 and trip[1] == -3:
            trip[2] = 1
    tfile = write(tmp_path, "table.json", table)
    assert main(["beilinson", tfile]) == 0
    assert "Om^3(3) -> Om^1(1)^3 -> O^5" in capsys.readouterr().out


def test_liaison_command(tmp_path, capsys):
    res = write(tmp_path, "res.json", {
        "n": 2,
        "terms": [[0], [-1, -1], [-2]],
        "diffs": [{"src": [-1, -1], "tgt": [0], "rows": [["x1", "x2"]]},
                  {"src": [-2], "tgt": [-1, -1], "rows": [["-x2"], ["x1"]]}]})
    assert main(["liaison", res, "--a", "x1*x2", "--b", "x1^2 - x0*x2",
                 "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert sorted(out["terms"][1]) == [2, 2, 2]
    assert out["inner_exact_on_window"] is True


def test_catalog_verify_subset(tmp_path, capsys):
    cat = json.loads(Path(CATALOG).read_text(encoding="utf-8"))
    cat["entries"] = [e for e in cat["entries"]
                      if e["id"] in ("p3-line-4", "p2-c2-5-split")]
    cfile = write(tmp_path, "cat.json", cat)
    assert main(["--trials", "30", "catalog", "verify", cfile]) == 0
    # corrupt an expectation: exit code flips to 1
    cat["entries"][0]["expected"]["chern"]["rank"] = 99
    cfile2 = write(tmp_path, "cat2.json", cat)
    assert main(["--trials", "30", "catalog", "verify", cfile2]) == 1


def test_input_error_exit_code(tmp_path):
    assert main(["chern", str(tmp_path / "missing.json")]) == 2
    bad = write(tmp_path, "bad.json", {"n": 3, "construction": {"nope": 1}})
    assert main(["chern", bad]) == 2

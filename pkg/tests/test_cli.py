import io
import json
import subprocess
import sys

import pytest

from shalika import cli, cosets
from shalika.cosets import CosetLabel
from shalika.gf import GF
from shalika.linalg import Matrix, is_in_parabolic, is_in_shalika, random_invertible


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_matrix(tmp_path, g, name="g.json"):
    path = tmp_path / name
    path.write_text(json.dumps(g.to_json()), encoding="utf-8")
    return str(path)


def test_reps_json(capsys):
    code, out, _ = run(capsys, "reps", "--n", "2", "--r", "2")
    assert code == 0
    doc = json.loads(out)
    reps = doc["representatives"]
    assert len(reps) == 4
    assert [(d["k"], d["l"]) for d in reps] == sorted((d["k"], d["l"]) for d in reps)
    for d in reps:
        assert Matrix.from_json(d["matrix"]) == cosets.representative(CosetLabel(d["k"], d["l"], 2, 2))


def test_reps_n1(capsys):
    code, out, _ = run(capsys, "reps", "--n", "1", "--r", "1")
    assert code == 0
    mats = {Matrix.from_json(d["matrix"]).data for d in json.loads(out)["representatives"]}
    assert mats == {((1, 0), (0, 1)), ((0, 1), (1, 0))}


def test_reps_pretty(capsys):
    code, out, _ = run(capsys, "reps", "--n", "1", "--r", "1", "--format", "pretty")
    assert code == 0
    assert "[0 1]" in out and "[1 0]" in out


def test_reps_bad_r(capsys):
    code, _, err = run(capsys, "reps", "--n", "2", "--r", "4")
    assert code == 2
    assert err


@pytest.mark.parametrize("n, r, expected", [(2, 2, 4), (2, 3, 2), (50, 50, len(cosets.kl_bounds(50, 50)))])
def test_count(capsys, n, r, expected):
    code, out, _ = run(capsys, "count", "--n", str(n), "--r", str(r))
    assert code == 0
    assert int(out) == expected


def test_count_bad(capsys):
    assert run(capsys, "count", "--n", "0", "--r", "1")[0] == 2


def test_classify_identity(capsys, tmp_path):
    path = write_matrix(tmp_path, Matrix.identity(4, GF(3)))
    code, out, _ = run(capsys, "classify", path, "--n", "2", "--r", "2")
    assert code == 0
    doc = json.loads(out)
    assert (doc["k"], doc["l"]) == (2, 0)


def test_classify_representative(capsys, tmp_path):
    w = cosets.representative(CosetLabel(1, 1, 2, 2), 5)
    path = write_matrix(tmp_path, w)
    code, out, _ = run(capsys, "classify", path, "--r", "2", "--p", "5")
    assert code == 0
    doc = json.loads(out)
    assert (doc["k"], doc["l"]) == (1, 1)


def test_classify_singular(capsys, tmp_path):
    path = write_matrix(tmp_path, Matrix.zeros(4, 4, GF(2)))
    assert run(capsys, "classify", path, "--r", "2")[0] == 3


@pytest.mark.parametrize("doc", [
    {"p": 2, "rows": 2, "cols": 2, "entries": [[1, 2], [0, 1]]},
    {"p": 2, "rows": 3, "cols": 3, "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
    {"p": 2, "rows": 2},
])
def test_classify_bad_input(capsys, tmp_path, doc):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert run(capsys, "classify", str(path), "--r", "1")[0] == 2


def test_classify_field_mismatch(capsys, tmp_path):
    path = write_matrix(tmp_path, Matrix.identity(2, GF(3)))
    assert run(capsys, "classify", path, "--r", "1", "--p", "5")[0] == 2


def test_classify_missing_file(capsys, tmp_path):
    assert run(capsys, "classify", str(tmp_path / "nope.json"), "--r", "1")[0] == 2


def test_classify_stdin(capsys, monkeypatch):
    g = cosets.representative(CosetLabel(0, 0, 1, 1), 2)
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(g.to_json())))
    code, out, _ = run(capsys, "classify", "-", "--r", "1")
    assert code == 0
    assert json.loads(out)["k"] == 0


def _check_decomposition(doc, g, r):
    s, w, p = (Matrix.from_json(doc[key]) for key in ("s", "w", "p"))
    assert s @ w @ p == g
    assert is_in_shalika(s) and is_in_parabolic(p, r)
    lab = doc["label"]
    assert w == cosets.representative(CosetLabel(lab["k"], lab["l"], g.rows // 2, r), g.p)


def test_decompose_identity(capsys, tmp_path):
    g = Matrix.identity(4, GF(5))
    code, out, _ = run(capsys, "decompose", write_matrix(tmp_path, g), "--r", "2")
    assert code == 0
    _check_decomposition(json.loads(out), g, 2)


def test_decompose_representative(capsys, tmp_path):
    g = cosets.representative(CosetLabel(1, 0, 3, 2), 3)
    code, out, _ = run(capsys, "decompose", write_matrix(tmp_path, g), "--n", "3", "--r", "2")
    assert code == 0
    doc = json.loads(out)
    _check_decomposition(doc, g, 2)
    assert (doc["label"]["k"], doc["label"]["l"]) == (1, 0)


def test_decompose_random(capsys, tmp_path, rng):
    for p, n in [(2, 3), (3, 2), (7, 2)]:
        g = random_invertible(2 * n, GF(p), rng)
        for r in range(1, 2 * n):
            code, out, _ = run(capsys, "decompose", write_matrix(tmp_path, g), "--r", str(r))
            assert code == 0
            _check_decomposition(json.loads(out), g, r)


def test_decompose_singular(capsys, tmp_path):
    g = Matrix.from_rows([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 2)
    assert run(capsys, "decompose", write_matrix(tmp_path, g), "--r", "2")[0] == 3


def test_decompose_internal_failure(capsys, tmp_path, monkeypatch):
    real = cosets.decompose

    def broken(g, n, r):
        d = real(g, n, r)
        return cosets.Decomposition(d.s, d.w, d.w, d.label)

    monkeypatch.setattr(cosets, "decompose", broken)
    g = cosets.representative(CosetLabel(1, 1, 2, 2), 3) @ Matrix.from_rows(
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 2], [0, 0, 0, 1]], 3)
    assert run(capsys, "decompose", write_matrix(tmp_path, g), "--r", "2")[0] == 4


def test_verify_gl4f2(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--p", "2", "--r", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"]
    assert doc["reports"][0]["num_classes"] == 4


def test_verify_all_r_small(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1", "--p", "5")
    assert code == 0
    assert [rep["r"] for rep in json.loads(out)["reports"]] == [1]


def test_verify_size_gate(capsys):
    assert run(capsys, "verify", "--n", "3", "--p", "2")[0] == 2
    assert run(capsys, "verify", "--n", "2", "--p", "3", "--r", "1")[0] == 2


def test_verify_mismatch(capsys, monkeypatch):
    from shalika import oracle
    real = oracle.certify

    def failing(*args, **kwargs):
        rep = real(*args, **kwargs)
        rep["ok"] = False
        rep["witnesses"] = [{"reason": "forced"}]
        return rep

    monkeypatch.setattr(oracle, "certify", failing)
    code, _, err = run(capsys, "verify", "--n", "1", "--p", "2")
    assert code == 5
    assert "forced" in err


def test_sym_cosets_brute(capsys):
    code, out, _ = run(capsys, "sym-cosets", "--n", "2", "--r", "2", "--brute")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and doc["brute"]["classes"] == 4
    assert len(doc["transversal"]) == 4


def test_sym_cosets_n4(capsys):
    code, out, _ = run(capsys, "sym-cosets", "--n", "4", "--r", "3", "--brute")
    assert code == 0
    assert json.loads(out)["ok"]


def test_sym_cosets_gate(capsys):
    assert run(capsys, "sym-cosets", "--n", "5", "--r", "2", "--brute")[0] == 2
    assert run(capsys, "sym-cosets", "--n", "5", "--r", "2")[0] == 0


def test_sym_cosets_mismatch(capsys, monkeypatch):
    from shalika import symgrp
    monkeypatch.setattr(symgrp, "check_sym_bijection", lambda n, r: {"ok": False, "classes": 0})
    assert run(capsys, "sym-cosets", "--n", "1", "--r", "1", "--brute")[0] == 5


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        cli.main(["reps", "--n", "2"])
    assert exc.value.code == 2


def test_deterministic_output(capsys):
    outs = {run(capsys, "reps", "--n", "3", "--r", "3")[1] for _ in range(2)}
    assert len(outs) == 1


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "shalika.cli", "count", "--n", "3", "--r", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == str(cosets.count(3, 3))

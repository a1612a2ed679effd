import json
import subprocess
import sys

import pytest

from lambda_orders import cyclotomic, orders
from lambda_orders.cli import main
from lambda_orders.corpus import swap_presentation
from lambda_orders.factorization import presentation_from_mset
from lambda_orders.mset import regular_mset, trivial_mset
from lambda_orders.orders import character_mset


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


class TestAnalyze:
    def test_swap_is_no(self, tmp_path, capsys):
        code, out, _ = run(["analyze", write(tmp_path, "swap.json", swap_presentation().to_json())], capsys)
        assert code == 3
        doc = json.loads(out)
        assert doc["factors"] is False and doc["witness"]["clause"] == "action"

    def test_trivial_is_yes(self, tmp_path, capsys):
        doc = {"size": 1, "c": 1, "unit_action": {"0": [0]}}
        code, out, _ = run(["analyze", write(tmp_path, "t.json", doc)], capsys)
        assert code == 0
        res = json.loads(out)
        assert res["factors"] is True and res["r"] == 1

    def test_character_set(self, tmp_path, capsys):
        doc = presentation_from_mset(character_mset(2)).to_json()
        code, out, _ = run(["analyze", write(tmp_path, "c.json", doc)], capsys)
        assert code == 0 and json.loads(out)["r"] == 2

    def test_reports_minimal_level(self, tmp_path, capsys):
        from lambda_orders.mset import lift

        doc = presentation_from_mset(lift(regular_mset(3), 12)).to_json()
        code, out, _ = run(["analyze", write(tmp_path, "l.json", doc)], capsys)
        res = json.loads(out)
        assert code == 0 and res["r"] == 3 and res["r_bound"] % 3 == 0

    @pytest.mark.parametrize("text", ["{not json", "[1, 2]", '{"size": 2, "c": 1, "unit_action": {"0": [1, 0]}}'])
    def test_invalid_input(self, tmp_path, capsys, text):
        code, out, err = run(["analyze", write(tmp_path, "bad.json", text)], capsys)
        assert code == 2 and out == "" and err.startswith("error:")

    def test_missing_file(self, capsys):
        code, _, err = run(["analyze", "/nonexistent/file.json"], capsys)
        assert code == 2 and "cannot read" in err


class TestMaximalOrder:
    def test_regular_six(self, tmp_path, capsys):
        code, out, _ = run(["maximal-order", write(tmp_path, "r6.json", regular_mset(6).to_json())], capsys)
        doc = json.loads(out)
        assert code == 0
        assert doc["equals_group_ring"] is True
        assert doc["verification"]["ok"] is True
        assert [c["degree"] for c in doc["components"]] == [1, 2, 2, 1]

    def test_singleton(self, tmp_path, capsys):
        code, out, _ = run(["maximal-order", write(tmp_path, "p.json", trivial_mset(1, 1).to_json())], capsys)
        doc = json.loads(out)
        assert code == 0 and doc["lattice"]["basis"] == [["1"]]

    def test_character_set_larger_than_group_ring(self, tmp_path, capsys):
        code, out, _ = run(["maximal-order", write(tmp_path, "v.json", character_mset(2).to_json())], capsys)
        doc = json.loads(out)
        assert code == 0 and "equals_group_ring" not in doc
        _, G, _ = orders.group_ring_lattice(2)
        from lambda_orders.lattice import IntLattice, index

        M = IntLattice.from_json(doc["lattice"])
        assert index(G, M) == 2

    def test_invalid_mset(self, tmp_path, capsys):
        bad = {"level": 2, "size": 2, "action": [[0, 0], [1, 0]]}
        code, _, err = run(["maximal-order", write(tmp_path, "bad.json", bad)], capsys)
        assert code == 2 and "fix" in err


class TestDemo:
    def test_theorem_b(self, capsys):
        code, out, _ = run(["demo", "theorem-b", "--r", "8"], capsys)
        assert code == 0
        assert "maximal order equals Z[mu_8]: OK" in out.splitlines()

    def test_group_ring(self, capsys):
        code, out, _ = run(["demo", "group-ring", "--p", "2"], capsys)
        assert code == 0
        assert "psi_2(x) = 2: True" in out and "x^2 = 2x: True" in out
        assert json.loads(out.splitlines()[-1])["index"] == "2"

    def test_counterexample(self, capsys):
        code, out, _ = run(["demo", "counterexample"], capsys)
        assert code == 0 and "failing clause: action" in out

    def test_unknown(self, capsys):
        code, _, err = run(["demo", "nope"], capsys)
        assert code == 2 and "unknown demo" in err

    def test_bad_parameter(self, capsys):
        assert run(["demo", "group-ring", "--p", "4"], capsys)[0] == 2


def test_no_subcommand(capsys):
    assert main([]) == 2


def test_internal_error_exit_code(monkeypatch, tmp_path, capsys):
    import lambda_orders.factorization as fz

    def boom(pres):
        raise RuntimeError("injected")

    monkeypatch.setattr(fz, "check_factors", boom)
    code, _, err = run(["analyze", write(tmp_path, "t.json", swap_presentation().to_json())], capsys)
    assert code == 1 and "injected" in err


def test_output_is_byte_identical(tmp_path):
    path = write(tmp_path, "r4.json", regular_mset(4).to_json())
    cmd = [sys.executable, "-m", "lambda_orders.cli", "maximal-order", path]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    doc = json.loads(a)
    assert list(doc) == sorted(doc)


def test_stdin_and_exit_code():
    doc = json.dumps(swap_presentation().to_json())
    proc = subprocess.run([sys.executable, "-m", "lambda_orders.cli", "analyze", "-"],
                          input=doc, capture_output=True, text=True)
    assert proc.returncode == 3
    assert json.loads(proc.stdout)["factors"] is False


def test_selftest_quick(capsys):
    code, out, _ = run(["selftest", "--quick"], capsys)
    assert code == 0
    assert out.count("[PASS]") == 9


def test_selftest_reports_corrupted_cyclotomic_table(monkeypatch, capsys):
    real = cyclotomic.cyclotomic_poly

    def corrupted(n):
        return (1, 1, 2) if n == 3 else real(n)

    def reset():
        cyclotomic.clear_caches()
        orders._join_matrix.cache_clear()

    reset()
    monkeypatch.setattr(cyclotomic, "cyclotomic_poly", corrupted)
    try:
        code, out, err = run(["selftest", "--quick"], capsys)
    finally:
        monkeypatch.undo()
        reset()
    assert code == 1
    assert "[FAIL] crt_round_trip (cyclotomic)" in out
    assert "failure in module cyclotomic" in err

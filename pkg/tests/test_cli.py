import json
import subprocess
import sys

import pytest

from symdeg.cli import main

M2 = '{"rep":[{"i":1,"j":2,"mult":2}]}'
N2 = '{"rep":[{"i":1,"j":1,"mult":2},{"i":2,"j":2,"mult":2}]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decide_example(capsys):
    code, out, _ = run(capsys, "decide", "A2:>", "-1", M2, N2)
    assert code == 0 and json.loads(out) is True
    code, out, _ = run(capsys, "decide", "A2:>", "-1", N2, M2)
    assert code == 0 and json.loads(out) is False


def test_ar_dot_example(capsys):
    code, out, _ = run(capsys, "ar", "A3:>>")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("[pos=") == 6
    assert out.count("dashed") == 3


def test_ar_json_round_trip(capsys):
    from symdeg import ARQuiver

    code, out, _ = run(capsys, "ar", "A4:><>", "--format", "json")
    assert code == 0
    assert ARQuiver.from_json(json.loads(out)).quiver.n == 4


def test_hom_ext_and_intervals(capsys):
    assert json.loads(run(capsys, "hom", "A2:>", M2, N2)[1]) == {"hom": 4}
    assert json.loads(run(capsys, "ext", "A2:>", "1,1", "U[2,2]")[1]) == {"ext": 1}
    assert json.loads(run(capsys, "ext", "A2:>", "2,2", "1,1")[1]) == {"ext": 0}


def test_genquot_and_subquot(capsys):
    m = '{"rep":[{"i":2,"j":4},{"i":1,"j":3}]}'
    code, out, _ = run(capsys, "genquot", "A4:>>>", m, "3,4")
    res = json.loads(out)
    assert code == 0 and res["hit"] == [[2, 4]] and res["produced"] == [None, [2, 2]]
    code, out, _ = run(capsys, "subquot", "A4:>>>", "-1", m, "3,4")
    assert code == 0 and json.loads(out) == {"rep": [{"i": 2, "j": 3, "mult": 1}]}
    code, _, err = run(capsys, "genquot", "A3:>>", '{"rep":[{"i":1,"j":1}]}', "3,3")
    assert code == 1


def test_chain_not_degeneration(capsys):
    code, out, err = run(capsys, "chain", "A2:>", "-1", N2, M2)
    assert code == 1 and "not a degeneration" in (out + err)


def test_chain_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "chain.json"
    code, _, _ = run(capsys, "chain", "A2:>", "-1", M2, N2, "--out", str(path))
    assert code == 0
    chain = json.loads(path.read_text())
    assert chain["length"] == 2
    code, out, _ = run(capsys, "verify", "A2:>", "-1", str(path))
    report = json.loads(out)
    assert code == 0 and report["valid"] and report["certified"]
    chain["steps"][0]["Y"] = {"rep": []}
    path.write_text(json.dumps(chain))
    code, out, _ = run(capsys, "verify", "A2:>", "-1", str(path))
    assert code == 1 and not json.loads(out)["valid"]
    code, _, err = run(capsys, "verify", "A2:>", "1", str(path))
    assert code == 2


def test_chain_table(capsys):
    code, out, _ = run(capsys, "chain", "A2:>", "-1", M2, N2, "--format", "table")
    assert code == 0 and "M(2)" in out and "reducing by" in out


def test_usage_errors(capsys):
    assert run(capsys, "hom", "A2:x", M2, N2)[0] == 2
    assert run(capsys, "decide", "A2:>", "0", M2, N2)[0] == 2
    assert run(capsys, "decide", "A2:>", "-1", "{not json", N2)[0] == 2
    assert run(capsys, "decide", "A2:>", "1", '{"rep":[{"i":1,"j":2}]}', '{"rep":[{"i":1,"j":2}]}')[0] == 2
    assert run(capsys, "hasse", "A3:>>", "1", "1,2,3")[0] == 2
    assert run(capsys, "genquot", "A3:>>", M2, "4,5")[0] == 2


def test_hasse_formats_and_parallel(capsys):
    code, out, _ = run(capsys, "hasse", "A2:>", "-1", "2,2")
    h = json.loads(out)
    assert code == 0 and len(h["nodes"]) == 3 and len(h["covers"]) == 2
    _, dot, _ = run(capsys, "hasse", "A2:>", "-1", "2,2", "--format", "dot")
    assert dot.count("->") == 2
    _, seq, _ = run(capsys, "hasse", "A4:><>", "-1", "2,2,2,2")
    _, par, _ = run(capsys, "hasse", "A4:><>", "-1", "2,2,2,2", "--parallel", "--workers", "2")
    assert seq == par


def test_deterministic_output(capsys):
    first = run(capsys, "chain", "A4:><>", "-1", '{"rep":[{"i":1,"j":4,"mult":2}]}', '{"rep":[{"i":1,"j":1,"mult":2},{"i":4,"j":4,"mult":2},{"i":2,"j":3,"mult":2}]}')
    second = run(capsys, "chain", "A4:><>", "-1", '{"rep":[{"i":1,"j":4,"mult":2}]}', '{"rep":[{"i":1,"j":1,"mult":2},{"i":4,"j":4,"mult":2},{"i":2,"j":3,"mult":2}]}')
    assert first == second


def test_selftest_small(capsys):
    code, out, _ = run(capsys, "selftest", "--n-max", "3", "--max-total", "4", "--format", "json")
    results = json.loads(out)
    assert code == 0
    assert all(r["failures"] == 0 for r in results)
    assert {r["suite"] for r in results} >= {"hom-three-way", "chain-round-trip"}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symdeg", "decide", "A2:>", "-1", M2, N2], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "true"

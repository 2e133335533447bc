import io
import json

import pytest

from spindefect.cli import main
from spindefect.plumbing import graph_to_json, seifert_to_plumbing
from spindefect.seifert import SeifertData, SpinAssignment


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv, "--json")
    return rc, json.loads(out), err


def test_sigma_verbatim(capsys):
    rc, out, _ = run(capsys, "sigma", "3", "4", "--eps", "+1")
    assert rc == 0
    assert out == "sigma(3,4,+1) = 1\n"


def test_delta_all_spin_verbatim(capsys):
    rc, out, _ = run(capsys, "delta", "--seifert", "(2,1),(3,1),(5,-4)",
                     "--all-spin")
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 1
    assert "delta = -8" in lines[0]
    assert "(5-5)" in lines[0]
    assert lines[0].startswith("c = (1,1,0)")


def test_rp2_verbatim(capsys):
    rc, out, _ = run(capsys, "rp2", "--bplus", "0", "--bminus", "0",
                     "--sign", "0", "--euler", "2")
    assert rc == 0
    assert "e = 2 admissible for eps in {-1}" in out
    assert "forces e in [-2, 2]" in out


def test_sigma_inadmissible_note(capsys):
    rc, out, _ = run(capsys, "sigma", "1", "3", "--eps", "-1")
    assert rc == 0
    assert "sigma(1,3,-1) = -1" in out
    assert "does not label a spin structure" in out


def test_sigma_json(capsys):
    rc, doc, _ = run_json(capsys, "sigma", "3", "4", "--eps", "+1")
    assert rc == 0
    assert doc == {"input": {"q": 3, "p": 4, "eps": 1},
                   "sigma": 1, "spin_admissible": True}


def test_evencf(capsys):
    rc, out, _ = run(capsys, "evencf", "7", "4")
    assert rc == 0 and out == "7/4 = [[2, 4]]\n"
    rc, doc, _ = run_json(capsys, "evencf", "-7", "4")
    assert rc == 0 and doc["entries"] == [-2, -4] and doc["sign_sum"] == -2


def test_spin_list(capsys):
    rc, out, _ = run(capsys, "spin-list", "--seifert", "(2,1),(2,1),(4,1)")
    assert rc == 0
    assert out.splitlines()[0].startswith("4 spin structure(s)")
    rc, doc, _ = run_json(capsys, "spin-list", "--seifert", "(2,1),(3,1),(5,-4)")
    assert doc["count"] == 1
    assert doc["assignments"] == [{"cg": [1, 1, 0], "ch": 0}]


def test_delta_lens(capsys):
    rc, out, _ = run(capsys, "delta", "--lens", "8", "3", "--eps", "-1")
    assert rc == 0 and "delta(L(8,3), eps=-1) = 1" in out
    # p odd: eps is determined, flag not required
    rc, out, _ = run(capsys, "delta", "--lens", "7", "3")
    assert rc == 0 and "eps=+1" in out


def test_delta_single_spin(capsys):
    rc, out, _ = run(capsys, "delta", "--seifert", "(2,1),(2,1),(3,1)",
                     "--spin", "0,1,1")
    assert rc == 0
    assert "delta = -3" in out


def test_exit_codes_for_input_errors(capsys):
    cases = [
        ("delta", "--seifert", "(2,1),(3,1)(5,-4)", "--all-spin"),  # syntax
        ("delta", "--lens", "8", "3"),            # p even needs --eps
        ("delta", "--lens", "8", "2", "--eps", "1"),  # not coprime
        ("sigma", "2", "4"),                      # not coprime
        ("feasible", "--bplus", "1", "--bminus", "0", "--sign", "0",
         "--delta", "0"),                         # sign inconsistent
        ("char-sphere", "--bplus", "0", "--bminus", "1", "--square", "2"),
        ("plumbing", "--star", "(-2; nope)"),
        ("delta", "--seifert", "(2,1),(3,1),(5,-4)", "--spin", "0,0,0"),
        ("seifert-to-plumbing", "--seifert", "(2,1),(3,1),(5,-4)"),  # no spin
    ]
    for argv in cases:
        rc, out, err = run(capsys, *argv)
        assert rc == 2, argv
        assert err.startswith("error:"), argv


def test_argparse_errors_also_exit_2(capsys):
    for argv in (["sigma", "3"], ["no-such-command"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
        capsys.readouterr()


def test_obstructed_exit_codes(capsys):
    rc, *_ = run(capsys, "feasible", "--bplus", "0", "--bminus", "24",
                 "--sign", "-24", "--delta", "-8")
    assert rc == 1
    rc, *_ = run(capsys, "cobordism", "--seifert", "(2,1),(3,1),(5,-4)",
                 "--spin", "1,1,0")
    assert rc == 1
    rc, *_ = run(capsys, "rp2", "--bplus", "0", "--bminus", "0",
                 "--sign", "0", "--euler", "10")
    assert rc == 1
    rc, *_ = run(capsys, "char-sphere", "--bplus", "2", "--bminus", "0",
                 "--square", "18")
    assert rc == 1
    # a computed non-verdict never uses 1
    rc, *_ = run(capsys, "definite", "--delta", "26")
    assert rc == 0


def test_json_deterministic(capsys):
    _, out1, _ = run(capsys, "delta", "--seifert", "(2,1),(3,1),(4,1)",
                     "--all-spin", "--json")
    _, out2, _ = run(capsys, "delta", "--seifert", "(2,1),(3,1),(4,1)",
                     "--all-spin", "--json")
    assert out1 == out2
    doc = json.loads(out1)
    assert {row["delta"] for row in doc["results"]} == {-5, -3}


def test_feasible_json_roundtrip(capsys):
    rc, doc, _ = run_json(capsys, "feasible", "--bplus", "0", "--bminus", "8",
                          "--sign", "-8", "--delta", "-8")
    assert rc == 0 and doc["status"] == "ForcedEqual"
    spec = doc["input"]
    rc2, doc2, _ = run_json(
        capsys, "feasible",
        "--bplus", str(spec["b_plus"]), "--bminus", str(spec["b_minus"]),
        "--sign", str(spec["sign"]), "--delta", str(spec["delta"]),
    )
    assert rc2 == rc and doc2 == doc


def test_definite_json(capsys):
    rc, doc, _ = run_json(capsys, "definite", "--delta", "-8")
    assert rc == 0 and doc["forced"] and doc["counterexample"] is None
    rc, doc, _ = run_json(capsys, "definite", "--delta", "26")
    assert doc["counterexample"] == {"b_plus": 10, "b_minus": 0, "sign": 10}


def test_plumbing_star_and_wu(capsys):
    rc, out, _ = run(capsys, "plumbing", "--star",
                     "(-2; -2; -2,-2; -2,-2,-2,-2)")
    assert rc == 0
    assert "signature: (b+ = 0, b- = 8, b0 = 0)" in out
    assert "wu support [] -> delta = -8" in out

    rc, doc, _ = run_json(capsys, "plumbing", "--star", "(0; 3)", "--wu", "1,0")
    assert rc == 0
    assert doc["wu"] == [{"wu": [1, 0], "delta": 0}]


def test_plumbing_graph_file_and_stdin(capsys, tmp_path, monkeypatch):
    g, w = seifert_to_plumbing(SeifertData([(2, 1), (3, 1), (5, -4)]),
                               SpinAssignment((1, 1, 0)))
    doc = graph_to_json(g, w)
    path = tmp_path / "e8.json"
    path.write_text(json.dumps(doc))
    rc, out, _ = run(capsys, "plumbing", "--graph", str(path))
    assert rc == 0 and "b- = 8" in out and "delta = -8" in out

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(doc)))
    rc, out, _ = run(capsys, "plumbing", "--graph", "-")
    assert rc == 0 and "delta = -8" in out

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc, _, err = run(capsys, "plumbing", "--graph", str(bad))
    assert rc == 2 and err.startswith("error:")


def test_seifert_to_plumbing_matches_library(capsys):
    rc, doc, _ = run_json(capsys, "seifert-to-plumbing",
                          "--seifert", "(2,1),(3,1),(5,-4)", "--spin", "1,1,0")
    assert rc == 0
    g, w = seifert_to_plumbing(SeifertData([(2, 1), (3, 1), (5, -4)]),
                               SpinAssignment((1, 1, 0)))
    assert doc["graph"] == graph_to_json(g, w)
    assert doc["delta"] == -8
    assert doc["signature"] == {"b_plus": 0, "b_minus": 8, "b_zero": 0}

    rc, doc, _ = run_json(capsys, "seifert-to-plumbing",
                          "--lens", "8", "3", "--eps", "-1")
    assert rc == 0 and doc["delta"] == 1


def test_cobordism_text(capsys):
    rc, out, _ = run(capsys, "cobordism", "--lens", "7", "3")
    assert rc == 1 and "infinite order" in out
    rc, out, _ = run(capsys, "cobordism", "--seifert", "(2,1),(2,1),(4,1)",
                     "--spin", "0,0,0")
    assert rc == 0  # |H1| even: no order conclusion


def test_selftest_passes(capsys):
    rc, out, _ = run(capsys, "selftest")
    assert rc == 0
    assert out.splitlines()[-1] == "selftest: PASS"
    assert "sigma three-way" in out

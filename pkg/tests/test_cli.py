"""CLI behavior: rendered output, exit codes, file inputs, and determinism.

The client runs against the in-process service by default, so these tests
exercise the full request path without a network socket.
"""

from __future__ import annotations

import json

import pytest

import krampoly.service
from krampoly.cli import main
from krampoly.laurent import parse_poly
from krampoly.polymatrix import PolyMatrix
from krampoly.representations import krammer_generator

P = parse_poly
TRIGONAL = "s1 s2 s1 s2^4 s1 s2 s1"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_essential_example(capsys):
    code, out, err = run(capsys, "essential", "--n", "5", "--word", "s1 s2 s4")
    assert code == 0
    assert out == "essential: true (missing: 3)\n"
    assert err == ""


def test_essential_false_output(capsys):
    code, out, _ = run(capsys, "essential", "--n", "3", "--word", "s1 s2")
    assert code == 0
    assert out == "essential: false\n"


def test_krammer_poly_trigonal_text(capsys):
    code, out, _ = run(capsys, "krammer-poly", "--n", "3", "--word", TRIGONAL)
    assert code == 0
    golden = (P("t^6*q^14 - 1") * P("t^2*q^10 - 1") * P("t^2*q^6 - 1")).normalize()
    assert out == f"{golden}\n"


def test_krammer_matrix_text_layout(capsys):
    code, out, _ = run(capsys, "krammer-matrix", "--n", "3", "--word", "s1")
    assert code == 0
    assert out == krammer_generator(3, 1).pretty() + "\n"
    assert out.splitlines()[0].startswith("[ t*q^2")


def test_alexander_text(capsys):
    code, out, _ = run(capsys, "alexander", "--n", "3", "--word", "s1 s2")
    assert code == 0
    assert out == "t^2 + t + 1\n"


def test_eigenvector_text(capsys):
    code, out, _ = run(capsys, "eigenvector", "--n", "4", "--missing", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n: 4"
    assert lines[1] == "missing: 2"
    assert lines[2] == "scale: t*q^2 - 1"
    assert lines[3].startswith("(1,2): ")
    assert len(lines) == 3 + 6


def test_relations_check_ok(capsys):
    code, out, _ = run(capsys, "relations-check", "--n", "4")
    assert code == 0
    assert out == "relations: ok (krammer, n=4, 3 identities checked)\n"


def test_relations_check_burau(capsys):
    code, out, _ = run(capsys, "relations-check", "--n", "3", "--representation", "burau")
    assert code == 0
    assert "burau" in out


def test_relations_check_failure_exits_1(capsys, monkeypatch):
    # sabotage the service's matrix builder so one identity fails
    real = krampoly.service.krammer_word

    def broken(w):
        m = real(w)
        if w.letters == (1, 2, 1):
            return PolyMatrix.identity(m.rows)
        return m

    monkeypatch.setattr(krampoly.service, "krammer_word", broken)
    code, out, _ = run(capsys, "relations-check", "--n", "3")
    assert code == 1
    assert "FAILED" in out
    assert "s1 s2 s1 != s2 s1 s2" in out


def test_json_output_is_deterministic(capsys):
    args = ("krammer-poly", "--n", "3", "--word", TRIGONAL, "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    body = json.loads(out1)
    assert body["exact"] is True
    assert list(body) == sorted(body)


def test_minor_cap_on_single_fiber_stays_exact(capsys):
    code, out, _ = run(
        capsys,
        "krammer-poly", "--n", "3", "--word", TRIGONAL, "--minor-cap", "1",
    )
    assert code == 0  # one fiber means one minor; the cap never truncates
    assert "inexact" not in out


def test_minor_cap_zero_is_usage_error(capsys):
    code, _, err = run(
        capsys, "krammer-poly", "--n", "3", "--word", TRIGONAL, "--minor-cap", "0"
    )
    assert code == 2
    assert "minor-cap" in err


def test_two_fiber_cap_exits_3(capsys, tmp_path):
    payload = {"n": 3, "words": [TRIGONAL, "s1 s2 s1 s2 s1 s2"]}
    path = tmp_path / "monodromy.json"
    path.write_text(json.dumps(payload))
    code, out, _ = run(
        capsys, "krammer-poly", "--input", str(path), "--minor-cap", "1"
    )
    assert code == 3
    assert "inexact: capped after 1 minors" in out
    code_full, out_full, _ = run(capsys, "krammer-poly", "--input", str(path))
    assert code_full == 0
    assert "inexact" not in out_full


def test_word_input_file(capsys, tmp_path):
    path = tmp_path / "word.txt"
    path.write_text("s1 s2 s4\n")
    code, out, _ = run(capsys, "essential", "--n", "5", "--input", str(path))
    assert code == 0
    assert out == "essential: true (missing: 3)\n"


def test_monodromy_file_n_mismatch(capsys, tmp_path):
    path = tmp_path / "monodromy.json"
    path.write_text(json.dumps({"n": 3, "words": ["s1 s2"]}))
    code, _, err = run(capsys, "krammer-poly", "--n", "4", "--input", str(path))
    assert code == 2
    assert "contradicts" in err


def test_word_and_input_conflict(capsys, tmp_path):
    path = tmp_path / "word.txt"
    path.write_text("s1")
    code, _, err = run(
        capsys, "essential", "--n", "3", "--word", "s1", "--input", str(path)
    )
    assert code == 2
    assert "not both" in err


def test_missing_n_is_usage_error(capsys):
    code, _, err = run(capsys, "krammer-poly", "--word", "s1 s2")
    assert code == 2
    assert "--n is required" in err


def test_bad_word_maps_to_exit_2(capsys):
    code, _, err = run(capsys, "krammer-matrix", "--n", "3", "--word", "sigma1")
    assert code == 2
    assert "error (400)" in err


def test_out_of_range_generator_maps_to_exit_2(capsys):
    code, _, err = run(capsys, "eigenvector", "--n", "4", "--missing", "3")
    assert code == 2
    assert "error (400)" in err


def test_missing_file_is_usage_error(capsys, tmp_path):
    code, _, err = run(
        capsys, "essential", "--n", "3", "--input", str(tmp_path / "absent.txt")
    )
    assert code == 2
    assert "cannot read" in err


def test_curve_analyze_text(capsys):
    curve = json.dumps([["0", "1"], ["0", "2"], ["0", "-1"]])
    code, out, _ = run(capsys, "curve-analyze", "--curve", curve)
    assert code == 0
    golden = (P("t^2*q^6 - 1") ** 3).normalize()
    assert f"invariant: {golden}" in out
    assert "family: one-fiber, d=1" in out


def test_curve_analyze_file_and_inline_monodromy(capsys, tmp_path):
    path = tmp_path / "curve.json"
    path.write_text(json.dumps([["0", "0", "0", "1"], ["0", "0", "0", "-1"], ["0", "4"]]))
    monodromy = json.dumps({"n": 3, "words": [TRIGONAL]})
    code, out, _ = run(
        capsys, "curve-analyze", "--input", str(path), "--monodromy", monodromy
    )
    assert code == 0
    assert "fibers: unresolved" in out
    golden = (P("t^6*q^14 - 1") * P("t^2*q^10 - 1") * P("t^2*q^6 - 1")).normalize()
    assert f"invariant: {golden}" in out


def test_curve_analyze_monodromy_file(capsys, tmp_path):
    curve = json.dumps([["0", "1"], ["0", "2"], ["0", "-1"]])
    mpath = tmp_path / "monodromy.json"
    mpath.write_text(json.dumps({"n": 3, "words": ["s1 s2 s1"]}))
    code, out, _ = run(capsys, "curve-analyze", "--curve", curve, "--monodromy", str(mpath))
    assert code == 0
    assert "monodromy: s1 s2 s1" in out


def test_curve_analyze_requires_exactly_one_source(capsys, tmp_path):
    code, _, err = run(capsys, "curve-analyze")
    assert code == 2
    assert "exactly one" in err
    path = tmp_path / "curve.json"
    path.write_text("[]")
    code, _, err = run(
        capsys, "curve-analyze", "--curve", "[]", "--input", str(path)
    )
    assert code == 2


def test_curve_analyze_bad_json(capsys):
    code, _, err = run(capsys, "curve-analyze", "--curve", "[[0,")
    assert code == 2
    assert "bad curve JSON" in err


def test_curve_analyze_irrational_maps_to_exit_2(capsys):
    curve = json.dumps([["0", "0", "0", "1"], ["0", "0", "0", "-1"], ["0", "4"]])
    code, _, err = run(capsys, "curve-analyze", "--curve", curve)
    assert code == 2
    assert "error (400)" in err


def test_argparse_errors_return_2(capsys):
    assert main([]) == 2
    capsys.readouterr()
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
    assert main(["relations-check"]) == 2  # --n is required by argparse
    capsys.readouterr()


def test_json_format_matrix_round_trips(capsys):
    code, out, _ = run(
        capsys, "krammer-matrix", "--n", "3", "--word", "s1 s2", "--format", "json"
    )
    assert code == 0
    body = json.loads(out)
    m = PolyMatrix.from_json(
        {"rows": body["rows"], "cols": body["cols"], "entries": body["entries"]}
    )
    from krampoly.braid import BraidWord
    from krampoly.representations import krammer_word

    assert m == krammer_word(BraidWord.parse("s1 s2", 3))

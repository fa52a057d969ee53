"""End-to-end command line coverage, run in process via cli.main."""
import io
import json
import types

import pytest

from gradelab import cli


def run(capsys, *argv):
    rc = cli.main(list(argv))
    return rc, capsys.readouterr().out


def run_json(capsys, *argv):
    rc, out = run(capsys, *argv, "--format", "json")
    return rc, json.loads(out)


def feed_stdin(monkeypatch, text: str):
    fake = types.SimpleNamespace(
        read=lambda: text, buffer=io.BytesIO(text.encode("utf-8")))
    monkeypatch.setattr(cli.sys, "stdin", fake)


def test_show_then_verify_round_trip(capsys, monkeypatch):
    rc, out = run(capsys, "grading", "show", "--catalog", "g1",
                  "--format", "json")
    assert rc == 0
    feed_stdin(monkeypatch, out)
    rc, report = run_json(capsys, "grading", "verify", "--input", "-")
    assert rc == 0
    assert report["is_grading"] is True
    assert report["labels_additive"] is True
    assert report["dims"] == [2, 1, 1, 1, 1, 1, 1]
    assert "input_sha256" in report


def test_show_human_output(capsys):
    rc, out = run(capsys, "grading", "show", "--catalog", "g2")
    assert rc == 0
    assert "7 parts" in out
    assert "labels in Z2 x Z2 x Z2" in out
    assert "E12+E21" in out.replace(" ", "")


def test_verify_accepts_named_basis_rows(capsys, tmp_path):
    doc = {"n": 3, "parts": [
        {"basis": ["H1", "H2"]},
        {"basis": ["E12"]}, {"basis": ["E23"]}, {"basis": ["E13"]},
        {"basis": ["E31"]}, {"basis": ["E32"]}, {"basis": ["E21"]},
    ]}
    path = tmp_path / "cartan.json"
    path.write_text(json.dumps(doc))
    rc, report = run_json(capsys, "grading", "verify", "--input", str(path))
    assert rc == 0
    assert report["is_grading"] is True
    assert report["labels_additive"] is None


def test_verify_flags_a_broken_decomposition(capsys, tmp_path):
    doc = {"n": 3, "parts": [
        {"basis": ["H1", "H2"]},
        {"basis": ["E12"]}, {"basis": ["E23"]}, {"basis": ["E13 + H1"]},
        {"basis": ["E31"]}, {"basis": ["E32"]}, {"basis": ["E21"]},
    ]}
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    rc, report = run_json(capsys, "grading", "verify", "--input", str(path))
    assert rc == 1
    assert report["is_grading"] is False
    assert report["violation"] is not None


def test_label_search_exit_codes(capsys):
    rc, report = run_json(capsys, "grading", "label", "--catalog", "g1",
                          "--group", "7")
    assert rc == 0 and report["found"] is True
    assert sorted(map(tuple, report["labels"])) == [(k,) for k in range(7)]
    rc, report = run_json(capsys, "grading", "label", "--catalog", "g4",
                          "--group", "8")
    assert rc == 1 and report["found"] is False


def test_coarsen_keeps_or_breaks_the_axiom(capsys):
    rc, report = run_json(capsys, "grading", "coarsen", "--catalog", "g1",
                          "--merge", "1,6")
    assert rc == 0
    assert report["is_grading"] is True
    assert sorted(report["dims"], reverse=True) == [2, 2, 1, 1, 1, 1]
    rc, report = run_json(capsys, "grading", "coarsen", "--catalog", "g4",
                          "--merge", "0,1", "--merge", "2,3",
                          "--merge", "4,7", "--merge", "5,6")
    assert rc == 1
    assert report["is_grading"] is False


def test_normalizer_check_verdicts(capsys):
    rc, report = run_json(capsys, "normalizer", "check", "--catalog", "g1",
                          "--auto", "AdB1")
    assert rc == 0
    assert report["normalizes"] is True
    assert report["cycles"] == "(1 2 4)(3 6 5)"
    rc, report = run_json(capsys, "normalizer", "check", "--catalog", "g4",
                          "--auto", "AdH")
    assert rc == 1
    assert report["normalizes"] is False


def test_quotient_human_summary(capsys):
    rc, out = run(capsys, "normalizer", "quotient", "--catalog", "g3")
    assert rc == 0
    assert "order 4, exponent 2" in out


def test_quotient_json_report(capsys):
    rc, report = run_json(capsys, "normalizer", "quotient", "--catalog", "g2")
    assert rc == 0
    assert report["order"] == 24
    assert report["exponent"] == 12
    assert report["element_order_profile"] == {"1": 1, "2": 9, "3": 8, "4": 6}
    assert len(report["elements"]) == 24
    rc, report = run_json(capsys, "normalizer", "inner", "--catalog", "g1")
    assert rc == 0
    assert report["order"] == 6


def test_linearize_golden_and_refusal(capsys):
    rc, report = run_json(capsys, "normalizer", "linearize", "--catalog", "g4",
                          "--auto", "AdS")
    assert rc == 0
    assert report["matrix"] == [[0, 1], [2, 0]]
    assert report["det_mod_3"] == 1
    rc, report = run_json(capsys, "normalizer", "linearize", "--catalog", "g4",
                          "--auto", "AdH")
    assert rc == 1
    assert report["normalizes"] is False


def test_contract_equations_json(capsys):
    rc, report = run_json(capsys, "contract", "equations", "--catalog", "g4")
    assert rc == 0
    assert len(report["variables"]) == 36
    assert len(report["equations"]) == 48
    assert len(report["free_variables"]) == 12
    for eq in report["equations"]:
        assert eq["rhs_zero"] is False
        assert len(eq["monomials"]) >= 2


def test_contract_solve_with_orbits(capsys):
    rc, report = run_json(capsys, "contract", "solve", "--catalog", "g2",
                          "--orbits")
    assert rc == 0
    assert report["constrained_solution_count"] == 779
    assert report["total_solutions"] == 99712
    assert report["solutions_shown"] == 20  # default --limit
    orbits = report["orbits"]
    assert orbits["invariant"] is True
    assert orbits["quotient_order"] == 24
    assert orbits["count"] == 75
    assert len(orbits["orbits"]) == 75
    assert sum(orbits["size_histogram"].values()) == 75


def test_json_output_is_byte_deterministic(capsys):
    _, first = run(capsys, "normalizer", "quotient", "--catalog", "g2",
                   "--format", "json")
    _, second = run(capsys, "normalizer", "quotient", "--catalog", "g2",
                    "--format", "json")
    assert first == second
    _, serial = run(capsys, "contract", "solve", "--catalog", "g1",
                    "--format", "json", "--jobs", "1")
    _, parallel = run(capsys, "contract", "solve", "--catalog", "g1",
                      "--format", "json", "--jobs", "3")
    assert serial == parallel


def test_selfcheck_single_checks(capsys):
    rc, report = run_json(capsys, "selfcheck", "--only", "3")
    assert rc == 0
    assert report["failed"] == 0
    assert report["results"][0]["passed"] is True
    # the published order-18 entry is incompatible with the computed group,
    # so this check reports the discrepancy and fails by design
    rc, report = run_json(capsys, "selfcheck", "--only", "4")
    assert rc == 1
    assert report["failed"] == 1
    assert "published 18" in report["results"][0]["detail"]


def test_bad_group_spec_is_a_usage_error(capsys):
    with pytest.raises(SystemExit):
        cli.main(["grading", "label", "--catalog", "g1", "--group", "bogus"])
    with pytest.raises(SystemExit):
        cli.main(["grading", "verify"])


def test_unknown_catalog_is_rejected(capsys):
    with pytest.raises(SystemExit):
        cli.main(["grading", "show", "--catalog", "g9"])

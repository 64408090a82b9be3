"""End-to-end tests of the command-line driver via ``main(argv)``."""

import json

import pytest

from k3auto.cli import main
from k3auto.verify import SCENARIOS, ScenarioResult


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- lattice


def test_lattice_json(capsys):
    code, out, _ = run(capsys, ["--json", "lattice", "U(11)"])
    assert code == 0
    report = json.loads(out)
    assert report["rank"] == 2
    assert report["det"] == -121
    assert report["signature"] == [1, 1]
    assert report["discriminant_group"] == [11, 11]
    assert report["discriminant_order"] == 121
    assert report["even"] is True
    assert report["eleven_elementary"] is True


def test_lattice_text(capsys):
    code, out, _ = run(capsys, ["--text", "lattice", "U + A10"])
    assert code == 0
    assert "rank 12" in out
    assert "det -11" in out
    assert "signature (1, 11)" in out
    assert "11-elementary: yes" in out


def test_lattice_bad_expression_is_usage_error(capsys):
    code, _, _ = run(capsys, ["lattice", "U + Q5"])
    assert code == 2


# --------------------------------------------------------- surface analyze


def test_surface_analyze_json(capsys):
    code, out, _ = run(
        capsys, ["surface", "analyze", "--a", "0", "--b", "t^11 - 1"]
    )
    assert code == 0
    report = json.loads(out)
    assert report["euler_total"] == 24
    assert report["expected_euler"] == 24
    assert report["surface"] == "K3"
    assert report["relatively_minimal"] is True
    first = report["fibers"][0]
    assert first["place"] == "t^11 - 1"
    assert first["type"] == "II"
    assert first["v_a"] is None  # omega valuation serializes to null
    assert first["v_b"] == 1


def test_surface_analyze_text(capsys):
    code, out, _ = run(
        capsys, ["--text", "surface", "analyze", "--a", "0", "--b", "t^11 - 1"]
    )
    assert code == 0
    assert "surface class: K3" in out
    assert "Euler total 24" in out
    assert "t^11 - 1: degree 11, type II" in out


def test_surface_analyze_quadratic_field(capsys):
    code, out, _ = run(capsys, [
        "surface", "analyze",
        "--a", "1", "--b", "t^11 - 2/9*w", "--field", "w2=-3",
    ])
    assert code == 0
    report = json.loads(out)
    table = [(f["place"], f["type"]) for f in report["fibers"]]
    assert table == [
        ("t", "I11"),
        ("t^11 - 4/9*w", "I1"),
        ("t^11 - 2/9*w", "I0"),
        ("infinity", "II"),
    ]
    assert report["surface"] == "K3"


def test_leading_minus_polynomials_are_accepted(capsys):
    # argv normalization must keep "-3*t^2" out of argparse's flag parsing
    code, out, _ = run(
        capsys, ["surface", "analyze", "--a", "-3*t^2", "--b", "t^7 + 2*t^3"]
    )
    assert code == 0
    assert json.loads(out)["euler_total"] > 0


def test_identically_singular_model_is_invalid(capsys):
    # a = -3t^2, b = 2t^3 gives 4a^3 + 27b^2 = 0 identically
    code, _, _ = run(
        capsys, ["surface", "analyze", "--a", "-3*t^2", "--b", "2*t^3"]
    )
    assert code == 3


def test_surface_analyze_parse_error(capsys):
    code, _, _ = run(capsys, ["surface", "analyze", "--a", "t +", "--b", "1"])
    assert code == 2


@pytest.mark.parametrize("field", ["w2=0", "w2=4", "w2=x", "d=-3"])
def test_bad_field_spec_is_usage_error(capsys, field):
    code, _, _ = run(
        capsys, ["surface", "analyze", "--a", "0", "--b", "t", "--field", field]
    )
    assert code == 2


# ------------------------------------------------------------ verify paper


def test_verify_paper_all(capsys):
    code, out, _ = run(capsys, ["verify", "paper"])
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert len(report["scenarios"]) == len(SCENARIOS)
    assert all(s["status"] == "pass" for s in report["scenarios"])


def test_verify_paper_single_scenario_text(capsys):
    code, out, _ = run(capsys, ["--text", "verify", "paper", "lemma9"])
    assert code == 0
    assert "[PASS] lemma9" in out
    assert out.strip().endswith("1/1 scenarios pass")


def test_verify_paper_unknown_scenario(capsys):
    code, _, _ = run(capsys, ["verify", "paper", "lemma99"])
    assert code == 2


def test_verify_paper_failure_exit_code(capsys, monkeypatch):
    broken = lambda: ScenarioResult("control", "fail", 1, 2, "anchor")
    monkeypatch.setitem(SCENARIOS, "control", broken)
    code, out, _ = run(capsys, ["verify", "paper"])
    assert code == 1
    assert json.loads(out)["passed"] is False


# -------------------------------------------------------------- enumerate


def write_scenario(tmp_path, payload):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_enumerate_fiber_orbits(capsys, tmp_path):
    path = write_scenario(tmp_path, {
        "kind": "fiber_orbits",
        "total_euler": 24,
        "allowed_at_zero": ["I0", "II"],
        "allowed_at_inf": ["I0", "II"],
        "orbit_allowed": ["I1", "I2", "II"],
    })
    code, out, _ = run(capsys, ["enumerate", path])
    assert code == 0
    report = json.loads(out)
    assert report["kind"] == "fiber_orbits"
    assert report["count"] == 3
    orbits = sorted(tuple(c["orbits"]) for c in report["configs"])
    assert orbits == [("I1", "I1"), ("I2",), ("II",)]
    assert all(c["fixed"] == ["I0", "II"] for c in report["configs"])


def test_enumerate_order22(capsys, tmp_path):
    path = write_scenario(tmp_path, {"kind": "order22", "scenario": "lemma9"})
    code, out, _ = run(capsys, ["enumerate", path])
    assert code == 0
    report = json.loads(out)
    assert report["scenario"] == "lemma9"
    assert report["survivors"] == 0
    assert len(report["candidates"]) == 6


def test_enumerate_lefschetz(capsys, tmp_path):
    path = write_scenario(tmp_path, {
        "kind": "lefschetz",
        "pattern": "S: [1*4, -1*8]; T: [Phi(11)]",
    })
    code, out, _ = run(capsys, ["enumerate", path])
    assert code == 0
    report = json.loads(out)
    assert report["lefschetz"] == -3
    assert report["pattern"] == "S: [1*4, -1*8]; T: [Phi(11)]"
    assert report["algebraic_trace"] == -4
    assert report["transcendental_trace"] == -1


def test_enumerate_lefschetz_text(capsys, tmp_path):
    path = write_scenario(tmp_path, {
        "kind": "lefschetz",
        "pattern": "S: [1*22]; T: []",
    })
    code, out, _ = run(capsys, ["--text", "enumerate", path])
    assert code == 0
    assert "= 24" in out


def test_enumerate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, ["enumerate", str(tmp_path / "nope.json")])
    assert code == 2
    assert "cannot read" in err


def test_enumerate_invalid_json(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    code, _, err = run(capsys, ["enumerate", str(path)])
    assert code == 2
    assert "not valid JSON" in err


def test_enumerate_unknown_kind(capsys, tmp_path):
    path = write_scenario(tmp_path, {"kind": "mystery"})
    code, _, err = run(capsys, ["enumerate", path])
    assert code == 2
    assert "unknown scenario kind" in err


def test_enumerate_missing_key(capsys, tmp_path):
    path = write_scenario(tmp_path, {"kind": "lefschetz"})
    code, _, err = run(capsys, ["enumerate", path])
    assert code == 2
    assert "missing key" in err


def test_enumerate_rank_mismatch_pattern(capsys, tmp_path):
    path = write_scenario(tmp_path, {
        "kind": "lefschetz",
        "pattern": "S: [1*4]; T: [Phi(11)]",  # rank 14, not 22
    })
    code, _, _ = run(capsys, ["enumerate", path])
    assert code == 2


# ------------------------------------------------------- format resolution


def test_env_format_text(capsys, monkeypatch):
    monkeypatch.setenv("K3_REPORT_FORMAT", "text")
    code, out, _ = run(capsys, ["lattice", "U"])
    assert code == 0
    assert "rank 2" in out and not out.lstrip().startswith("{")


def test_env_format_invalid(capsys, monkeypatch):
    monkeypatch.setenv("K3_REPORT_FORMAT", "yaml")
    code, _, _ = run(capsys, ["lattice", "U"])
    assert code == 2


def test_format_flag_works_before_and_after_subcommand(capsys):
    for argv in (["--text", "lattice", "U"], ["lattice", "U", "--text"],
                 ["lattice", "--text", "U"]):
        code, out, _ = run(capsys, argv)
        assert code == 0
        assert "rank 2" in out and not out.lstrip().startswith("{")


def test_explicit_flag_overrides_env(capsys, monkeypatch):
    monkeypatch.setenv("K3_REPORT_FORMAT", "text")
    code, out, _ = run(capsys, ["--json", "lattice", "U"])
    assert code == 0
    assert json.loads(out)["rank"] == 2


def test_json_output_is_deterministic(capsys):
    _, first, _ = run(capsys, ["verify", "paper"])
    _, second, _ = run(capsys, ["verify", "paper"])
    assert first == second


def test_missing_subcommand_is_usage_error(capsys):
    code, _, _ = run(capsys, ["surface"])
    assert code == 2

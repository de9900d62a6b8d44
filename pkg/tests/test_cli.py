"""CLI reports: determinism, golden files, exit codes."""

import json
import os
import subprocess
import sys
from pathlib import Path

GOLDEN_DIR = Path(os.environ.get("SPINORLAB_GOLDEN_DIR", Path(__file__).parent / "golden"))


def run_cli(*args, expect=0):
    result = subprocess.run(
        [sys.executable, "-m", "spinorlab.cli", *args],
        capture_output=True,
        text=True,
    )
    assert result.returncode == expect, result.stderr or result.stdout
    return result


def test_classify_report():
    result = run_cli("classify", "--p", "4", "--q", "4")
    payload = json.loads(result.stdout)
    assert payload["ring"] == "R"
    assert payload["size"] == 16
    assert payload["even_sub"] == {"p": 4, "q": 3}
    assert all(payload["verdicts"].values())


def test_classify_textbook_cases():
    payload = json.loads(run_cli("classify", "--p", "3", "--q", "1").stdout)
    assert payload["ring"] == "R" and payload["size"] == 4
    payload = json.loads(run_cli("classify", "--p", "1", "--q", "0").stdout)
    assert payload["even_sub"] == {"p": 0, "q": 0}
    assert payload["factorization"] is None


def test_classify_even_sub_multiplicity_chain():
    payload = json.loads(run_cli("classify", "--p", "4", "--q", "3").stdout)
    assert payload["multiplicity"] == 2 and payload["size"] == 8 and payload["ring"] == "R"


def test_xi_golden_files():
    for n in (1, 2):
        result = run_cli("xi", "--n", str(n))
        golden = (GOLDEN_DIR / f"xi_n{n}.json").read_text(encoding="utf-8")
        assert result.stdout == golden


def test_xi_evaluated_zero_point():
    result = run_cli("xi", "--n", "2", "--x", "0,0,0,0,0")
    payload = json.loads(result.stdout)
    assert payload["symbolic"] is False
    assert all(v == "0" for row in payload["rows"] for v in row)


def test_xi_rank_three_self_check_passes():
    payload = json.loads(run_cli("xi", "--n", "3").stdout)
    assert payload["verdicts"]["square_identity"] is True
    assert len(payload["rows"]) == 8


def test_kernel_worked_point():
    result = run_cli("kernel", "--n", "2", "--x", "0,1,1,0,0")
    payload = json.loads(result.stdout)
    assert payload["kernel_dimension"] == 2
    assert payload["basis"][0] == {"a": "1", "a1": "0", "a2": "0", "a12": "0"}
    assert payload["basis"][1] == {"a": "0", "a1": "0", "a2": "1", "a12": "0"}


def test_kernel_rejects_off_quadric_point():
    result = run_cli("kernel", "--n", "2", "--x", "1,0,0,0,0", expect=1)
    assert "absolute" in result.stderr


def test_generator_roundtrip_report():
    result = run_cli("generator", "--n", "2", "--a", "1,0,0,0")
    payload = json.loads(result.stdout)
    assert payload["verdicts"]["roundtrip_recovers_ray"] is True
    assert payload["recovered_spinor"]["a"] == "1"
    assert payload["row_masks"] == [0, 1, 2]


def test_generator_low_grade_input():
    # scalar, a^1, a^2, a^12 for n=2 in low-grade form: 1 + 2 + 1 values
    result = run_cli("generator", "--n", "2", "--a", "1,0,0,1")
    payload = json.loads(result.stdout)
    assert payload["spinor"]["a12"] == "1"


def test_spin_check_identity_passes():
    result = run_cli("spin-check", "--p", "2", "--q", "0", "--s", "1")
    payload = json.loads(result.stdout)
    assert payload["is_spin"] and payload["is_spin_plus"]
    assert payload["verdicts"]["predicates_consistent"] is True


def test_spin_check_rejects_odd_element():
    run_cli("spin-check", "--p", "2", "--q", "0", "--s", "e1", expect=1)


def test_spin_check_interleaved_ordering():
    # e12 squares to +1 under the interleaved (2,2) signs: a boost element
    result = run_cli(
        "spin-check", "--p", "2", "--q", "2", "--s", "5/4 + 3/4*e12",
        "--ordering", "interleaved",
    )
    payload = json.loads(result.stdout)
    assert payload["norm"] == "1"
    assert payload["is_spin_plus"] is True


def test_motion_requires_exactly_one_source():
    run_cli("motion", "--n", "2", "--x", "0,1,1,0,0", expect=1)
    run_cli(
        "motion", "--n", "2", "--seed", "3", "--s", "1", "--x", "0,1,1,0,0", expect=1
    )


def test_motion_seeded_deterministic():
    args = ("motion", "--n", "2", "--seed", "11", "--x", "0,1,1,0,0")
    first = run_cli(*args).stdout
    second = run_cli(*args).stdout
    assert first == second
    payload = json.loads(first)
    assert payload["verdicts"]["form_preserved"] is True
    assert payload["verdicts"]["kernel_equivariance"] is True


def test_motion_on_spinor():
    result = run_cli("motion", "--n", "2", "--seed", "5", "--a", "1,0,0,0")
    payload = json.loads(result.stdout)
    assert payload["verdicts"]["image_satisfies_relations"] is True


def test_motion_with_explicit_element():
    # a boost in the interleaved (2,2) algebra: (5/4)^2 - (3/4)^2 = 1
    result = run_cli("motion", "--n", "2", "--s", "5/4 + 3/4*e12", "--x", "0,1,1,0,0")
    payload = json.loads(result.stdout)
    assert payload["verdicts"]["form_preserved"] is True
    assert payload["verdicts"]["kernel_equivariance"] is True


def test_xi_float_mode():
    result = run_cli("xi", "--n", "1", "--x", "1/2,0,0", "--mode", "float")
    payload = json.loads(result.stdout)
    assert payload["rows"][0][0] == -0.5
    assert payload["form_value"] == 0.25


def test_float_mode_and_csv():
    result = run_cli(
        "generator", "--n", "2", "--a", "3,4,0,0", "--mode", "float", "--format", "csv"
    )
    lines = result.stdout.splitlines()
    assert lines[0] == "key,value"
    normalized = {line.split(",", 1)[0]: line.split(",", 1)[1] for line in lines[1:]}
    assert normalized["normalization.spinor.a"] == "0.6"
    assert normalized["normalization.spinor.a1"] == "0.8"
    assert normalized["normalization.scale_sq"] == "25.0"


def test_out_file(tmp_path):
    target = tmp_path / "report.json"
    run_cli("classify", "--p", "1", "--q", "1", "--out", str(target))
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["ring"] == "R" and payload["size"] == 2


def test_bad_input_exit_codes():
    run_cli("xi", "--n", "0", expect=1)
    run_cli("kernel", "--n", "2", "--x", "1,2", expect=1)
    run_cli("generator", "--n", "2", "--a", "0,0,0,0", expect=1)

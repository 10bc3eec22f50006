"""CLI behavior: exit codes, JSON/CSV output, determinism."""

from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from quadorder.cli import eval_rational_expr, main, simplest_between


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def test_check_classic_holds(capsys):
    code, out, _ = run(capsys, "check", "midpoint", "uniform")
    assert code == 0
    assert json.loads(out) == {"outcome": "holds", "witness": None}


def test_check_right_hh_holds(capsys):
    code, out, _ = run(capsys, "check", "uniform", "trapezoid")
    assert code == 0
    assert json.loads(out)["outcome"] == "holds"


def test_check_trapezoid_vs_midpoint_fails(capsys):
    code, out, _ = run(capsys, "check", "trapezoid", "midpoint")
    assert code == 1
    assert json.loads(out)["witness"] == {"kind": "hinge", "s": "1/2", "gap": "1/4"}


def test_check_diagnose_includes_crossings_and_paths(capsys):
    lhs = '{"atoms": [{"t": "1/10", "w": "1/2"}, {"t": "9/10", "w": "1/2"}], "uniform": "0"}'
    code, out, _ = run(capsys, "check", lhs, "uniform", "--diagnose")
    assert code == 1
    blob = json.loads(out)
    assert blob["witness"] == {"kind": "hinge", "s": "1/2", "gap": "3/40"}
    assert blob["crossings"] == {
        "n": 3,
        "points": ["1/10", "1/2", "9/10"],
        "areas": ["1/200", "2/25", "2/25", "1/200"],
        "initial_sign": -1,
    }
    assert blob["paths"] == {"cumulative": "fails", "lemma": "fails"}


def test_check_flag_style_inputs(capsys):
    code, out, _ = run(capsys, "check", "--lhs", "midpoint", "--rhs", "uniform")
    assert code == 0


def test_check_reads_functional_files(tmp_path, capsys):
    path = tmp_path / "rule.json"
    path.write_text('{"atoms": [{"t": "1/2", "w": 1}], "uniform": 0}')
    code, out, _ = run(capsys, "check", str(path), "uniform")
    assert code == 0


def test_check_paper_convention(capsys):
    lhs = '{"pairs": [{"alpha": "3/4", "a": "1/4"}, {"alpha": "1/2", "a": "1/2"}, {"alpha": "1/4", "a": "1/4"}], "uniform": "0"}'
    code, out, _ = run(capsys, "check", lhs, "uniform", "--paper-convention")
    assert code == 0
    atoms = '{"atoms": [{"t": "1/2", "w": "1"}], "uniform": "0"}'
    code, _, err = run(capsys, "check", atoms, "uniform", "--paper-convention")
    assert code == 2
    assert "pairs" in err


def test_check_interval_rescaling_is_invariant(capsys):
    # The trapezoid rule written on [0, 2] must decide exactly like the
    # canonical one on [0, 1].
    scaled = '{"atoms": [{"t": "0", "w": "1/2"}, {"t": "2", "w": "1/2"}], "uniform": "0"}'
    code, out, _ = run(
        capsys, "check", "--lhs", "uniform", "--rhs", scaled, "--interval", "0", "2"
    )
    code_canon, out_canon, _ = run(capsys, "check", "uniform", "trapezoid")
    assert (code, out) == (code_canon, out_canon) == (0, out_canon)
    # and the midpoint of [-1, 1] is the canonical midpoint
    mid_scaled = '{"atoms": [{"t": "0", "w": "1"}], "uniform": "0"}'
    code, out, _ = run(
        capsys, "check", "--lhs", mid_scaled, "--rhs", "uniform", "--interval", "-1", "1"
    )
    assert code == 0
    assert json.loads(out)["outcome"] == "holds"


def test_check_bad_inputs_exit_2(capsys):
    code, _, err = run(capsys, "check", '{"atoms": [], "uniform": "1/2"}', "uniform")
    assert code == 2 and "mass" in err
    code, _, err = run(capsys, "check", "{not json", "uniform")
    assert code == 2
    code, _, err = run(capsys, "check", "no-such-preset.json", "uniform")
    assert code == 2
    code, _, err = run(capsys, "check", "midpoint", "uniform", "--interval", "1", "0")
    assert code == 2


def test_check_out_file(tmp_path, capsys):
    out_path = tmp_path / "verdict.json"
    code, out, _ = run(capsys, "check", "midpoint", "uniform", "--out", str(out_path))
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["outcome"] == "holds"


# ---------------------------------------------------------------------------
# threshold
# ---------------------------------------------------------------------------


def test_threshold_symmetric3(capsys):
    code, out, _ = run(
        capsys,
        "threshold",
        "--family", "symmetric3",
        "--sweep", "a=1/20:9/20:1/20",
        "--fix", "alpha=4/5",
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["threshold"] == "2/5"
    assert blob["attained"] is True
    assert blob["direction"] == "holds_below"
    assert blob["basis"] == "refined"


def test_threshold_range_cap(capsys):
    code, out, _ = run(
        capsys,
        "threshold",
        "--family", "symmetric3",
        "--sweep", "a=1/20:9/20:1/20",
        "--fix", "alpha=11/20",
    )
    blob = json.loads(out)
    assert blob["threshold"] == "1/2"
    assert blob["attained"] is False
    assert blob["basis"] == "range-cap"


def test_threshold_off_grid_boundary_found_exactly(capsys):
    code, out, _ = run(
        capsys,
        "threshold",
        "--family", "twoVsThree",
        "--sweep", "alpha=11/20:19/20:1/20",
        "--fix", "b1=1/3", "--fix", "b2=1/3", "--fix", "b3=1/3",
    )
    blob = json.loads(out)
    assert blob["threshold"] == "5/6"  # never a grid point
    assert blob["attained"] is True


def test_threshold_holds_above_direction(capsys):
    code, out, _ = run(
        capsys,
        "threshold",
        "--family", "endpoint4",
        "--sweep", "a=1/40:19/40:1/40",
        "--fix", "alpha=4/5",
    )
    blob = json.loads(out)
    assert blob["direction"] == "holds_above"
    assert blob["threshold"] == "1/10"
    assert blob["attained"] is True


def test_threshold_boundary_at_grid_edge(capsys):
    # alpha = 61/80 puts the boundary 2 - 2*alpha = 19/40 exactly on the last
    # grid point, so every grid point holds; the bound probe must still find
    # the true boundary instead of reporting the range cap.
    code, out, _ = run(
        capsys,
        "threshold",
        "--family", "symmetric3",
        "--sweep", "a=1/40:19/40:1/40",
        "--fix", "alpha=61/80",
    )
    blob = json.loads(out)
    assert blob["threshold"] == "19/40"
    assert blob["attained"] is True
    assert blob["basis"] == "refined"


def test_threshold_nothing_holds_is_an_error(capsys):
    code, _, err = run(
        capsys,
        "threshold",
        "--family", "endpoint4",
        "--sweep", "a=1/100:3/100:1/100",  # all below (1-alpha)/2 = 1/10
        "--fix", "alpha=4/5",
    )
    assert code == 2
    assert "no grid point holds" in err


def test_threshold_rejects_out_of_range_grid(capsys):
    code, _, err = run(
        capsys,
        "threshold",
        "--family", "symmetric3",
        "--sweep", "a=1/4:3/4:1/4",  # 1/2 and 3/4 outside (0, 1/2)
        "--fix", "alpha=4/5",
    )
    assert code == 2
    assert "outside the valid range" in err


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------


def test_scan_symmetric3_rows(capsys):
    code, out, _ = run(
        capsys,
        "scan",
        "--family", "symmetric3",
        "--sweep", "a=1/10:1/4:1/20",
        "--fix", "alpha=9/10",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "a,alpha,holds,case,witness_s"
    flags = [line.split(",")[2] for line in lines[1:]]
    # boundary is a* = 1/5; 1/10, 3/20, 1/5 hold, 1/4 fails
    assert flags == ["true", "true", "true", "false"]
    assert len(lines) == 5


def test_scan_endpoint4_rows(capsys):
    code, out, _ = run(
        capsys,
        "scan",
        "--family", "endpoint4",
        "--sweep", "a=1/20:3/20:1/20",
        "--fix", "alpha=4/5",
    )
    lines = out.strip().splitlines()
    flags = [line.split(",")[2] for line in lines[1:]]
    assert flags == ["false", "true", "true"]  # boundary a* = 1/10 holds


def test_scan_bp1_all_hold(capsys):
    code, out, _ = run(capsys, "scan", "--family", "bp1", "--sweep", "x=0:1/2:1/20")
    lines = out.strip().splitlines()
    assert len(lines) == 12
    assert all(line.split(",")[1] == "true" for line in lines[1:])


def test_scan_rows_reproducible_by_check(capsys):
    code, out, _ = run(
        capsys,
        "scan",
        "--family", "twoVsThree",
        "--sweep", "alpha=3/5:9/10:1/10",
    )
    lines = out.strip().splitlines()
    for line in lines[1:]:
        alpha, b1, b2, b3, holds = line.split(",")[:5]
        # rebuild the same instance and push it through check
        lhs_obj = {
            "atoms": [
                {"t": str(1 - F(alpha)), "w": "1/2"},
                {"t": alpha, "w": "1/2"},
            ]
        }
        rhs_obj = {
            "atoms": [
                {"t": "0", "w": b1},
                {"t": "1/2", "w": b2},
                {"t": "1", "w": b3},
            ]
        }
        code2, _, _ = run(capsys, "check", json.dumps(lhs_obj), json.dumps(rhs_obj))
        assert (code2 == 0) == (holds == "true")


def test_scan_custom_family_with_expressions(capsys):
    lhs = '{"atoms": [{"t": "p", "w": "1/2"}, {"t": "1-p", "w": "1/2"}], "uniform": "0"}'
    rhs = '{"atoms": [], "uniform": "1"}'
    code, out, _ = run(
        capsys,
        "scan",
        "--family", "custom",
        "--sweep", "p=1/10:1/2:1/10",
        "--lhs", lhs,
        "--rhs", rhs,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,holds,case,witness_s"
    flags = [line.split(",")[1] for line in lines[1:]]
    # symmetric two-atom rule vs uniform holds iff p >= 1/4
    assert flags == ["false", "false", "true", "true", "true"]


def test_scan_deterministic_bytes(capsys):
    args = ("scan", "--family", "bp1", "--sweep", "x=0:1/2:1/10")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_scan_out_file(tmp_path, capsys):
    out_path = tmp_path / "rows.csv"
    code, out, _ = run(
        capsys,
        "scan", "--family", "bp1", "--sweep", "x=0:1/2:1/4", "--out", str(out_path),
    )
    assert code == 0 and out == ""
    assert out_path.read_text().startswith("x,holds,case,witness_s\n")


# ---------------------------------------------------------------------------
# agree
# ---------------------------------------------------------------------------


def test_agree_summary_and_empty_jsonl(tmp_path, capsys):
    out_path = tmp_path / "disagreements.jsonl"
    code, out, _ = run(
        capsys,
        "agree", "two-vs-three", "--samples", "250", "--seed", "42",
        "--out", str(out_path),
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["samples"] == 250
    assert blob["disagreements"] == 0
    assert blob["holds"] + blob["fails"] == 250
    assert out_path.read_text() == ""


def test_agree_deterministic(capsys):
    _, first, _ = run(capsys, "agree", "three-node-lower", "--samples", "150", "--seed", "9")
    _, second, _ = run(capsys, "agree", "three-node-lower", "--samples", "150", "--seed", "9")
    assert first == second


def test_agree_rejects_bad_samples(capsys):
    code, _, err = run(capsys, "agree", "two-vs-three", "--samples", "0")
    assert code == 2


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def test_eval_rational_expr():
    assert eval_rational_expr("1/4") == F(1, 4)
    assert eval_rational_expr("1-p", {"p": F(1, 10)}) == F(9, 10)
    assert eval_rational_expr("(1-a)/2", {"a": F(1, 3)}) == F(1, 3)
    assert eval_rational_expr("-3/4 + 1") == F(1, 4)
    assert eval_rational_expr("0.9") == F(9, 10)
    assert eval_rational_expr("2*a*b", {"a": F(1, 2), "b": F(1, 3)}) == F(1, 3)
    with pytest.raises(ValueError):
        eval_rational_expr("1/0")
    with pytest.raises(ValueError):
        eval_rational_expr("q + 1", {"p": F(1)})
    with pytest.raises(ValueError):
        eval_rational_expr("1 +")


def test_simplest_between():
    assert simplest_between(F(33, 40), F(67, 80)) == F(5, 6)
    assert simplest_between(F(2, 5), F(2, 5)) == F(2, 5)
    assert simplest_between(F(2, 5), F(9, 20)) == F(2, 5)
    assert simplest_between(F(1, 3), F(1, 2)) == F(1, 2)
    assert simplest_between(F(-1, 3), F(1, 7)) == 0
    assert simplest_between(F(5, 2), F(7, 2)) == 3
    assert simplest_between(F(26, 100), F(49, 100)) == F(1, 3)
    assert simplest_between(F(-1, 2), F(-1, 3)) == F(-1, 2)

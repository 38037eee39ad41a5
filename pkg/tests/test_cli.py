"""End-to-end command-line behaviour, driven through main(argv) in-process."""

import json
import os

import pytest

from metric_affine.cli import (EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_PASS,
                               main)

FORM_GF3_LINE = '{"dim": 1, "field": "GF(3)", "upper": [1]}\n'
FORM_GF3_PLANE = '{"dim": 2, "field": "GF(3)", "upper": [1, 0, 1]}\n'
FORM_DEGENERATE = '{"dim": 2, "field": "GF(3)", "upper": [1, 0, 0]}\n'
FORM_RATIONAL = '{"dim": 2, "field": "Q", "upper": ["1/2", 0, 1]}\n'
FORM_GF5_HYPERBOLIC = '{"dim": 2, "field": "GF(5)", "upper": [1, 0, 4]}\n'


@pytest.fixture
def form_file(tmp_path):
    def write(text, name="in.form"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return write


def test_lift_frozen_output(form_file, capsys):
    assert main(["lift", form_file(FORM_GF3_LINE)]) == EXIT_PASS
    assert capsys.readouterr().out == (
        "# input: x1^2 [GF(3), dim 1]\n"
        "# canonical matrix of the lift:\n"
        "# [0 0]\n"
        "# [0 1]\n"
        "# a1^2\n"
        '{"dim": 2, "field": "GF(3)", "upper": [0, 0, 1]}\n')


def test_lift_output_is_itself_a_form_file(form_file, capsys, tmp_path):
    main(["lift", form_file(FORM_GF3_LINE)])
    lifted = tmp_path / "lifted.form"
    lifted.write_text(capsys.readouterr().out, encoding="utf-8")
    # comments pass through the reader, so drop gets back the original
    assert main(["drop", str(lifted)]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out.endswith(FORM_GF3_LINE)
    assert "# input: a1^2 [GF(3), dim 2]" in out


def test_lift_then_drop_round_trips_rational(form_file, capsys, tmp_path):
    main(["lift", form_file(FORM_RATIONAL)])
    lifted = tmp_path / "lifted.form"
    lifted.write_text(capsys.readouterr().out, encoding="utf-8")
    assert main(["drop", str(lifted)]) == EXIT_PASS
    assert capsys.readouterr().out.endswith(FORM_RATIONAL)


def test_lift_degenerate_names_the_radical(form_file, capsys):
    assert main(["lift", form_file(FORM_DEGENERATE)]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert "degenerate" in err and "(0, 1)" in err


def test_drop_rejects_undroppable(form_file, capsys):
    assert main(["drop", form_file(FORM_GF3_PLANE)]) == EXIT_INPUT
    assert "cannot be dropped" in capsys.readouterr().err


def test_eval(form_file, capsys):
    assert main(["eval", form_file(FORM_GF3_LINE), "2"]) == EXIT_PASS
    assert capsys.readouterr().out.endswith("Q(2) = 1\n")
    assert main(["eval", form_file(FORM_RATIONAL), "1/3,2"]) == EXIT_PASS
    assert capsys.readouterr().out.endswith("Q(1/3, 2) = 73/18\n")


def test_eval_wrong_arity(form_file, capsys):
    assert main(["eval", form_file(FORM_GF3_PLANE), "1"]) == EXIT_INPUT
    assert "expected 2 coordinates" in capsys.readouterr().err


def test_groups_frozen_output(form_file, capsys):
    assert main(["groups", form_file(FORM_GF3_LINE)]) == EXIT_PASS
    assert capsys.readouterr().out == (
        "# form: x1^2 [GF(3), dim 1]\n"
        "|GL|: 2\n|O|: 2\n|O'|: 2\n"
        "radical dim: 0\n"
        "reflections: 2\n"
        "reflection closure order: 2\n"
        "reflections generate weak group: yes\n"
        "exceptional case: none\n")


def test_groups_rejects_rational_field(form_file, capsys):
    assert main(["groups", form_file(FORM_RATIONAL)]) == EXIT_INPUT
    assert "finite field" in capsys.readouterr().err


def test_bad_form_file_is_input_error(form_file, capsys):
    assert main(["lift", form_file("{not json")]) == EXIT_INPUT
    assert main(["lift", "/nonexistent/path.form"]) == EXIT_INPUT
    assert main(["lift", form_file(
        '{"dim": 2, "field": "GF(3)", "upper": [1]}')]) == EXIT_INPUT
    capsys.readouterr()


def test_verify_lemmas(form_file, capsys):
    assert main(["verify", "lemmas", "--field", "GF(2)", "--dim", "2"]) \
        == EXIT_PASS
    out = capsys.readouterr().out
    assert "direction cases: a=6 b=6 c=6 d=6" in out
    assert out.rstrip().endswith("PASS")


def test_verify_proposition(capsys):
    assert main(["verify", "proposition", "--field", "3", "--dim", "1"]) \
        == EXIT_PASS
    out = capsys.readouterr().out
    assert "non-degenerate-polar forms: 2" in out
    assert out.rstrip().endswith("PASS")


def test_verify_theorem_exceptional_note(capsys):
    assert main(["verify", "theorem", "--field", "GF(3)", "--dim", "1"]) \
        == EXIT_PASS
    out = capsys.readouterr().out
    assert "note: sporadic size" in out


def test_verify_theorem_uniqueness_line(capsys):
    assert main(["verify", "theorem", "--field", "GF(4)", "--dim", "1"]) \
        == EXIT_PASS
    out = capsys.readouterr().out
    assert "every solution is a unit scaling of the lift: verified" in out
    assert "solution pairs: motion 0, weak 0" in out


def test_verify_tables_t3(capsys):
    assert main(["verify", "tables", "--case", "t3"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert " x1^2   | a1^2" in out
    assert " 2*x1^2 | 2*a1^2" in out
    assert "matches embedded fixture: yes" in out


def test_verify_tables_t4_renders_blocks(capsys):
    assert main(["verify", "tables", "--case", "t4"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "x1^2 + x1*x2 + x2^2" in out
    assert out.count("PASS") == 1


def test_verify_tables_t1_covers_both_fields(capsys):
    assert main(["verify", "tables", "--case", "t1"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "over GF(2), dim 0" in out and "over GF(4), dim 0" in out
    assert out.count("PASS") == 2


def test_verify_projective(capsys):
    assert main(["verify", "projective", "--field", "GF(3)", "--dim", "0"]) \
        == EXIT_PASS
    out = capsys.readouterr().out
    assert "excluded pairs hit: 2" in out
    assert "exclusion is genuine (linear groups differ): yes" in out


def test_verify_quadric_ok(form_file, capsys):
    assert main(["verify", "quadric", form_file(FORM_GF5_HYPERBOLIC)]) \
        == EXIT_PASS
    out = capsys.readouterr().out
    assert "status: ok" in out and "quadric points: 2" in out


def test_verify_quadric_empty(form_file, capsys):
    assert main(["verify", "quadric", form_file(FORM_GF3_PLANE)]) == EXIT_PASS
    assert "status: empty-quadric" in capsys.readouterr().out


def test_verify_quadric_out_of_scope(form_file, capsys):
    binary = '{"dim": 2, "field": "GF(2)", "upper": [0, 1, 0]}\n'
    assert main(["verify", "quadric", form_file(binary)]) == EXIT_INPUT
    assert "char" in capsys.readouterr().err


# the budget tests steer to GF(7) on purpose: groups over other fields may
# already be memoized by earlier tests in the same process, and a cache hit
# legitimately bypasses the budget; nothing else enumerates GF(7) groups,
# and these calls always fail before anything lands in a cache

def test_budget_flag_exit(capsys):
    assert main(["--budget", "5", "verify", "proposition",
                 "--field", "GF(7)", "--dim", "1"]) == EXIT_BUDGET
    err = capsys.readouterr().err
    assert "budget exceeded" in err and "METRIC_AFFINE_BUDGET" in err


def test_budget_env_exit(form_file, capsys):
    gf7 = '{"dim": 2, "field": "GF(7)", "upper": [1, 0, 1]}\n'
    os.environ["METRIC_AFFINE_BUDGET"] = "5"
    try:
        assert main(["groups", form_file(gf7)]) == EXIT_BUDGET
    finally:
        del os.environ["METRIC_AFFINE_BUDGET"]
    assert "need 2016 > budget 5" in capsys.readouterr().err


def test_records_mode_is_json_lines(form_file, capsys):
    assert main(["--format", "records", "lift", form_file(FORM_GF3_LINE)]) \
        == EXIT_PASS
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1
    rec = json.loads(lines[0])
    assert rec["record"] == "lift"
    assert rec["result"] == {"dim": 2, "field": "GF(3)", "poly": "a1^2",
                             "upper": [0, 0, 1]}
    # keys are emitted sorted, so the byte stream is canonical
    assert lines[0] == json.dumps(rec, sort_keys=True)


def test_records_mode_verify(capsys):
    assert main(["--format", "records", "verify", "tables", "--case", "t3"]) \
        == EXIT_PASS
    rec = json.loads(capsys.readouterr().out)
    assert rec["ok"] is True and rec["case"] == "t3"


def test_output_is_deterministic(form_file, capsys):
    path = form_file(FORM_GF5_HYPERBOLIC)
    main(["verify", "quadric", path])
    first = capsys.readouterr().out
    main(["verify", "quadric", path])
    assert capsys.readouterr().out == first

import io
import json

import pytest

from freefield.cli import main
from freefield.suites import SUITES, run_suite


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_verify_conformal_text():
    code, text = run("verify", "conformal", "--p", "2")
    assert code == 0
    assert "c = -2" in text


def test_verify_json_schema():
    code, text = run("verify", "orbifold", "--m", "2", "--p", "2", "--format", "json")
    assert code == 0
    d = json.loads(text)
    assert set(d) == {"suite", "inputs", "checks", "summary", "ok", "timing"}
    assert d["suite"] == "orbifold"
    (c,) = d["checks"]
    assert set(c) == {"id", "status", "lhs", "rhs", "anchor"}
    assert c["status"] == "info" and "vacuous" in c["lhs"]


def test_json_is_reproducible_modulo_timing():
    outs = []
    for _ in range(2):
        _, text = run("verify", "action-table", "--format", "json")
        d = json.loads(text)
        d.pop("timing")
        outs.append(json.dumps(d, sort_keys=True))
    assert outs[0] == outs[1]


def test_suite_option_form():
    code, _ = run("verify", "--suite", "fusion-decide")
    assert code == 0


def test_unknown_suite_is_usage_error():
    code, _ = run("verify", "no-such-suite")
    assert code == 2


def test_bad_rational_is_usage_error(capsys):
    code, _ = run("verify", "zhu-constraints", "--s", "1/*2")
    assert code == 2
    assert "position" in capsys.readouterr().err


def test_missing_command_is_usage_error():
    code, _ = run()
    assert code == 2


def test_ope_table_has_schur_row():
    code, text = run("ope", "e[-a]", "e[a]", "0..4", "--p", "2")
    assert code == 0
    assert "u_3 v: e[0]" in text
    assert "u_0 v: -1/6*a(-1)^3*e[0] + 1/2*a(-1)*a(-2)*e[0] - 1/3*a(-3)*e[0]" in text


def test_ope_parse_error_position(capsys):
    code, _ = run("ope", "e[-a", "e[a]", "0..2")
    assert code == 2
    assert "position" in capsys.readouterr().err


def test_ope_rank_two():
    code, text = run("ope", "--format", "json", "--", "e[-2*a2]", "e[a1 + a2]", "-1..1")
    assert code == 0
    assert len(json.loads(text)["checks"]) == 3


def test_zhu_command():
    code, text = run("zhu", "--s", "sym", "--t", "sym")
    assert code == 0
    assert "zhu.quartic" in text and "zhu.cubic" in text and "[pass] zhu.p_divides_gcd" in text


def test_fusion_command_rejects_integer_sum():
    code, _ = run("fusion", "--t1", "1/2", "--t2", "1/2")
    assert code == 2


def test_fusion_command_reports_targets():
    code, text = run("fusion", "--t1", "1/2", "--t2", "1/3", "--format", "json")
    d = json.loads(text)
    ids = {c["id"]: c for c in d["checks"]}
    assert ids["fusion.targets"]["lhs"] == "['5/6', '-7/6']"
    # the multiplicity check fails, so the exit status is 1
    assert code == (0 if d["ok"] else 1)


def test_registry_is_complete():
    assert set(SUITES) == {
        "conformal", "screening", "sf-relations", "action-table", "log-module", "zhu-constraints",
        "fusion-decide", "fusion-p2", "lem1-crosscheck", "orbifold", "properties",
    }
    with pytest.raises(KeyError):
        run_suite("nope")

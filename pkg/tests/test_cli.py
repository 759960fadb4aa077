import json
import os
import subprocess
import sys

import pytest

from amalgkit.cli import main
from amalgkit.cli.parser import ParseError, ValidationError, parse_instance_text
from amalgkit.cli.report import EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_OK, Report

HERE = os.path.dirname(__file__)
INST = os.path.join(HERE, os.pardir, "instances")
GOLDEN = os.path.join(HERE, "golden")


def inst(name):
    return os.path.join(INST, name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def golden(name):
    with open(os.path.join(GOLDEN, name)) as fh:
        return fh.read()


# parsing


def test_parse_bindings():
    f = parse_instance_text("ring R = zmod 6; ideal J of R = {0,3}\n"
                            "module M over R = regular  # the ring itself\n"
                            "submodule F of M = {0,2,4}\n")
    assert [b.name for b in f.of_kind("submodule")] == ["F"]
    J = f.of_kind("ideal")[0]
    assert J.value.elements == (0, 3) and J.line == 1
    text = "ring R = zmod 6\nmodule M over R = regular\n"
    assert parse_instance_text(text).digest() == parse_instance_text(text).digest()
    assert parse_instance_text(text).digest() != parse_instance_text(text.replace("6", "8")).digest()


def test_parse_product_and_quotient():
    f = parse_instance_text("ring A = zmod 2; ring B = zmod 4\nring P = product [A, B]\n"
                            "ring Q = quotient P by {(0,0),(0,2)}\n")
    P = f.of_kind("ring")[2].value
    Q = f.of_kind("ring")[3].value
    assert P.size == 8 and Q.size == 4
    assert P.label == "P"


def test_module_quotient_verifies(capsys, tmp_path):
    path = tmp_path / "q.inst"
    path.write_text("ring R = zmod 12\nmodule M over R = regular\n"
                    "module Q = quotient M by {0,4,8}\nsubmodule F of Q = {0}\n")
    code, out, _ = run(capsys, "check", str(path), "F")
    assert code == 1 and "prime: NO, witness a=2 m=2" in out and "2-absorbing: YES" in out
    assert run(capsys, "verify", "T3_4a", str(path))[0] == EXIT_OK


def test_parse_generated_ideal():
    f = parse_instance_text("ring R = zmod 12\nideal I of R = generated {8}\n")
    assert f.of_kind("ideal")[0].value.elements == (0, 4, 8)


@pytest.mark.parametrize("text,line", [
    ("ring R = zmod 6\nsubmodule F of M = {0}\n", 2),
    ("ring R = zmod\n", 1),
    ("ring R = zmod 6\nring R = zmod 3\n", 2),
    ("widget W = zmod 3\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as e:
        parse_instance_text(text)
    assert e.value.line == line
    assert f"line {line}" in str(e.value)


def test_validation_error_names_axiom_and_witness():
    with pytest.raises(ValidationError) as e:
        parse_instance_text("ring A = zmod 6\nring B = zmod 4\nhom f : A -> B = map [0,1,2,3,0,1]\n")
    assert e.value.binding == "f"
    assert e.value.axiom == "additive"
    assert tuple(e.value.witness) == (1, 5)


def test_invalid_ideal_is_rejected():
    with pytest.raises(ValidationError):
        parse_instance_text("ring R = zmod 6\nideal I of R = {0,1}\n")


# exit codes and output


def test_check_z30_is_counterexample(capsys):
    code, out, _ = run(capsys, "check", inst("z30.inst"), "F")
    assert code == EXIT_COUNTEREXAMPLE
    assert "2-absorbing: NO, witness a=2 b=3 m=5" in out


def test_check_json_matches_golden(capsys):
    code, out, _ = run(capsys, "check", inst("z30.inst"), "F", "--format", "json")
    assert code == 1 and out == golden("check_z30.json")


@pytest.mark.parametrize("argv,name", [
    (("amalgamate", "z6.inst"), "amalgamate_z6.json"),
    (("localize", "loc.inst"), "localize_z12.json"),
])
def test_reports_match_golden(capsys, argv, name):
    code, out, _ = run(capsys, argv[0], inst(argv[1]), "--format", "json")
    assert code == EXIT_OK
    assert out == golden(name)


def test_examples_golden(capsys):
    code, out, _ = run(capsys, "examples", "--format", "json")
    assert code == EXIT_OK and out == golden("examples.json")


def test_enumerate_text_golden(capsys):
    code, out, _ = run(capsys, "enumerate", inst("z6.inst"))
    assert code == EXIT_OK and out == golden("enumerate_z6.txt")


def test_passing_sweep_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "T3_4a,T3_4b", "--family", "zmod:2-6")
    assert code == EXIT_OK
    assert "T3_4a" in out


def test_verify_file(capsys):
    code, out, _ = run(capsys, "verify", "all", inst("hom.inst"), "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["exit_code"] == 0


def test_product_file_reports_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "C3_10_3", inst("prod.inst"))
    assert code == EXIT_COUNTEREXAMPLE
    assert "counterexample" in out


def test_malformed_file_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.inst"
    bad.write_text("ring R = zmod 6\nsubmodule F of M = {0}\n")
    code, out, err = run(capsys, "check", str(bad), "F")
    assert code == EXIT_INPUT and out == ""
    assert "line 2" in err


def test_missing_file_and_unknown_statement(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "none.inst"), "F")[0] == EXIT_INPUT
    assert run(capsys, "verify", "C3_11_1", "--family", "zmod:2-3")[0] == EXIT_INPUT


def test_budget_flag(capsys):
    code, _, err = run(capsys, "check", inst("z30.inst"), "F", "--budget", "100")
    assert code == EXIT_INPUT and "budget" in err.lower()
    assert run(capsys, "check", inst("z30.inst"), "F", "--budget", "inf")[0] == 1


# determinism and round trip


def test_json_round_trip_preserves_verdicts(capsys):
    _, out, _ = run(capsys, "verify", "P2_1,T3_4a", "--family", "zmod:2-6+product:2-3",
                    "--format", "json")
    rep = Report.from_json(out)
    assert rep.to_json() == out
    again = Report.from_json(rep.to_json())
    assert again.verdict_data() == rep.verdict_data()
    assert again.exit_code() == json.loads(out)["exit_code"]


def test_byte_identical_reruns(capsys):
    argv = ("verify", "T3_4a,L3_3", "--family", "zmod:2-8+random:4", "--seed", "5", "--format", "json")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    parallel = run(capsys, *argv, "--workers", "2")[1]
    assert first == second == parallel


def test_timing_only_on_request(capsys):
    out = run(capsys, "check", inst("z30.inst"), "F", "--format", "json")[1]
    assert "timing" not in json.loads(out)
    out = run(capsys, "check", inst("z30.inst"), "F", "--format", "json", "--timing")[1]
    assert "seconds" in json.loads(out)["timing"]


def test_exit_code_ignores_timing():
    rep = Report("x")
    rep.add("a", "i", True)
    rep.timing = {"seconds": 999}
    assert rep.exit_code() == EXIT_OK
    rep.add("b", "i", False, {"a": "1"})
    assert rep.exit_code() == EXIT_COUNTEREXAMPLE


def test_statements_listing(capsys):
    code, out, _ = run(capsys, "statements")
    assert code == 0 and "T3_4a" in out and "C3_11_1" in out


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "amalgkit.cli", "check", inst("z30.inst"), "F"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "witness a=2 b=3 m=5" in proc.stdout

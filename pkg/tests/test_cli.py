"""CLI behaviour, golden reports and run-to-run determinism.

Set TWOFIB_UPDATE_GOLDEN=1 to rewrite the files in tests/golden.
"""
import io
import json
import os
import subprocess
import sys

import pytest

from twofib.cli import run_command

HERE = os.path.dirname(os.path.abspath(__file__))
FIX = os.path.join(os.path.dirname(HERE), "fixtures")
GOLDEN = os.path.join(HERE, "golden")
UPDATE = os.environ.get("TWOFIB_UPDATE_GOLDEN") == "1"


def fx(name):
    return os.path.join(FIX, name + ".fw")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# name -> (argv, expected exit code)
CASES = {
    "check_sigma2": (["check", fx("sigma2")], 0),
    "check_sz4": (["check", fx("sz4")], 0),
    "check_weak_u": (["check", fx("weak_u")], 0),
    "check_bad_omega": (["check", fx("bad_omega")], 1),
    "dualize_sz4_coop": (["dualize", fx("sz4"), "--mode", "coop"], 0),
    "groth_diagram_alpha": (["groth", fx("diagram_alpha")], 0),
    "groth_const_sigma2": (["groth", fx("const_sigma2")], 0),
    "wgroth_iota": (["wgroth", fx("iota_trihom")], 0),
    "wgroth_weak_u": (["wgroth", fx("weak_u")], 0),
    "wgroth_bad_omega": (["wgroth", fx("bad_omega")], 1),
    "fibcheck_el_u_strict": (["fibcheck", fx("el_u"), "--mode", "strict"], 0),
    "fibcheck_broken": (["fibcheck", fx("broken")], 1),
    "fibcheck_collapse": (["fibcheck", fx("collapse"), "--mode", "strict"], 1),
    "fibcheck_missing": (["fibcheck", fx("missing_lift")], 1),
    "fibcheck_z2c_to_1": (["fibcheck", fx("z2c_to_1")], 0),
    "cleavage_el_u": (["cleavage-check", fx("el_u")], 0),
    "invert_el_u": (["invert", fx("el_u")], 0),
    "roundtrip_el_u": (["roundtrip", fx("el_u")], 0),
    "comma_points": (["comma", fx("pt_a"), fx("pt_b"), "--oplax"], 0),
    "comma_twist": (["comma", fx("twist_sz2"), fx("twist_sz2"), "--oplax"], 0),
    "comma_equiv": (["comma", fx("el_u"), fx("pt_1"), "--equiv"], 0),
    "comma_iso": (["comma", fx("el_u"), fx("pt_1"), "--iso"], 0),
    "comma_pullback": (["comma", fx("el_u"), fx("pt_1"), "--pullback"], 0),
    "free_fib_pt_b": (["free-fib", fx("pt_b")], 0),
    "compose_id_el_u": (["compose", fx("id_arrow"), fx("el_u")], 0),
    "factor_strict_1cell": (["factor", fx("el_u"), "(u|id|1)"], 0),
    "factor_weak_1cell": (["factor", fx("el_u"), "(u|id|1)", "--mode", "weak"], 0),
    "fibre_el_u_1": (["fibre", fx("el_u"), "--over", "1"], 0),
    "reindex_el_u_u": (["reindex", fx("el_u"), "--along", "u"], 0),
    "eqlift_z2c_to_1": (["eqlift", fx("z2c_to_1")], 0),
    "eqlift_pt_z2c": (["eqlift", fx("pt_z2c")], 1),
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_report(name):
    argv, want = CASES[name]
    code, out, err = run(*argv)
    assert code == want, err
    report = json.loads(out)
    assert report["command"] == argv[0]
    assert report["passed"] == (want == 0)
    assert report["timing_ms"] is None
    path = os.path.join(GOLDEN, name + ".json")
    if UPDATE:
        with open(path, "w") as fh:
            fh.write(out)
    with open(path) as fh:
        assert out == fh.read()


def test_expected_witnesses():
    report = json.loads(run("fibcheck", fx("broken"))[1])
    laws = {(w["law"], tuple(w["cells"])) for w in report["witnesses"]}
    assert ("has_cart_1_lifts", ("f", "1")) in laws
    assert ("locally_fibred", ("alpha", "u")) in laws
    report = json.loads(run("check", fx("bad_omega"))[1])
    assert {w["law"] for w in report["witnesses"]} >= {"total.pentagon"}


def test_witness_limit_flag():
    report = json.loads(run("fibcheck", fx("missing_lift"), "--witness-limit", "1")[1])
    assert len(report["witnesses"]) == 1


def test_timing_flag():
    report = json.loads(run("check", fx("arrow"), "--timing")[1])
    assert isinstance(report["timing_ms"], float)


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check"],
    ["check", "/nonexistent/file.fw"],
    ["groth", fx("arrow")],
    ["fibcheck", fx("weak_u"), "--mode", "strict"],
    ["fibre", fx("el_u"), "--over", "nowhere"],
    ["factor", fx("el_u"), "no-such-cell"],
    ["comma", fx("pt_a"), fx("pt_1"), "--oplax"],
    ["check", fx("arrow"), "--witness-limit", "0"],
], ids=lambda a: " ".join(os.path.basename(x) for x in a) or "empty")
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == "" and err.startswith("error:")


def test_malformed_input_exit_2(tmp_path):
    p = tmp_path / "bad.fw"
    p.write_text('{"schema_version":"1","kind":"two_category","name":"x"}\n')
    code, _, err = run("check", str(p))
    assert code == 2 and "line 1" in err


def _pipeline(d):
    outputs = []
    steps = [
        ["groth", fx("diagram_u"), "-o", "el.fw"],
        ["fibcheck", "el.fw", "--mode", "strict"],
        ["invert", "el.fw", "-o", "inv.fw"],
        ["roundtrip", "el.fw", "-o", "h.fw"],
        ["groth", "inv.fw", "-o", "el2.fw"],
    ]
    cwd = os.getcwd()
    os.chdir(d)
    try:
        for argv in steps:
            code, out, err = run(*argv)
            assert code == 0, (argv, err)
            outputs.append(out)
        for f in ("el.fw", "inv.fw", "h.fw", "el2.fw"):
            with open(f, "rb") as fh:
                outputs.append(fh.read())
    finally:
        os.chdir(cwd)
    return outputs


def test_pipeline_is_byte_identical(tmp_path):
    runs = []
    for i in range(3):
        d = tmp_path / str(i)
        d.mkdir()
        runs.append(_pipeline(d))
    assert runs[0] == runs[1] == runs[2]
    path = os.path.join(GOLDEN, "pipeline_reports.jsonl")
    text = "".join(runs[0][:5])
    if UPDATE:
        with open(path, "w") as fh:
            fh.write(text)
    with open(path) as fh:
        assert fh.read() == text


def test_outputs_recheck(tmp_path):
    cwd = os.getcwd()
    os.chdir(tmp_path)
    try:
        for argv in (["groth", fx("diagram_alpha"), "-o", "a.fw"],
                     ["wgroth", fx("weak_u"), "-o", "b.fw"],
                     ["comma", fx("pt_a"), fx("pt_b"), "--oplax", "-o", "c.fw"],
                     ["dualize", fx("sigma2"), "--mode", "op", "-o", "d.fw"],
                     ["fibre", fx("el_u"), "--over", "1", "-o", "e.fw"],
                     ["reindex", fx("el_u"), "--along", "u", "-o", "f.fw"]):
            assert run(*argv)[0] == 0
            code, out, err = run("check", argv[argv.index("-o") + 1])
            assert code == 0, (argv, out, err)
    finally:
        os.chdir(cwd)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twofib.cli", "check", fx("arrow")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"] is True

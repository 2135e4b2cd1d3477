import json
import subprocess
import sys

import pytest

from sctestgen import effective_set, format_testcase, prefix_suite, run_scenario
from sctestgen.cli import main
from sctestgen.documents import (DocumentError, SuiteDocument, read_suite, read_traces,
                                 write_suite, write_traces)

from conftest import FIXTURES

MODEL = str(FIXTURES / "rtvm.scm")
SCENARIOS = str(FIXTURES / "rtvm_scenarios.txt")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys):
    assert run(capsys, "validate", MODEL) == (0, "valid: 6 states, 8 transitions\n", "")


def test_validate_reports_issues(capsys, tmp_path, rtvm_text):
    bad = tmp_path / "bad.scm"
    bad.write_text(rtvm_text + "state Z\n")
    code, out, _ = run(capsys, "validate", bad)
    assert code == 1
    assert out == "invalid: Unreachable(Z)\ninvalid: NotCoReachable(Z)\n"


def test_parse_error_is_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.scm"
    bad.write_text("statechart X\nstate A kind = nope\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "2:" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", tmp_path / "nope.scm")
    assert code == 2 and "cannot read" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["generate", MODEL, "--method", "random"])
    assert info.value.code == 2
    assert "--method" in capsys.readouterr().err


def test_ktrans_needs_k(capsys):
    code, _, err = run(capsys, "generate", MODEL, "--method", "ktrans")
    assert code == 2 and "--k" in err


def test_graph_and_dot(capsys, tmp_path, rtvm_graph):
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "graph", MODEL, "--dot", dot)
    assert code == 0
    assert out.splitlines()[0] == "6 nodes, 8 edges, 12 transition pairs"
    assert dot.read_text().startswith('digraph "RTVM" {')


def test_generate_prefix(capsys, rtvm_suite):
    code, out, _ = run(capsys, "generate", MODEL, "--method", "prefix")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "suite RTVM method=prefix"
    assert [line.split()[1] for line in lines[1:]] == [format_testcase(tc) for tc in rtvm_suite]


def test_generate_ktrans_embed(capsys):
    code, out, _ = run(capsys, "generate", MODEL, "--method", "ktrans", "--k", "2", "--embed")
    assert code == 0
    body = out.splitlines()[1:]
    assert all(line.endswith(" complete") for line in body)
    assert all(line.split()[1].startswith("IN-") for line in body)


def test_generate_faults(capsys):
    code, out, _ = run(capsys, "generate", MODEL, "--method", "faults")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 26
    assert lines[0] == "faults RTVM"
    assert sum(line.endswith(" transient") for line in lines) == 5


def test_coverage_suite(capsys, tmp_path):
    suite = tmp_path / "s.txt"
    assert run(capsys, "generate", MODEL, "--method", "prefix", "-o", suite)[0] == 0
    js = tmp_path / "cov.json"
    code, out, _ = run(capsys, "coverage", MODEL, "--suite", suite, "--json", js)
    assert code == 0 and "8/8" in out
    assert json.loads(js.read_text())["path"]["ratio"] == "1"


def test_plain_suite(capsys, tmp_path, rtvm_suite):
    plain = tmp_path / "plain.txt"
    plain.write_text("".join(format_testcase(tc) + "\n" for tc in rtvm_suite))
    code, out, _ = run(capsys, "minimize", MODEL, "--suite", plain, "--plain",
                       "--mode", "subsumption")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()[1:]] == ["tc14", "tc17", "tc19"]


def test_bad_suite_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("suite RTVM method=prefix\ntc1 IN-(c)-CM partial\n")
    code, _, err = run(capsys, "coverage", MODEL, "--suite", bad)
    assert code == 2 and "line 2" in err


def test_minimize_nc_table(capsys, tmp_path):
    suite = tmp_path / "s.txt"
    run(capsys, "generate", MODEL, "--method", "prefix", "-o", suite)
    code, out, _ = run(capsys, "minimize", MODEL, "--suite", suite,
                       "--mode", "subsumption", "--nc-table")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "NC(tc1) = {tc9, tc10, tc11, tc12, tc13, tc14, tc15, tc16, tc17, tc18, tc19}"
    assert lines[13] == "NC(tc14) = {}"
    assert lines[19].startswith("suite RTVM method=prefix mode=subsumption")
    assert [line.split()[0] for line in lines[20:]] == ["tc14", "tc17", "tc19"]


def test_minimize_setcover(capsys, tmp_path):
    suite = tmp_path / "s.txt"
    run(capsys, "generate", MODEL, "--method", "prefix", "-o", suite)
    code, out, _ = run(capsys, "minimize", MODEL, "--suite", suite, "--mode", "setcover",
                       "--criteria", "transition")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()[1:]] == ["tc14", "tc6"]
    code, _, err = run(capsys, "minimize", MODEL, "--suite", suite, "--mode", "setcover",
                       "--criteria", "condition")
    assert code == 2 and "--criteria" in err


def test_run_and_trace_coverage(capsys, tmp_path):
    traces = tmp_path / "t.json"
    code, out, _ = run(capsys, "run", MODEL, "--scenario", SCENARIOS, "--report", "-o", traces)
    assert code == 0
    assert "more_money: fired (a,b,c,d,e,g,h) end IDL ok" in out
    assert "condition         3/3" in out
    code, out, _ = run(capsys, "coverage", MODEL, "--trace", traces)
    assert code == 0 and "condition         3/3" in out


def test_run_strict_refusal(capsys, tmp_path):
    scn = tmp_path / "s.txt"
    scn.write_text("scenario sneak\npowerOn\ndispense\n")
    code, out, _ = run(capsys, "run", MODEL, "--scenario", scn)
    assert code == 0 and "refused dispense in IDL" in out
    assert run(capsys, "run", MODEL, "--scenario", scn, "--strict")[0] == 1


@pytest.mark.parametrize("argv", [
    ["generate", MODEL, "--method", "prefix"],
    ["generate", MODEL, "--method", "ktrans", "--k", "3", "--embed"],
    ["generate", MODEL, "--method", "faults"],
    ["run", MODEL, "--scenario", SCENARIOS, "--report"],
])
def test_outputs_are_byte_identical(tmp_path, argv):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}"
        assert main(argv + ["-o", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_cli_composition_matches_library(capsys, tmp_path, rtvm_graph):
    suite = tmp_path / "s.txt"
    out = tmp_path / "m.txt"
    run(capsys, "generate", MODEL, "--method", "prefix", "-o", suite)
    run(capsys, "minimize", MODEL, "--suite", suite, "--mode", "subsumption", "-o", out)
    reduced = read_suite(out.read_text(), rtvm_graph).suite
    assert reduced == effective_set(prefix_suite(rtvm_graph))


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sctestgen", "validate", MODEL],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "valid: 6 states, 8 transitions\n"


# -- documents ---------------------------------------------------------------------------

def test_suite_document_roundtrip(rtvm_graph, rtvm_suite):
    doc = SuiteDocument("RTVM", "ktrans", {"k": "2"}, rtvm_suite)
    text = write_suite(doc)
    back = read_suite(text, rtvm_graph)
    assert back.suite == rtvm_suite and back.params == {"k": "2"} and back.method == "ktrans"
    assert read_suite(text).suite == rtvm_suite


def test_suite_document_errors(rtvm_graph):
    for text in ("", "suite RTVM method=prefix\ntc1 IN-(a)-TS partial\n",
                 "nonsense\n", "suite RTVM method=prefix\ntc1 IN-(a)-IDL maybe\n"):
        with pytest.raises(DocumentError):
            read_suite(text, rtvm_graph)


def test_trace_roundtrip(rtvm, rtvm_scenarios):
    traces = [run_scenario(rtvm, s) for s in rtvm_scenarios.values()]
    text = write_traces(traces)
    assert read_traces(text) == traces
    assert write_traces(read_traces(text)) == text

import io as stdio
import json
import subprocess
import sys
from pathlib import Path

import pytest

from conelab.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"


def invoke(*args):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run([str(a) for a in args], out, err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(*args):
    code, out, err = invoke(*args, "--json")
    return code, json.loads(out), err


def test_barycenter_both_methods():
    code, report, _ = invoke_json("barycenter", "--cone", DATA / "m2.json", "--nu", DATA / "nu_ab.json", "--method", "both")
    assert code == 0
    assert report["result"] == {"support-sup": "top", "pipeline": "top"}


def test_barycenter_trace():
    code, report, _ = invoke_json("barycenter", "--cone", DATA / "m2.json", "--nu", DATA / "nu_ab.json", "--trace")
    assert code == 0
    assert "trace" in json.dumps(report)


def test_jia_all():
    code, report, _ = invoke_json("jia", "--cone", DATA / "m2.json", "--all")
    assert code == 0
    kinds = [v["verdict"] for v in report["result"]["verdicts"]]
    assert kinds.count("principal") == 4 and kinds.count("not_linear") == 1


def test_cycle_is_input_error():
    code, out, err = invoke("poset", "check", DATA / "cyclic.json")
    assert code == 2
    assert "CycleError" in err and "cyclic.json" in err


def test_error_json_object():
    code, report, _ = invoke_json("poset", "check", DATA / "cyclic.json")
    assert code == 2 and report["status"] == "error"


def test_bad_table_fails_with_witness():
    code, report, _ = invoke_json("valuation", "check", DATA / "bad_table.json")
    assert code == 1
    assert report["witnesses"][0]["law"] == "modularity"
    assert report["witnesses"][0]["witness"]["U"] == ["a", "top"]


def test_stochastic_leq_witness():
    code, report, _ = invoke_json("stochastic-leq", "--mu", DATA / "nu_ab.json", "--nu", DATA / "nu_2a.json")
    assert code == 1
    assert report["witnesses"]


def test_multiply():
    code, report, _ = invoke_json("multiply", DATA / "nested.json")
    assert code == 0
    assert report["result"]["weights"] == {"a": "1/2", "b": "1/2"}


def test_integrate_inline():
    code, report, _ = invoke_json("integrate", "--nu", DATA / "nu_ab.json", "--h", '{"a": "1", "b": "2", "top": "3"}')
    assert code == 0
    assert json.dumps(report["result"]).count("3") >= 1


def test_usage_errors():
    assert invoke()[0] == 2
    assert invoke("no-such-verb")[0] == 2
    assert invoke("barycenter", "--cone", DATA / "m2.json")[0] == 2
    assert invoke("barycenter", "--cone", DATA / "missing.json", "--nu", DATA / "nu_ab.json")[0] == 2
    assert invoke("cone", "check", "--cone", DATA / "m2.json", "--scalars", "1,x")[0] == 2


def test_help_exits_zero():
    assert invoke("--help")[0] == 0


@pytest.mark.parametrize(
    "args",
    [
        ("poset", "opens", DATA / "m2.json"),
        ("cone", "check", "--cone", DATA / "m2.json", "--scalars", "0,1;2,3"),
        ("cone", "dual", "--cone", DATA / "m2.json"),
        ("separate", "--cone", DATA / "m2.json", "--x", "a", "--y", "b"),
        ("powercone", "enumerate", "--cone", DATA / "m2.json"),
        ("monad-laws", "--poset", DATA / "m2.json", "--samples", "30"),
        ("algebra-check", "--cone", DATA / "c3.json", "--samples", "30"),
        ("sweep", "--cone", DATA / "m2.json", "--grid", "0,1"),
        ("random-lattice", "--size", "5", "--seed", "42"),
        ("random-lattice", "--size", "4", "--seed", "1", "--valuation"),
        ("valuation", "weights", DATA / "table_c3.json"),
        ("valuation", "check", DATA / "table_c3.json"),
        ("valuation", "check", DATA / "nu_ab.json"),
    ],
)
def test_passing_verbs_are_deterministic(args):
    first = invoke(*args, "--json")
    second = invoke(*args, "--json")
    assert first[0] == 0, first
    assert first[1] == second[1]
    assert json.loads(first[1])["status"] == "pass"


def test_separate_precondition():
    assert invoke("separate", "--cone", DATA / "m2.json", "--x", "top", "--y", "a")[0] == 2


def test_random_lattice_output_file(tmp_path):
    target = tmp_path / "lattice.json"
    code, _, _ = invoke("random-lattice", "--size", "5", "--seed", "42", "-o", target)
    assert code == 0
    code, report, _ = invoke_json("cone", "check", "--cone", target)
    assert code == 0


def test_human_output_has_status_line():
    code, out, _ = invoke("barycenter", "--cone", DATA / "m2.json", "--nu", DATA / "nu_ab.json")
    assert code == 0 and out.startswith("barycenter: PASS")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "conelab", "jia", "--cone", str(DATA / "m2.json"), "--q", "a,b,top", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["verdicts"][0]["verdict"] == "not_linear"


def test_valuation_weights_inverts_table():
    code, report, _ = invoke_json("valuation", "weights", DATA / "table_c3.json")
    assert code == 0
    assert report["result"]["weights"] == {"0": "3", "1": "2", "2": "2"}

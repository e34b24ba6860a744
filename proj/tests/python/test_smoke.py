import json
import os
import pathlib
import subprocess

import pytest

wmpda = pytest.importorskip("wmpda")

FIXTURES = pathlib.Path(os.environ.get("WMPDA_FIXTURES", pathlib.Path(__file__).parents[1] / "fixtures"))
CLI = os.environ.get("WMPDA_CLI")


def load(name):
    return (FIXTURES / name).read_text()


def test_classify_counting_example():
    m = wmpda.parse_mpda(load("anbncn.mpda"))
    assert m.state_count == 2
    assert m.rule_count == 5
    assert wmpda.classify(m) == {"weak": True, "strongly_normed": False, "normed": False}


def test_round_trip():
    m = wmpda.parse_mpda(load("expo3.mpda"))
    assert wmpda.parse_mpda(m.serialize()) == m


def test_parse_error():
    with pytest.raises(wmpda.ParseError):
        wmpda.parse_mpda("mpda {\n  states: q\n")


def test_deciders_agree_on_counting_example():
    m, source, target = wmpda.generate("anbncn")
    assert source == "q1 : X D |"
    assert "q2 : |" in target
    res = wmpda.oracle_reach(m, source, "q2 : |")
    assert res["status"] == "reachable"
    assert wmpda.replay(m, res["witness"]) == "q2 : |"
    assert wmpda.decide_wqo(m, source, "q2 : |")
    assert not wmpda.decide_wqo(m, source, "q2 : X |")
    with pytest.raises(wmpda.PreconditionFailed):
        wmpda.decide_marked(m, source, "q2 : |")


def test_marked_decider_on_doubling_family():
    m, source, _ = wmpda.generate("expo:3")
    res = wmpda.decide_marked(m, source, "q : X3")
    assert res["reachable"]
    assert res["length"] == 6
    assert wmpda.replay(m, res["witness"]) == "q : X3"


def test_regsets():
    m = wmpda.parse_mpda(load("reglang.mpda"))
    L = wmpda.parse_regset(m, load("reglang.regset"))
    assert "q : X | A" in L
    assert "q : X | A" not in L.complement()
    assert L.issubset(L.union(L.complement()))
    assert "q : X X | B" in L.pre_image()
    members = L.members(2)
    assert members and all(c in L for c in members)


def test_separator():
    m = wmpda.parse_mpda("mpda {\n  states: q\n  stacks: 2\n  alphabet 1: A B\n  alphabet 2: C\n}\n")
    L = wmpda.parse_regset(m, "regset {\n  state q {\n    nfa 1 { states: a b ; initial: a ; edge a A b }\n"
                              "    nfa 2 { states: c ; initial: c }\n    accept: (b c)\n  }\n}\n")
    K = wmpda.parse_regset(m, "regset {\n  state q {\n    nfa 1 { states: a b ; initial: a ; edge a B b }\n"
                              "    nfa 2 { states: c ; initial: c }\n    accept: (b c)\n  }\n}\n")
    res = wmpda.decide_separator(L, K, require_strongly_normed=False)
    assert res["status"] == "unreachable"
    assert "q : B |" in res["certificate"]
    assert "q : A |" not in res["certificate"]


@pytest.mark.skipif(CLI is None, reason="WMPDA_CLI not set")
def test_cli_json_record():
    proc = subprocess.run([CLI, "classify", str(FIXTURES / "anbncn.mpda")], capture_output=True, text=True)
    assert proc.returncode == 0
    record = json.loads(proc.stdout.strip().splitlines()[-1])
    assert record["weak"] is True
    assert record["normed_failing"] == "(q2,X)"

import os
import pathlib

import pytest

import dataflow_workbench as dfa

FIXTURES = pathlib.Path(os.environ.get("DFA_FIXTURE_DIR", pathlib.Path(__file__).parents[2] / "fixtures"))


def source(name):
    return (FIXTURES / f"{name}.imp").read_text()


def test_canonical_round_trip():
    text = dfa.canonical(source("comments_crlf"))
    assert text.splitlines()[0] == "l0: x := 7"
    assert dfa.canonical(text) == text


def test_parse_errors_are_listed():
    errors = dfa.parse_errors("l0: goto l9\nl1: halt\nl2: done\n")
    assert len(errors) == 1
    assert "missing-target" in errors[0]
    with pytest.raises(dfa.DfaError):
        dfa.canonical("l0: bogus\n")


def test_run_outcomes():
    done = dfa.run(source("countdown"))
    assert done["outcome"] == "done"
    assert done["final_state"] == {"n": 0, "s": 15}
    stuck = dfa.run(source("undef"))
    assert stuck["message"] == "stuck at l0: read of undefined x"
    budget = dfa.run(source("self_loop"), max_steps=7)
    assert budget["outcome"] == "budget-exhausted"
    assert budget["steps"] == 7


def test_analyze_live_and_reaching():
    lv = dfa.analyze(source("straight"), "lv")
    assert lv["before"]["l1"] == ["x"]
    assert lv["after"]["l1"] == []
    rd = dfa.analyze(source("diamond"), "reaching-defs")
    assert rd["before"]["l5"]["y"] == ["l2", "l4"]
    observed = dfa.analyze(source("straight"), "lv", observe={"y"})
    assert observed["before"]["l2"] == ["y"]
    with pytest.raises(ValueError):
        dfa.analyze(source("straight"), "cp")


@pytest.mark.parametrize("analysis", dfa.ANALYSES)
def test_check_passes_on_fixtures(analysis):
    for path in sorted(FIXTURES.glob("*.imp")):
        report = dfa.check(path.read_text(), analysis, max_steps=2000)
        assert report["passed"], (path.name, report["failures"])


def test_optimizations():
    dce = dfa.dead_store_elim(source("dead_store"), observe={"y"})
    assert [r["label"] for r in dce["rewrites"]] == ["l1", "l2", "l0"]
    assert dce["program"].splitlines()[3] == "l3: y := 7"
    cp = dfa.const_prop(source("const_diamond_same"))
    assert "l5: d := 5 + 1" in cp["program"].splitlines()


def test_generation_and_fuzz_are_deterministic():
    assert dfa.generate(seed=3) == dfa.generate(seed=3)
    first = dfa.fuzz(seed=2, count=10)
    assert first["passed"]
    assert first == dfa.fuzz(seed=2, count=10)

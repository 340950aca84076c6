import io
import subprocess
import sys

import pytest

from kawt.cli import main
from kawt.equivalence import ski_chain_model
from kawt.relational import format_model
from kawt.syntax import SKI_SIGNATURE, build_ski_programs, format_program_file, pretty, ski_hypotheses

HEADER = "program sub1 end\nbool    neq0\nweight  one skis\n---\n"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    loop, denested, finite = build_ski_programs(2)
    _, _, finite3 = build_ski_programs(3)
    paths = {}
    for name, p in [("loop", loop), ("denested", denested), ("finite2", finite), ("finite3", finite3)]:
        paths[name] = tmp_path / f"{name}.wrp"
        paths[name].write_text(format_program_file(SKI_SIGNATURE, p))
    paths["hyp2"] = tmp_path / "hyp2.txt"
    paths["hyp2"].write_text("".join(f"{pretty(h)} = 0\n" for h in ski_hypotheses(2)))
    paths["chain"] = tmp_path / "chain.model"
    paths["chain"].write_text(format_model(ski_chain_model(3, 5)))
    for name, body in [("one", "1"), ("zero", "0"), ("bad", "!@one"), ("empty", "# nothing")]:
        paths[name] = tmp_path / f"{name}.wrp"
        paths[name].write_text(HEADER + body + "\n")
    return paths


def test_check(files):
    assert run("check", files["loop"]) == (0, "({neq0} sub1 (@one + @skis end))* {!neq0}\n")


def test_check_errors(files, capsys):
    assert run("check", files["bad"])[0] == 1
    assert f"{files['bad']}:5:1: error" in capsys.readouterr().err
    assert run("check", files["empty"])[0] == 1
    assert "empty program section" in capsys.readouterr().err
    assert run("check", files["loop"].parent / "missing.wrp")[0] == 1


def test_eval(files):
    code, out = run("eval", files["loop"], files["chain"])
    assert code == 0
    rows = [line.split() for line in out.splitlines()]
    assert rows[0] == ["s0", "s1", "s2", "s3"]
    assert rows[4][:2] == ["s3", "3"]
    code, out = run("eval", files["one"], files["chain"])
    assert [r.split()[1:] for r in out.splitlines()[1:]][0] == ["0", "inf", "inf", "inf"]
    code, out = run("eval", files["zero"], files["chain"])
    assert all(set(r.split()[1:]) == {"inf"} for r in out.splitlines()[1:])


def test_eval_errors(files, tmp_path):
    assert run("eval", files["loop"], files["chain"], "--cap", "1")[0] == 2
    partial = tmp_path / "partial.model"
    partial.write_text("semiring tropical\nstates a\nprog sub1 : a a\nbool neq0 : a\n")
    assert run("eval", files["loop"], partial)[0] == 1


def test_optimal(files):
    code, out = run("optimal", files["finite3"], "--weights", "one=1", "skis=5", "--from", "{!neq0}")
    assert code == 0
    assert out.splitlines() == ["# optimal runs from {!neq0} bound=none", "{neq0}: unreachable",
                                "{!neq0}: 0"]
    code, out = run("optimal", files["zero"], "--weights", "one=1", "skis=5")
    assert out.splitlines()[1:] == ["{neq0}: unreachable", "{!neq0}: unreachable"]


def test_optimal_from_positive_atom(files):
    # strings need not be realizable, so one rented day is already a complete run
    code, out = run("optimal", files["finite3"], "--weights", "one=1", "skis=5", "--from", "{neq0}")
    assert out.splitlines()[-1] == "{!neq0}: 1"


def test_optimal_errors(files):
    assert run("optimal", files["loop"], "--weights", "one=1")[0] == 1
    assert run("optimal", files["loop"], "--weights", "one=x", "skis=1")[0] == 1
    assert run("optimal", files["loop"], "--weights", "one=1", "skis=1", "--from", "{walk}")[0] == 1


def test_equiv(files):
    code, out = run("equiv", files["loop"], files["denested"], "--bound", "12")
    assert (code, out) == (0, "EQUAL(bound=12)\n")
    code, out = run("equiv", files["denested"], files["finite2"], "--bound", "8")
    assert code == 3 and out.startswith("NOT-EQUAL(bound=8)\ncounterexample: {neq0} sub1")
    code, out = run("equiv", files["denested"], files["finite2"], "--hyp", files["hyp2"], "--bound", "8")
    assert code == 0 and out.splitlines()[-1] == "EQUAL(bound=8)"


def test_equiv_models(files, tmp_path):
    d = tmp_path / "models"
    d.mkdir()
    (d / "a.model").write_text(format_model(ski_chain_model(2, 1)))
    (d / "b.model").write_text(format_model(ski_chain_model(2, 7)))
    assert run("equiv", files["loop"], files["finite2"], "--hyp", files["hyp2"], "--models", d)[0] == 0
    code, out = run("equiv", files["loop"], files["finite3"], "--models", d)
    assert code == 0
    code, out = run("equiv", files["loop"], files["one"], "--models", d)
    assert code == 3 and "model a.model entry" in out


def test_equiv_malformed_hypothesis(files, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("end {neq0} = 1\n")
    assert run("equiv", files["loop"], files["denested"], "--hyp", bad, "--bound", "3")[0] == 1
    bad.write_text("@one end = 0\n")
    assert run("equiv", files["loop"], files["denested"], "--hyp", bad, "--bound", "3")[0] == 1


@pytest.mark.parametrize("suite", ["semiring", "psg", "thm2"])
def test_axioms_pass(suite):
    code, out = run("axioms", "--suite", suite, "--samples", "50")
    assert code == 0 and out.startswith(f"# suite={suite} seed=0")


def test_axioms_thm1():
    code, out = run("axioms", "--suite", "thm1", "--samples", "30", "--semiring", "tropical")
    assert code == 0 and "instance=gu1x1/2" in out


def test_axioms_mutant_fails_with_witness():
    code, out = run("axioms", "--suite", "semiring", "--mutant", "--samples", "100", "--seed", "3")
    assert code == 2 and "witness" in out and out.startswith("# suite=semiring seed=3")


def test_axioms_deterministic():
    a = run("axioms", "--suite", "lifted", "--semiring", "tropical", "--samples", "20", "--seed", "9")
    assert a == run("axioms", "--suite", "lifted", "--semiring", "tropical", "--samples", "20", "--seed", "9")


def test_ski_demo():
    code, out = run("ski-demo", "--n-max", "3", "--y-max", "3")
    rows = [list(map(int, l.split())) for l in out.splitlines() if not l.startswith("#")]
    assert len(rows) == 16
    for n, y, best, _, not_neq0, realizable, relational in rows:
        assert best == min(n, y) == realizable == relational and not_neq0 == 0


def test_module_entry_point(files):
    r = subprocess.run([sys.executable, "-m", "kawt", "check", str(files["loop"])],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("({neq0}")

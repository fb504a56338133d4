import json
import subprocess
from pathlib import Path
import sys
from fractions import Fraction

import numpy as np
import pytest

from adbelief import Event, LayeredPrevision, PossibilitySpace, QuantumEvent, embed_fcp, expand
from adbelief import io
from adbelief.cli import main
from adbelief.showcase import br4_model

BR4 = json.dumps({"space": [1, 2, 3, 4], "acc": [[-1, 1, -1, 1]]})
STACKED = json.dumps({"layers": [{"support": ["a"], "pmf": {"a": "1"}},
                                 {"support": ["b", "c"], "pmf": {"b": "1/3", "c": "2/3"}}]})


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rationals_are_exact():
    assert io.rational("3/7") == Fraction(3, 7)
    assert io.rational(2) == 2
    with pytest.raises(io.MalformedInput):
        io.rational(0.5)
    with pytest.raises(io.MalformedInput):
        io.rational(True)


def test_model_round_trip():
    M, E, h = br4_model()
    obj = io.model_to_json(M)
    again = io.model_to_json(io.natural_extension(io.assessment_from_json(obj)))
    assert obj == again == {"space": [1, 2, 3, 4], "acc": [["-1", "1", "-1", "1"]], "des": []}


def test_prevision_round_trip():
    P = io.prevision_from_json(STACKED)
    assert P.layers == ({0: 1}, {1: Fraction(1, 3), 2: Fraction(2, 3)})
    assert io.prevision_from_json(io.prevision_to_json(P)) == P
    with pytest.raises(io.MalformedInput):
        io.prevision_from_json({"layers": [{"pmf": {"a": "1/2"}}]})


def test_weak_expansion_json():
    S = PossibilitySpace.of_size(3)
    P = LayeredPrevision(S, [{1: 1}, {2: 1}, {0: 1}])
    X = expand(embed_fcp(P), Event(S, [0, 1]))
    assert io.model_to_json(X)["expanded_by"] == [1, 2]


def test_quantum_round_trip():
    e = QuantumEvent(2, [np.array([[1], [1j]]) / np.sqrt(2)])
    back = io.qevent_from_json(2, json.loads(io.dumps(io.qevent_to_json(e))))
    assert np.allclose(back.projectors[0], e.projectors[0])


def test_extend(capsys):
    code, out, _ = run(capsys, "extend", BR4)
    assert code == 0 and json.loads(out)["consistent"] is True
    code, out, _ = run(capsys, "extend", '{"space": [1, 2], "des": [[-1, -1]]}')
    assert code == 0 and json.loads(out)["model"] == {"contradiction": True}


def test_prevision(capsys):
    code, out, _ = run(capsys, "prevision", BR4, "[1, 1, 0, 0]")
    assert code == 0
    assert json.loads(out)["lower"] == "0" and json.loads(out)["upper"] == "1"
    code, out, _ = run(capsys, "prevision", BR4, "[1, 1, 0, 0]", "--given", "[1, 2]")
    assert json.loads(out)["lower"] == "1"
    code, out, _ = run(capsys, "prevision", STACKED, '["1", "0", "3"]', "--given", '["b", "c"]')
    assert json.loads(out)["lower"] == "2"


def test_revise_and_expand(capsys):
    code, out, _ = run(capsys, "revise", "--event", "[]")
    assert code == 0 and json.loads(out)["model"] == {"contradiction": True}
    code, out, _ = run(capsys, "expand", BR4, "--event", "[1, 2]")
    model = json.loads(out)["model"]
    assert code == 0
    assert ["0", "0", "-1", "0"] in model["acc"] and ["0", "0", "0", "-1"] in model["acc"]
    code, out, _ = run(capsys, "condition", BR4, "--event", "[1, 2]")
    assert code == 0 and "model" in json.loads(out)


def test_agm_check(capsys):
    code, out, _ = run(capsys, "agm-check", BR4, "--e1", "[1, 2]", "--e2", "[1, 2, 3, 4]")
    assert code == 0
    assert json.loads(out)["verdicts"]["BR4"]["status"] == "fails"
    code, _, _ = run(capsys, "agm-check", BR4, "--e1", "[1, 2]", "--e2", "[1, 2, 3, 4]", "--strict")
    assert code == 1


def test_dilation(capsys):
    code, out, _ = run(capsys, "dilation", BR4, "--event", "[1, 2]", "--gamble", "[-1, 1, -1, 1]")
    assert code == 0 and json.loads(out)["dilation"] is True


@pytest.mark.parametrize("name", ["br4", "br8", "bayes", "luders"])
def test_demos(capsys, name):
    code, out, _ = run(capsys, "demo", name)
    assert code == 0 and json.loads(out)["ok"] is True


def test_malformed_inputs(capsys):
    assert run(capsys, "extend", "{not json")[0] == 2
    assert run(capsys, "extend", '{"space": [1, 2], "acc": [[0.5, 1]]}')[0] == 2
    assert run(capsys, "prevision", BR4, "[1, 2]")[0] == 2
    assert run(capsys, "condition", BR4, "--event", "[9]")[0] == 2
    assert run(capsys, "condition", BR4, "--event", "[]")[0] == 2
    assert run(capsys, "revise", "--event", "[1]")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_table_output(capsys):
    code, out, _ = run(capsys, "prevision", BR4, "[1, 1, 0, 0]", "--format", "table")
    assert code == 0 and out.splitlines()[1].split() == ["lower", "0"]


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "adbelief", "agm-check", BR4, "--e1", "[1, 2]", "--e2", "[1, 3]",
           "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout


DEMOS = sorted((Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("script", DEMOS, ids=lambda p: p.name)
def test_demo_scripts_run(script):
    res = subprocess.run([sys.executable, str(script)], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr

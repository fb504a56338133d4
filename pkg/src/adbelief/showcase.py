"""Worked examples that double as installation checks.

Each function rebuilds one worked example or sweep, checks the expected
outcome and returns a :class:`DemoResult`.  The command line exposes them
as ``adbelief demo NAME``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from .belief_change import check_agm, detect_dilation, expand, revise, same_model, sample_gambles
from .cones import Gamble, PossibilitySpace
from .conditioning import Event, event_meet
from .models import ADAssessment, natural_extension, precise_model
from .previsional import (coherence_violations, embed_fcp,
                          random_layered_prevision)
from .propositional import (FilterCore, all_events, embed_filter, extract_filter,
                            prop_expand, prop_revise)
from .quantum import QuantumEvent, luders, q_call_off, q_conditional_prevision

__all__ = [
    "DemoResult",
    "br4_model",
    "br8_model",
    "demo_br4",
    "demo_br8",
    "demo_bayes",
    "demo_luders",
    "demo_propositional_sweep",
    "demo_previsional_sweep",
    "DEMOS",
]


@dataclass
class DemoResult:
    name: str
    ok: bool = True
    facts: List[tuple] = field(default_factory=list)
    problems: List[str] = field(default_factory=list)

    def record(self, key, value):
        self.facts.append((key, value))

    def expect(self, condition: bool, message: str):
        if not condition:
            self.ok = False
            self.problems.append(message)

    def to_json(self) -> dict:
        return {"demo": self.name, "ok": self.ok,
                "facts": {k: v for k, v in self.facts}, "problems": list(self.problems)}


def _fmt(f: Gamble) -> list:
    return [str(v) for v in f.values]


def br4_model() -> tuple:
    """The model generated by ``(-1, 1, -1, 1)`` and the event ``{1, 2}``."""
    S = PossibilitySpace.of_size(4)
    h = S.gamble([-1, 1, -1, 1])
    M = natural_extension(ADAssessment(S, (h,), ()))
    return M, Event(S, [0, 1]), h


def br8_model() -> tuple:
    """The model generated by ``(-1, 1, 1, 0)`` with ``E1 = {1,2,3}`` and ``E2 = {1,3}``."""
    S = PossibilitySpace.of_size(4)
    g = S.gamble([-1, 1, 1, 0])
    M = natural_extension(ADAssessment(S, (g,), ()))
    return M, Event(S, [0, 1, 2]), Event(S, [0, 2]), g


def demo_br4(seed: int = 0, samples: int = 50) -> DemoResult:
    res = DemoResult("br4")
    M, E, h = br4_model()
    S = M.space
    low = M.lower_prevision(E.indicator())
    res.record("lower_prevision(I_E)", str(low))
    res.expect(low == 0, f"lower prevision of I_E is {low}, expected 0")
    X, R = expand(M, E), revise(M, E)
    res.record("expansion accepts h", X.accepts(h))
    res.record("revision accepts h", R.accepts(h))
    res.expect(X.accepts(h), "expansion should accept h")
    res.expect(not R.accepts(h), "revision should not accept h")
    rng = random.Random(seed)
    vacuous = all(R.lower_prevision(f) == f.min_on(E.indices)
                  for f in sample_gambles(S, samples, rng, bound=9))
    res.record("conditional model vacuous on E", vacuous)
    res.expect(vacuous, "conditional lower prevision differs from the minimum on E")
    dil = detect_dilation(M, E, h)
    res.record("dilation", dil)
    res.expect(dil, "no dilation detected")
    report = check_agm(M, E, Event.full(S), samples=16, seed=seed)
    res.record("BR4 verdict", report["BR4"].status)
    res.expect(report["BR4"].status == "fails", "the postulate check should report BR4 failing")
    return res


def demo_br8(seed: int = 0) -> DemoResult:
    res = DemoResult("br8")
    M, E1, E2, g = br8_model()
    S = M.space
    X12 = expand(revise(M, E1), E2)
    R12 = revise(M, event_meet(E1, E2))
    accepted = []
    for beta in (-2, 0, 2):
        for gamma in (-2, 0, 2):
            w = g + S.gamble([0, beta, 0, gamma])
            accepted.append(X12.accepts(w))
    res.record("expansion after revision accepts all witnesses", all(accepted))
    res.expect(all(accepted), "some witness (-1,1,1,0)+(0,b,0,c) is not accepted")
    rep = S.gamble([-1, 0, 1, 0])
    res.record("joint revision accepts (-1,0,1,0)", R12.accepts(rep))
    res.expect(not R12.accepts(rep), "the joint revision should reject (-1,0,1,0)")
    report = check_agm(M, E1, E2, samples=16, seed=seed)
    v = report["BR8"]
    res.record("BR8 verdict", v.status)
    if v.witness is not None:
        res.record("BR8 witness", _fmt(v.witness))
    res.expect(v.status == "fails", "the postulate check should report BR8 failing")
    return res


def demo_bayes(seed: int = 0, samples: int = 20) -> DemoResult:
    """Conditioning a precise model is Bayes' rule."""
    res = DemoResult("bayes")
    S = PossibilitySpace.of_size(4)
    pmf = [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 8)]
    M = precise_model(S, pmf)
    E = Event(S, [1, 2, 3])
    pE = sum(pmf[i] for i in E.indices)
    rng = random.Random(seed)
    bad = 0
    for f in sample_gambles(S, samples, rng, bound=9):
        bayes = sum(pmf[i] * f.values[i] for i in E.indices) / pE
        lo = M.conditional_lower_prevision(f, E)
        up = M.conditional_upper_prevision(f, E)
        # the update identity P(I_E f) = L(f|E) P(I_E)
        lhs = M.lower_prevision(f * E.indicator())
        if not (lo == up == bayes and lhs == lo * M.lower_prevision(E.indicator())):
            bad += 1
    res.record("P(E)", str(pE))
    res.record("gambles checked", samples)
    res.record("mismatches", bad)
    res.expect(bad == 0, f"{bad} conditional previsions differ from Bayes' rule")
    f = S.gamble([8, 0, 8, 16])
    res.record("L(f|E) for f=(8,0,8,16)", str(M.conditional_lower_prevision(f, E)))
    res.expect(M.conditional_lower_prevision(f, E) == 6, "expected L(f|E) = 6")
    return res


def demo_luders(seed: int = 0) -> DemoResult:
    res = DemoResult("luders")
    tol = 1e-9
    ket0 = np.array([[1.0], [0.0]])
    e0 = QuantumEvent(2, [ket0])
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    off = q_call_off(e0, X)
    res.record("calling off Pauli X on |0>", float(np.max(np.abs(off))))
    res.expect(np.max(np.abs(off)) <= tol, "off-diagonal part should be killed")
    plus = np.full((2, 2), 0.5, dtype=complex)
    post = luders(plus, e0)
    res.record("Lüders update of |+><+| on |0>", [[float(x) for x in row] for row in post.real])
    res.expect(np.max(np.abs(post - np.diag([1, 0]))) <= tol, "expected |0><0|")
    mixed = np.eye(4, dtype=complex) / 4
    block = QuantumEvent(4, [np.eye(4)[:, :2]])
    post = luders(mixed, block)
    res.expect(np.max(np.abs(post - np.diag([0.5, 0.5, 0, 0]))) <= tol,
               "maximally mixed state should become uniform on the block")
    res.record("maximally mixed d=4 on a plane", [float(x) for x in np.diag(post).real])
    v = q_conditional_prevision(np.diag([1, 0]), np.diag([5, 7]), e0)
    res.record("conditional prevision of diag(5,7)", v)
    res.expect(abs(v - 5) <= tol, "expected 5")
    return res


def demo_propositional_sweep(size: int = 4) -> DemoResult:
    """Every filter core and every event pair on a small space."""
    res = DemoResult("propositional-sweep")
    S = PossibilitySpace.of_size(size)
    events = all_events(S)
    cores = [E.indices for E in events if E.indices]
    checked = 0
    failures: Dict[str, int] = {}
    for core in cores:
        F = FilterCore(S, core)
        M = embed_filter(F)
        if extract_filter(M) != F:
            res.expect(False, f"round trip fails for {F!r}")
        for E in events:
            X = expand(M, E)
            Fx = prop_expand(F, E)
            if (Fx is None) != X.is_contradiction or (Fx is not None and not same_model(embed_filter(Fx), X)):
                res.expect(False, f"expansion square fails for {F!r}, {E!r}")
            if E.indices:
                if not same_model(embed_filter(prop_revise(F, E)), revise(M, E)):
                    res.expect(False, f"revision square fails for {F!r}, {E!r}")
            for E2 in events:
                report = check_agm(M, E, E2, samples=0)
                checked += 1
                for key, v in report.verdicts.items():
                    if not v.ok:
                        failures[key] = failures.get(key, 0) + 1
    res.record("filter cores", len(cores))
    res.record("events", len(events))
    res.record("postulate checks", checked)
    res.record("failures", dict(sorted(failures.items())))
    res.expect(not failures, f"postulates fail: {failures}")
    return res


def demo_previsional_sweep(count: int = 100, seed: int = 0, samples: int = 32) -> DemoResult:
    """Random layered previsions on up to four outcomes."""
    res = DemoResult("previsional-sweep")
    rng = random.Random(seed)
    failures: Dict[str, int] = {}
    first = {}
    incoherent = 0
    for k in range(count):
        S = PossibilitySpace.of_size(rng.randint(2, 4))
        P = random_layered_prevision(S, rng)
        if coherence_violations(P, samples=100, seed=k, families=10):
            incoherent += 1
        M = embed_fcp(P)
        E1, E2 = _random_event(S, rng), _random_event(S, rng)
        report = check_agm(M, E1, E2, samples=samples, seed=k)
        for key, v in report.verdicts.items():
            if not v.ok:
                failures[key] = failures.get(key, 0) + 1
                if key not in first:
                    first[key] = {"prevision": repr(P), "E1": E1.labels, "E2": E2.labels,
                                  "witness": _fmt(v.witness) if v.witness is not None else None}
    res.record("previsions", count)
    res.record("coherence violations", incoherent)
    res.record("failures", dict(sorted(failures.items())))
    for key in sorted(first):
        res.record(f"first {key} failure", first[key])
    res.expect(incoherent == 0, "some layered prevision failed the coherence checks")
    res.expect(not failures, f"postulates fail: {dict(sorted(failures.items()))}")
    return res


def _random_event(S, rng):
    while True:
        E = Event(S, [i for i in range(len(S)) if rng.random() < 0.6])
        if E.indices:
            return E


DEMOS: Dict[str, Callable[..., DemoResult]] = {
    "br4": demo_br4,
    "br8": demo_br8,
    "bayes": demo_bayes,
    "luders": demo_luders,
    "propositional-sweep": demo_propositional_sweep,
    "previsional-sweep": demo_previsional_sweep,
}

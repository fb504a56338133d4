"""The seven acceptance criteria, each with its tolerance and time limit.

Every test prints one PASS/FAIL line (visible with ``pytest -s`` or in the
terminal summary) and then asserts.  Sub-checks are collected first so a
failing line still reports every count.
"""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

from adbelief import (ADAssessment, ConeRep, Event, LPOracle, PossibilitySpace, QuantumEvent,
                      check_agm, cone_membership, detect_dilation, embed_fcp, event_meet, expand,
                      fcp_value, luders, natural_extension, q_call_off, q_conditional_prevision,
                      q_event_meet, revise, separating_certificate)
from adbelief.belief_change import sample_gambles
from adbelief.conditioning import complement
from adbelief.previsional import coherence_violations, random_layered_prevision
from adbelief.quantum import (kernel_sum_residual, random_density, random_event,
                              random_event_pair, random_hermitian)
from adbelief.showcase import demo_propositional_sweep

from helpers import random_event as random_classical_event
from helpers import random_model
from oracles import facet_member

S4 = PossibilitySpace.of_size(4)


class Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.failures = []
        self.notes = []
        self.start = time.perf_counter()

    def check(self, ok, message):
        if not ok:
            self.failures.append(message)

    def note(self, message):
        self.notes.append(message)

    def finish(self, capsys):
        elapsed = time.perf_counter() - self.start
        self.check(elapsed < self.limit, f"took {elapsed:.1f} s, limit {self.limit} s")
        verdict = "PASS" if not self.failures else "FAIL"
        line = f"criterion {self.number} [{verdict}] {self.title} ({elapsed:.2f} s)"
        details = self.notes + self.failures
        with capsys.disabled():
            print("\n" + line + "".join(f"\n    {d}" for d in details))
        assert not self.failures, "; ".join(self.failures)


def test_criterion_1_br4_counterexample(capsys):
    c = Criterion(1, "BR4 counterexample", 5)
    h = S4.gamble([-1, 1, -1, 1])
    M = natural_extension(ADAssessment(S4, (h,), ()))
    E = Event(S4, [0, 1])
    c.check(M.lower_prevision(E.indicator()) == 0, "lower prevision of I_E is not 0")
    c.check(expand(M, E).accepts(h), "expansion does not accept h")
    R = revise(M, E)
    c.check(not R.accepts(h), "revision accepts h")
    rng = random.Random(0)
    bad = sum(R.lower_prevision(f) != f.min_on(E.indices)
              for f in sample_gambles(S4, 50, rng, bound=9))
    c.check(bad == 0, f"conditional model not vacuous on E for {bad}/50 gambles")
    c.check(detect_dilation(M, E, h), "no dilation on E")
    c.check(detect_dilation(M, complement(E), h), "no dilation on the complement of E")
    c.finish(capsys)


def test_criterion_2_br8_counterexample(capsys):
    c = Criterion(2, "BR8 counterexample", 5)
    g = S4.gamble([-1, 1, 1, 0])
    M = natural_extension(ADAssessment(S4, (g,), ()))
    E1, E2 = Event(S4, [0, 1, 2]), Event(S4, [0, 2])
    X = expand(revise(M, E1), E2)
    for beta in (-2, 0, 2):
        for gamma in (-2, 0, 2):
            w = g + S4.gamble([0, beta, 0, gamma])
            c.check(X.accepts(w), f"expansion after revision rejects {w}")
    R = revise(M, event_meet(E1, E2))
    c.check(not R.accepts(S4.gamble([-1, 0, 1, 0])), "joint revision accepts (-1,0,1,0)")
    c.finish(capsys)


def test_criterion_3_agm_positive_suite(capsys):
    c = Criterion(3, "AGM positive suite, 200 random models", 60)
    rng = random.Random(2024)
    counts = {k: 0 for k in ("BR1", "BR2", "BR3", "BR5", "BR6", "BR7")}
    for k in range(200):
        M = random_model(rng, rng.choice([3, 4, 5]), max_gens=4)
        E1 = random_classical_event(rng, M.space)
        E2 = random_classical_event(rng, M.space)
        report = check_agm(M, E1, E2, samples=16, seed=k)
        for key in counts:
            if not report[key].ok:
                counts[key] += 1
    for key, n in counts.items():
        c.check(n == 0, f"{key} fails in {n}/200 cases")
    c.note(f"failures per postulate: {counts}")
    c.finish(capsys)


def test_criterion_4_propositional_tower(capsys):
    c = Criterion(4, "propositional tower, exhaustive on four outcomes", 60)
    res = demo_propositional_sweep(4)
    facts = dict(res.facts)
    c.check(facts["filter cores"] == 15 and facts["events"] == 16, "wrong enumeration size")
    for problem in res.problems:
        c.check(False, problem)
    c.note(f"{facts['postulate checks']} postulate checks, failures {facts['failures']}")
    c.finish(capsys)


def test_criterion_5_previsional_tower(capsys):
    c = Criterion(5, "previsional tower, 100 layered previsions", 120)
    rng = random.Random(5)
    incoherent = update = oracle = 0
    agm = {f"BR{i}": 0 for i in range(1, 9)}
    oracle_instances = 0
    first = {}
    for k in range(100):
        S = PossibilitySpace.of_size(rng.randint(2, 4))
        P = random_layered_prevision(S, rng)
        if coherence_violations(P, samples=500, seed=k, families=20):
            incoherent += 1
        M = embed_fcp(P)
        for _ in range(5):
            f = S.gamble([rng.randint(-6, 6) for _ in range(len(S))])
            B = random_classical_event(rng, S)
            v = fcp_value(P, f, B.indices)
            if not (M.conditional_lower_prevision(f, B) == v
                    and M.lower_prevision(B.indicator() * f) == v * M.lower_prevision(B.indicator())):
                update += 1
        if len(S) == 3:
            oracle_instances += 1
            O = LPOracle(P)
            for f in sample_gambles(S, 20, rng, bound=3):
                if M.accepts(f) != O.accepts(f) or M.desires(f) != O.desires(f):
                    oracle += 1
        E1, E2 = random_classical_event(rng, S), random_classical_event(rng, S)
        report = check_agm(M, E1, E2, samples=32, seed=k)
        for key, v in report.verdicts.items():
            if not v.ok:
                agm[key] += 1
                first.setdefault(key, (P, E1.labels, E2.labels, v.witness))
    c.check(incoherent == 0, f"{incoherent} previsions fail the coherence or sure-loss checks")
    c.check(update == 0, f"{update} conditional previsions break the update identity")
    c.check(oracle == 0, f"closed form and LP oracle disagree {oracle} times")
    c.note(f"oracle comparison on {oracle_instances} three-outcome previsions")
    for key, n in agm.items():
        c.check(n == 0, f"{key} fails in {n}/100 cases")
    for key, (P, e1, e2, w) in sorted(first.items()):
        c.note(f"first {key} failure: {P!r}, E1={e1}, E2={e2}, witness {w}")
    c.finish(capsys)


def test_criterion_6_quantum_suite(capsys):
    c = Criterion(6, "quantum suite, 100 random triples", 30)
    rng = np.random.default_rng(6)
    tol, sub_tol = 1e-9, 1e-6
    worst = {"E1": 0.0, "E2": 0.0, "E3": 0.0, "E4": 0.0, "E5": 0.0, "E7": 0.0,
             "trace": 0.0, "positivity": 0.0, "identity": 0.0}
    e8_bad = []
    for k in range(100):
        d = int(rng.choice([2, 3, 4]))
        rho, A, B = random_density(d, rng), random_hermitian(d, rng), random_hermitian(d, rng)
        e = random_event(d, rng)
        lam = rng.normal()
        worst["E1"] = max(worst["E1"], np.max(np.abs(
            q_call_off(e, A + lam * B) - q_call_off(e, A) - lam * q_call_off(e, B))))
        worst["E2"] = max(worst["E2"], np.max(np.abs(q_call_off(e, q_call_off(e, A)) - q_call_off(e, A))))
        worst["E3"] = max(worst["E3"], -np.linalg.eigvalsh(q_call_off(e, rho)).min())
        worst["E4"] = max(worst["E4"], np.max(np.abs(q_call_off(QuantumEvent.full(d), A) - A)))
        worst["E5"] = max(worst["E5"], np.max(np.abs(q_call_off(QuantumEvent.null(d), A))))
        worst["E7"] = max(worst["E7"], -np.linalg.eigvalsh(np.eye(d) - q_call_off(e, np.eye(d))).min())
        p = np.trace(q_call_off(e, rho)).real
        if p > tol:
            post = luders(rho, e)
            worst["trace"] = max(worst["trace"], abs(np.trace(post).real - 1))
            worst["positivity"] = max(worst["positivity"], -np.linalg.eigvalsh(post).min())
            lhs = np.trace(rho @ q_call_off(e, A)).real
            rhs = q_conditional_prevision(rho, A, e) * np.trace(rho @ q_call_off(e, np.eye(d))).real
            worst["identity"] = max(worst["identity"], abs(lhs - rhs))
        e1, e2 = random_event_pair(d, rng)
        r = kernel_sum_residual(e1, e2)
        if r > sub_tol:
            e8_bad.append((k, d, e1.ranks, e2.ranks, round(r, 3)))
    for key, value in worst.items():
        c.check(value <= tol, f"{key} off by {value:.2e}")
    c.note("worst deviations: " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))
    c.check(not e8_bad, f"E8 kernel sum identity fails for {len(e8_bad)}/100 event pairs")
    for k, d, r1, r2, r in e8_bad:
        c.note(f"E8 pair {k}: d={d}, ranks {list(r1)} and {list(r2)}, residual {r}")

    ket0 = np.array([[1.0], [0.0]])
    e0 = QuantumEvent(2, [ket0])
    c.check(np.max(np.abs(luders(np.full((2, 2), 0.5), e0) - np.diag([1, 0]))) <= tol,
            "Lüders update of |+><+| on |0> is not |0><0|")
    m = q_event_meet(QuantumEvent(2, [ket0]), QuantumEvent(2, [np.array([[1.0], [1.0]]) / np.sqrt(2)]))
    c.check(m.is_null, "meet of two distinct lines is not null")
    plane01 = QuantumEvent(3, [np.eye(3)[:, :2]])
    plane12 = QuantumEvent(3, [np.eye(3)[:, 1:]])
    m = q_event_meet(plane01, plane12)
    c.check(m.ranks == (1,) and np.max(np.abs(m.projectors[0] - np.diag([0, 1, 0]))) <= sub_tol,
            "meet of two planes is not the shared line")
    c.finish(capsys)


def test_criterion_7_membership_oracle(capsys):
    c = Criterion(7, "cone membership against the facet oracle", 30)
    S = PossibilitySpace.of_size(3)
    rng = random.Random(7)
    disagree = bad_cert = negatives = 0
    for k in range(1000):
        if k % 20 == 0:
            gens = tuple(tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(rng.randint(0, 2)))
            C = ConeRep(tuple(S.gamble(g) for g in gens), space=S)
        f = S.gamble([rng.randint(-5, 5) for _ in range(3)])
        got = cone_membership(f, C)
        if got != facet_member(gens, f.values):
            disagree += 1
        if not got:
            negatives += 1
            y = separating_certificate(f, C)
            if not (y is not None and y.dot(f) < 0 and all(y.dot(g) >= 0 for g in C.generators)
                    and all(v >= 0 for v in y.values)):
                bad_cert += 1
    c.check(disagree == 0, f"{disagree}/1000 membership answers disagree with the oracle")
    c.check(bad_cert == 0, f"{bad_cert}/{negatives} certificates are invalid")
    c.note(f"{negatives} gambles outside their cone, all certified" if not bad_cert else "")
    c.finish(capsys)

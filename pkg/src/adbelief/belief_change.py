"""Expansion, revision and a checker for the AGM revision postulates.

Revision conditions the model when it can; when the model is not
conditionable on a regular event it falls back to an operator picked from
:data:`FALLBACKS` (only full meet ships: keep nothing but the background
and indifference to the kernel).  Revising or expanding by a non-regular
event yields :data:`~adbelief.models.CONTRADICTION`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Optional

from .cones import Gamble, primitive
from .conditioning import Event, call_off, complement, event_meet
from .errors import NonRegularEvent
from .models import ADAssessment, ADModel, CONTRADICTION, natural_extension

__all__ = [
    "expand",
    "revise",
    "full_meet",
    "FALLBACKS",
    "register_fallback",
    "includes",
    "inclusion_witness",
    "same_model",
    "Verdict",
    "AgmReport",
    "check_agm",
    "detect_dilation",
    "sample_gambles",
]


def expand(M: ADModel, E: Event) -> ADModel:
    """Add indifference to the kernel of ``E`` and close."""
    if M.is_contradiction:
        return CONTRADICTION
    return M.expand(E)


def full_meet(M: ADModel, E: Event) -> ADModel:
    """The background plus indifference to the kernel of ``E``."""
    K = E.kernel_basis()
    return natural_extension(ADAssessment(E.space, tuple(K) + tuple(-b for b in K), ()))


FALLBACKS: Dict[str, Callable[[ADModel, Event], ADModel]] = {"full-meet": full_meet}


def register_fallback(name: str, operator: Callable[[ADModel, Event], ADModel]):
    """Make another revision fallback available under ``name``."""
    FALLBACKS[name] = operator


def revise(M: ADModel, E: Event, fallback: str = "full-meet") -> ADModel:
    """Condition when possible, otherwise fall back; contradiction for non-regular ``E``."""
    if M.is_contradiction:
        raise ValueError("cannot revise the contradictory model")
    if not E.is_regular():
        return CONTRADICTION
    if M.is_conditionable(E):
        return M.condition(E)
    return FALLBACKS[fallback](M, E)


# --- inclusion -------------------------------------------------------------

def sample_gambles(space, count: int, rng: random.Random, bound: int = 4) -> list:
    n = len(space)
    return [Gamble(space, [rng.randint(-bound, bound) for _ in range(n)]) for _ in range(count)]


def _near(witnesses, rng, count):
    # nonnegative combinations of witnesses, with a small perturbation
    out = []
    if not witnesses:
        return out
    space = witnesses[0].space
    n = len(space)
    for _ in range(count):
        k = rng.randint(1, min(3, len(witnesses)))
        g = space.zero()
        for w in rng.sample(list(witnesses), k):
            g = g + w * rng.randint(1, 3)
        if rng.random() < 0.5:
            i = rng.randrange(n)
            g = g + space.basis(i) * rng.choice((-1, 1))
        out.append(g)
    return out


def inclusion_witness(A: ADModel, B: ADModel, samples: Iterable[Gamble] = (),
                      normalise: Optional[Event] = None) -> Optional[tuple]:
    """Find a gamble in ``A`` but not in ``B``.

    Returns ``("acc" | "des", gamble)`` or ``None``.  Candidates are the
    witnesses of ``A`` followed by ``samples``.  With ``normalise`` the
    reported gamble is replaced by its called-off version when that is an
    equally good witness.
    """
    if B.is_contradiction:
        return None
    if A.is_contradiction:
        return ("acc", B.space.zero() - B.space.unit())
    acc_w, des_w = A.witnesses()
    samples = list(samples)
    for kind, cands, inA, inB in (
            ("acc", list(acc_w) + samples, A.accepts, B.accepts),
            ("des", list(des_w) + samples, A.desires, B.desires)):
        for f in cands:
            if inA(f) and not inB(f):
                if normalise is not None:
                    g = call_off(normalise, f)
                    if inA(g) and not inB(g):
                        f = g
                return kind, Gamble(f.space, primitive(f.values))
    return None


def includes(A: ADModel, B: ADModel, samples: Iterable[Gamble] = ()) -> bool:
    """Is ``A ⊆ B`` on witnesses and samples (both acceptable and desirable parts)?"""
    return inclusion_witness(A, B, samples) is None


def same_model(A: ADModel, B: ADModel, samples: Iterable[Gamble] = ()) -> bool:
    samples = list(samples)
    return includes(A, B, samples) and includes(B, A, samples)


# --- AGM postulates ----------------------------------------------------------

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[Gamble] = None
    part: Optional[str] = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAILS

    def to_json(self) -> dict:
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = [str(v) for v in self.witness.values]
            d["part"] = self.part
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class AgmReport:
    """Verdict per postulate; BR6 is the structural check."""

    verdicts: Dict[str, Verdict] = field(default_factory=dict)

    def __getitem__(self, key):
        return self.verdicts[key]

    def holds(self, *keys) -> bool:
        keys = keys or tuple(self.verdicts)
        return all(self.verdicts[k].ok for k in keys)

    def to_json(self) -> dict:
        return {k: v.to_json() for k, v in self.verdicts.items()}


def _from_witness(w, note=""):
    if w is None:
        return Verdict(HOLDS, note=note)
    return Verdict(FAILS, w[1], w[0], note)


def _coherent(R: ADModel, samples) -> Optional[tuple]:
    if R.is_contradiction:
        return None
    space = R.space
    for i in range(len(space)):
        if not R.accepts(space.basis(i)):
            return "acc", space.basis(i)
    if not R.desires(space.unit()):
        return "des", space.unit()
    if R.desires(space.zero()):
        return "des", space.zero()
    for f in samples:
        if R.desires(f) and not R.accepts(f):
            return "des", f
    return None


def check_agm(M: ADModel, E1: Event, E2: Event, samples: int = 64, seed: int = 0,
              fallback: str = "full-meet") -> AgmReport:
    """Evaluate BR1-BR8 for revising ``M`` by ``E1`` and then ``E2``.

    Inclusions are tested on the witnesses (generators) of the smaller side
    and on ``samples`` seeded pseudo-random gambles, half of them uniform and
    half built near the witnesses of the models involved.
    """
    if M.is_contradiction:
        raise ValueError("check_agm needs a consistent model")
    rng = random.Random(seed)
    space = M.space
    E12 = event_meet(E1, E2)
    R1 = revise(M, E1, fallback)
    X1 = expand(M, E1)
    R12 = revise(M, E12, fallback)
    X12 = expand(R1, E2) if not R1.is_contradiction else CONTRADICTION

    pool = []
    for model in (M, R1, X1, R12, X12):
        if not model.is_contradiction:
            pool.extend(model.witnesses()[0])
    uniform = sample_gambles(space, samples - samples // 2, rng)
    near = _near(pool, rng, samples // 2)
    sample = uniform + near

    report = AgmReport()
    v = report.verdicts

    w = _coherent(R1, sample)
    v["BR1"] = _from_witness(w)

    if R1.is_contradiction:
        v["BR2"] = Verdict(HOLDS, note="contradiction accepts everything")
    else:
        bad = None
        for b in E1.kernel_basis():
            for g in (b, -b):
                if not R1.accepts(g):
                    bad = ("acc", g)
                    break
            if bad:
                break
        v["BR2"] = _from_witness(bad)

    v["BR3"] = _from_witness(inclusion_witness(R1, X1, sample))
    if X1.is_contradiction:
        v["BR4"] = Verdict(NOT_APPLICABLE, note="model and event are inconsistent")
    else:
        v["BR4"] = _from_witness(inclusion_witness(X1, R1, sample))

    regular = E1.is_regular()
    if regular == (not R1.is_contradiction):
        v["BR5"] = Verdict(HOLDS)
    else:
        v["BR5"] = Verdict(FAILS, note="consistency of the revision does not track regularity")

    # BR6: the revision only sees E through its kernel, so rebuilding the
    # same event from a shuffled description must give the same model.
    order = sorted(E1.indices)
    rng.shuffle(order)
    R1b = revise(M, Event(space, order), fallback)
    w = inclusion_witness(R1, R1b, sample) or inclusion_witness(R1b, R1, sample)
    v["BR6"] = _from_witness(w, note="structural")

    v["BR7"] = _from_witness(inclusion_witness(R12, X12, sample, normalise=E12))
    if X12.is_contradiction:
        v["BR8"] = Verdict(NOT_APPLICABLE, note="revised model and second event are inconsistent")
    else:
        v["BR8"] = _from_witness(inclusion_witness(X12, R12, sample, normalise=E12))
    return report


# --- dilation --------------------------------------------------------------

def _interval(M: ADModel, f: Gamble, E: Optional[Event] = None) -> tuple:
    if E is None:
        return M.lower_prevision(f), M.upper_prevision(f)
    return M.conditional_lower_prevision(f, E), M.conditional_upper_prevision(f, E)


def _strictly_wider(inner, outer) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1] and outer != inner


def detect_dilation(M: ADModel, E: Event, f: Gamble) -> bool:
    """Does conditioning on both ``E`` and its complement strictly widen ``[L(f), U(f)]``?"""
    Ec = complement(E)
    for ev in (E, Ec):
        if not ev.is_regular():
            raise NonRegularEvent(f"{ev!r} is not a regular event")
    base = _interval(M, f)
    return all(_strictly_wider(base, _interval(M, f, ev)) for ev in (E, Ec))

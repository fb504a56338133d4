"""Accept-desirability models over a finite possibility space.

An AD model is a pair of sets of gambles: the acceptable ones (a closed
convex cone containing every nonnegative gamble) and the desirable ones
(those that remain acceptable after subtracting a small positive
multiple of something desirable).  The background is always the canonical
one, ``⟨𝒢≥0, 𝒢>0⟩`` with the all-ones gamble as unit.

:class:`ADModel` is the abstract interface; :class:`ConeModel` is the
finitely generated implementation used for everything built by natural
extension.  :data:`CONTRADICTION` is the inconsistent top element, which
accepts and desires every gamble.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cones import (ConeRep, Gamble, PossibilitySpace, cone_intersect_subspace,
                    cone_membership, extreme_rays, nullspace, primitive, strict_membership)
from .errors import NonRegularEvent, NotConditionable, InvariantViolation
from .lp import lp_max, UNBOUNDED

__all__ = [
    "Background",
    "ADAssessment",
    "ADModel",
    "ConeModel",
    "Contradiction",
    "CONTRADICTION",
    "ConditionedModel",
    "natural_extension",
    "is_consistent",
    "accepts",
    "desires",
    "lower_prevision",
    "upper_prevision",
    "vacuous_model",
    "precise_model",
    "check_ad_axioms",
]


@dataclass(frozen=True)
class Background:
    """The canonical background ``⟨𝒢≥0, 𝒢>0⟩`` on a possibility space."""

    space: PossibilitySpace

    @property
    def unit(self) -> Gamble:
        return self.space.unit()

    @property
    def acc(self) -> ConeRep:
        return ConeRep((), nonneg_orthant=True, space=self.space)

    @property
    def des_marker(self) -> ConeRep:
        return ConeRep((), nonneg_orthant=True, open_orthant_shift=True, space=self.space)


@dataclass(frozen=True)
class ADAssessment:
    """Finitely many acceptable and desirable gambles.

    Desirable gambles are also acceptable; :func:`natural_extension` adds
    them to the acceptable generators, so callers need not repeat them.
    """

    space: PossibilitySpace
    acc_gens: tuple = ()
    des_gens: tuple = ()

    def __post_init__(self):
        acc = tuple(g if isinstance(g, Gamble) else Gamble(self.space, g) for g in self.acc_gens)
        des = tuple(g if isinstance(g, Gamble) else Gamble(self.space, g) for g in self.des_gens)
        for g in acc + des:
            if g.space != self.space:
                raise ValueError("assessment gambles live on a different possibility space")
        object.__setattr__(self, "acc_gens", acc)
        object.__setattr__(self, "des_gens", des)


class ADModel(ABC):
    """Interface shared by every closed AD model."""

    space: PossibilitySpace
    is_contradiction = False

    @abstractmethod
    def accepts(self, f: Gamble) -> bool:
        """Is ``f`` in the acceptable set?"""

    @abstractmethod
    def desires(self, f: Gamble) -> bool:
        """Is ``f`` in the desirable set?"""

    @abstractmethod
    def lower_prevision(self, f: Gamble) -> Fraction:
        """``sup{α : f - α ∈ acceptable}``."""

    def upper_prevision(self, f: Gamble) -> Fraction:
        return -self.lower_prevision(-f)

    @abstractmethod
    def is_conditionable(self, event) -> bool:
        """Can the model be conditioned on ``event`` without losing consistency?"""

    @abstractmethod
    def condition(self, event) -> "ADModel":
        """The conditional model; raises when the event is not regular or not conditionable."""

    @abstractmethod
    def conditional_lower_prevision(self, f: Gamble, event) -> Fraction:
        """``sup{α : I_E (f - α) ∈ acceptable}``."""

    def conditional_upper_prevision(self, f: Gamble, event) -> Fraction:
        return -self.conditional_lower_prevision(-f, event)

    @abstractmethod
    def expand(self, event) -> "ADModel":
        """Closure of the model together with indifference to the event's kernel."""

    @abstractmethod
    def witnesses(self) -> tuple:
        """``(acceptable, desirable)`` gambles that describe the model.

        For finitely generated models these are generators, so an inclusion
        test on them is complete.
        """

    def _check_space(self, f: Gamble):
        if f.space != self.space:
            raise ValueError("gamble lives on a different possibility space than the model")


class Contradiction(ADModel):
    """The inconsistent model: every gamble is acceptable and desirable."""

    is_contradiction = True
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    space = None

    def accepts(self, f):
        return True

    def desires(self, f):
        return True

    def lower_prevision(self, f):
        raise ValueError("the contradictory model has no finite prevision")

    def conditional_lower_prevision(self, f, event):
        raise ValueError("the contradictory model has no finite prevision")

    def is_conditionable(self, event):
        return False

    def condition(self, event):
        raise NotConditionable("the contradictory model cannot be conditioned")

    def expand(self, event):
        return self

    def witnesses(self):
        return (), ()

    def __repr__(self):
        return "CONTRADICTION"

    def __reduce__(self):
        return (Contradiction, ())


CONTRADICTION = Contradiction()


class ConditionedModel(ADModel):
    """``base`` conditioned on ``event``, evaluated lazily through ``base``.

    Used for models whose conditionals have no closed form of their own.
    ``f`` is acceptable iff ``I_E f`` is acceptable to ``base``; it is
    desirable iff ``I_E f`` is desirable to ``base`` or the conditional
    lower prevision of ``f`` given ``E`` is positive.
    """

    def __init__(self, base: ADModel, event):
        self.base = base
        self.event = event
        self.space = base.space
        self._ind = event.indicator()

    def __repr__(self):
        return f"ConditionedModel({self.base!r}, {self.event!r})"

    def _event(self, indices):
        return type(self.event)(self.space, indices)

    def accepts(self, f: Gamble) -> bool:
        self._check_space(f)
        return self.base.accepts(f * self._ind)

    def desires(self, f: Gamble) -> bool:
        self._check_space(f)
        if self.base.desires(f * self._ind):
            return True
        return self.base.conditional_lower_prevision(f, self.event) > 0

    def lower_prevision(self, f: Gamble) -> Fraction:
        return self.base.conditional_lower_prevision(f, self.event)

    def is_conditionable(self, event) -> bool:
        _require_regular(event)
        meet = self.event.indices & event.indices
        return bool(meet) and self.base.is_conditionable(self._event(meet))

    def condition(self, event) -> ADModel:
        if not self.is_conditionable(event):
            raise NotConditionable(f"model is not conditionable on {event!r}")
        return ConditionedModel(self.base, self._event(self.event.indices & event.indices))

    def conditional_lower_prevision(self, f: Gamble, event) -> Fraction:
        if not self.is_conditionable(event):
            raise NotConditionable(f"model is not conditionable on {event!r}")
        return self.base.conditional_lower_prevision(
            f, self._event(self.event.indices & event.indices))

    def expand(self, event) -> ADModel:
        # (A⌋E) + K_G = (A + K_{G ∪ Eᶜ})⌋E
        if not event.is_regular():
            return CONTRADICTION
        outside = frozenset(range(len(self.space))) - self.event.indices
        wider = self.base.expand(self._event(event.indices | outside))
        if wider.is_contradiction or not wider.is_conditionable(self.event):
            return CONTRADICTION
        return ConditionedModel(wider, self.event)

    def witnesses(self) -> tuple:
        acc, des = self.base.witnesses()
        outside = [self.space.basis(i) for i in range(len(self.space))
                   if i not in self.event.indices]
        kern = tuple(outside) + tuple(-b for b in outside)
        acc = tuple(g * self._ind for g in acc) + kern
        des = tuple(g * self._ind for g in des) + tuple(b + self._ind for b in kern)
        return acc, des



def _normalise(gens: Iterable[Gamble]) -> tuple:
    out, seen = [], set()
    for g in gens:
        v = primitive(g.values)
        if any(v) and v not in seen:
            seen.add(v)
            out.append(Gamble(g.space, v))
    return tuple(out)


class ConeModel(ADModel):
    """A finitely generated AD model.

    ``acc = posi(acc_gens ∪ 𝒢≥0)`` and
    ``des = posi(des_gens ∪ 𝒢>0) + acc`` (with at least one strictly positive
    weight on ``des_gens ∪ {1}``).  Build instances with
    :func:`natural_extension`, which checks consistency.
    """

    def __init__(self, space: PossibilitySpace, acc_gens: Sequence[Gamble],
                 des_gens: Sequence[Gamble] = ()):
        self.space = space
        self.des_gens = _normalise(des_gens)
        acc = [g for g in _normalise(list(acc_gens) + list(self.des_gens)) if not g.is_nonneg()]
        self.acc_gens = tuple(acc)
        self._acc_cone = ConeRep(self.acc_gens, nonneg_orthant=True, space=space)
        self._acc_memo = {}
        self._des_memo = {}

    def __repr__(self):
        acc = [list(map(str, g.values)) for g in self.acc_gens]
        des = [list(map(str, g.values)) for g in self.des_gens]
        return f"ConeModel(space={list(self.space.labels)!r}, acc={acc}, des={des})"

    @property
    def acc_cone(self) -> ConeRep:
        return self._acc_cone

    def accepts(self, f: Gamble) -> bool:
        self._check_space(f)
        key = f.values
        hit = self._acc_memo.get(key)
        if hit is None:
            hit = cone_membership(f, self._acc_cone)
            self._acc_memo[key] = hit
        return hit

    def desires(self, f: Gamble) -> bool:
        self._check_space(f)
        key = f.values
        hit = self._des_memo.get(key)
        if hit is None:
            hit = strict_membership(f, self.des_gens, self._acc_cone)
            self._des_memo[key] = hit
        return hit

    def _columns(self):
        n = len(self.space)
        cols = [g.values for g in self.acc_gens]
        cols.extend(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
        return cols

    def lower_prevision(self, f: Gamble) -> Fraction:
        self._check_space(f)
        return self._sup_alpha(f.values, (1,) * len(self.space))

    def _sup_alpha(self, target, shift) -> Fraction:
        # max α  s.t.  target - α·shift = Σ λ_k c_k,  λ >= 0,  α free
        cols = self._columns()
        n = len(self.space)
        cons = [([shift[i]] + [c[i] for c in cols], "==", target[i]) for i in range(n)]
        res = lp_max([1] + [0] * len(cols), cons, nonneg=range(1, len(cols) + 1))
        if res.status == UNBOUNDED:
            raise NotConditionable("the supremum is unbounded: the model is not conditionable")
        if not res.optimal:  # pragma: no cover - target - α·shift is nonneg for small α
            raise InvariantViolation("price LP unexpectedly infeasible")
        return res.value

    def conditional_lower_prevision(self, f: Gamble, event) -> Fraction:
        self._check_space(f)
        _require_regular(event)
        if not self.is_conditionable(event):
            raise NotConditionable(f"model is not conditionable on {event!r}")
        ind = event.indicator().values
        target = tuple(a * b for a, b in zip(ind, f.values))
        return self._sup_alpha(target, ind)

    def is_conditionable(self, event) -> bool:
        # infeasibility of: g ∈ acc, g <= -1 on E, g = 0 off E
        _require_regular(event)
        cols = self._columns()
        n = len(self.space)
        members = event.indices
        cons = []
        for i in range(n):
            row = [c[i] for c in cols]
            cons.append((row, "<=", -1) if i in members else (row, "==", 0))
        return not lp_max([0] * len(cols), cons).feasible

    def condition(self, event) -> "ConeModel":
        _require_regular(event)
        if not self.is_conditionable(event):
            raise NotConditionable(f"model is not conditionable on {event!r}")
        n = len(self.space)
        members = event.indices
        strict = [d.values for d in self.des_gens] + [(1,) * n]
        loose = [g.values for g in self.acc_gens if g not in self.des_gens]
        loose.extend(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
        cols = strict + loose
        k = len(strict)
        M = [[c[i] for c in cols] for i in range(n) if i not in members]
        acc, des = [], []
        for lam in extreme_rays(M, len(cols)):
            v = [sum(l * c[i] for l, c in zip(lam, cols)) for i in range(n)]
            if not any(v):
                if any(lam[:k]):
                    raise InvariantViolation("zero gamble became desirable while conditioning")
                continue
            g = Gamble(self.space, primitive(v))
            (des if any(lam[:k]) else acc).append(g)
        kernel = event.kernel_basis()
        acc.extend(kernel)
        acc.extend(-b for b in kernel)
        model = ConeModel(self.space, acc, des)
        if not _consistent(model):  # pragma: no cover - guaranteed by conditionability
            raise InvariantViolation("conditioned model is inconsistent")
        return model

    def expand(self, event) -> ADModel:
        if not event.is_regular():
            return CONTRADICTION
        kernel = event.kernel_basis()
        if not kernel:
            return self
        acc = list(self.acc_gens) + list(kernel) + [-b for b in kernel]
        return natural_extension(ADAssessment(self.space, tuple(acc), self.des_gens))

    def witnesses(self) -> tuple:
        n = len(self.space)
        acc = list(self.acc_gens) + [self.space.basis(i) for i in range(n)]
        des = list(self.des_gens) + [self.space.unit()]
        return tuple(acc), tuple(des)

    def generator_cone(self, basis: Sequence[Gamble]) -> ConeRep:
        """Generators of ``acc ∩ span(basis)``."""
        return cone_intersect_subspace(self._acc_cone, basis)


def _require_regular(event):
    if not event.is_regular():
        raise NonRegularEvent(f"{event!r} is not a regular event")


def _consistent(model: ConeModel) -> bool:
    return not model.desires(model.space.zero())


def natural_extension(A: ADAssessment, V: Optional[Background] = None) -> ADModel:
    """The least resolved AD model including the background and ``A``.

    Returns :data:`CONTRADICTION` when the assessment is inconsistent.
    """
    if V is not None and V.space != A.space:
        raise ValueError("background and assessment live on different spaces")
    model = ConeModel(A.space, A.acc_gens, A.des_gens)
    return model if _consistent(model) else CONTRADICTION


def is_consistent(A: ADAssessment, V: Optional[Background] = None) -> bool:
    """Is ``0`` outside the desirable closure of ``A`` (and the background)?"""
    return not natural_extension(A, V).is_contradiction


def accepts(M: ADModel, f: Gamble) -> bool:
    return M.accepts(f)


def desires(M: ADModel, f: Gamble) -> bool:
    return M.desires(f)


def lower_prevision(M: ADModel, f: Gamble) -> Fraction:
    return M.lower_prevision(f)


def upper_prevision(M: ADModel, f: Gamble) -> Fraction:
    return M.upper_prevision(f)


def vacuous_model(space: PossibilitySpace) -> ConeModel:
    return ConeModel(space, ())


def precise_model(space: PossibilitySpace, pmf: Sequence) -> ConeModel:
    """The model accepting ``f`` iff its expectation under ``pmf`` is nonnegative."""
    p = [Fraction(v) for v in pmf]
    if len(p) != len(space) or any(v < 0 for v in p) or sum(p) != 1:
        raise ValueError("pmf must be a nonnegative vector summing to one")
    gens = []
    for b in nullspace([p], len(p)):
        g = Gamble(space, b)
        gens.extend([g, -g])
    return ConeModel(space, gens)


def check_ad_axioms(M: ADModel, samples: int = 32, seed: int = 0) -> list:
    """Sample-based check of the AD axioms; returns a list of violation messages."""
    if M.is_contradiction:
        return []
    space = M.space
    n = len(space)
    rng = random.Random(seed)
    problems = []
    for i in range(n):
        if not M.accepts(space.basis(i)):
            problems.append(f"background gamble e_{i} not acceptable")
    if not M.desires(space.unit()):
        problems.append("unit gamble not desirable")
    if not M.accepts(space.zero()):
        problems.append("zero gamble not acceptable")
    if M.desires(space.zero()):
        problems.append("zero gamble desirable")
    pool = [Gamble(space, [rng.randint(-4, 4) for _ in range(n)]) for _ in range(samples)]
    acc_w, des_w = M.witnesses()
    pool.extend(acc_w)
    pool.extend(des_w)
    acc = [f for f in pool if M.accepts(f)]
    des = [f for f in pool if M.desires(f)]
    for f in des:
        if not M.accepts(f):
            problems.append(f"desirable but not acceptable: {f}")
    for _ in range(samples):
        if len(acc) >= 2:
            f, g = rng.sample(acc, 2)
            a, b = Fraction(rng.randint(1, 5), rng.randint(1, 3)), Fraction(rng.randint(0, 5), rng.randint(1, 3))
            if not M.accepts(a * f + b * g):
                problems.append(f"acceptable set not a convex cone at {f}, {g}")
        if len(des) >= 2:
            f, g = rng.sample(des, 2)
            a, b = Fraction(rng.randint(1, 5), rng.randint(1, 3)), Fraction(rng.randint(0, 5), rng.randint(1, 3))
            if not M.desires(a * f + b * g):
                problems.append(f"desirable set not a convex cone at {f}, {g}")
        if acc and des:
            f, g = rng.choice(acc), rng.choice(des)
            if not M.desires(f + g):
                problems.append(f"acceptable + desirable not desirable at {f}, {g}")
    return problems

"""Classical events, calling off, regularity and conditioning.

An event ``E ⊆ Ω`` acts on gambles by calling them off outside ``E``:
``f ↦ I_E·f``.  Its kernel, the gambles that vanish on ``E``, is what an
agent becomes indifferent to on learning ``E``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .cones import Gamble, PossibilitySpace, rank
from .errors import InvariantViolation, NonRegularEvent
from .models import ADAssessment, ADModel, natural_extension

__all__ = [
    "Event",
    "Kernel",
    "call_off",
    "kernel",
    "event_leq",
    "event_meet",
    "complement",
    "is_regular",
    "is_conditionable",
    "condition",
    "conditional_lower_prevision",
    "conditional_upper_prevision",
]


class Event:
    """A subset of a possibility space, stored as outcome indices."""

    __slots__ = ("space", "indices")

    def __init__(self, space: PossibilitySpace, indices: Iterable[int]):
        idx = frozenset(int(i) for i in indices)
        if any(i < 0 or i >= len(space) for i in idx):
            raise ValueError("event index outside the possibility space")
        self.space = space
        self.indices = idx

    @classmethod
    def from_labels(cls, space: PossibilitySpace, labels: Iterable) -> "Event":
        return cls(space, (space.index(lab) for lab in labels))

    @classmethod
    def full(cls, space: PossibilitySpace) -> "Event":
        return cls(space, range(len(space)))

    @classmethod
    def empty(cls, space: PossibilitySpace) -> "Event":
        return cls(space, ())

    @property
    def labels(self) -> list:
        return [self.space.labels[i] for i in sorted(self.indices)]

    def __eq__(self, other):
        return (isinstance(other, Event) and self.space == other.space
                and self.indices == other.indices)

    def __hash__(self):
        return hash(self.indices)

    def __repr__(self):
        return "Event({" + ", ".join(map(str, self.labels)) + "})"

    def __len__(self):
        return len(self.indices)

    def indicator(self) -> Gamble:
        return self.space.indicator(self.indices)

    def kernel_basis(self) -> list:
        return [self.space.basis(i) for i in range(len(self.space)) if i not in self.indices]

    def is_regular(self) -> bool:
        return bool(self.indices)


class Kernel:
    """The subspace ``{f : I_E·f = 0}``, spanned by the axes outside ``E``."""

    def __init__(self, event: Event):
        self.event = event
        self.basis = event.kernel_basis()

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __contains__(self, f: Gamble) -> bool:
        return all(f.values[i] == 0 for i in self.event.indices)

    def __repr__(self):
        return f"Kernel({self.event!r})"


def kernel(E: Event) -> Kernel:
    return Kernel(E)


def call_off(E: Event, f: Gamble) -> Gamble:
    """``I_E·f``: keep ``f`` on ``E`` and set it to zero elsewhere."""
    if f.space != E.space:
        raise ValueError("event and gamble live on different possibility spaces")
    return Gamble._raw(f.space, tuple(v if i in E.indices else Fraction(0)
                                      for i, v in enumerate(f.values)))


def _same_space(E1: Event, E2: Event):
    if E1.space != E2.space:
        raise ValueError("events live on different possibility spaces")


def event_leq(E1: Event, E2: Event) -> bool:
    _same_space(E1, E2)
    return E1.indices <= E2.indices


def event_meet(E1: Event, E2: Event) -> Event:
    _same_space(E1, E2)
    return Event(E1.space, E1.indices & E2.indices)


def complement(E: Event) -> Event:
    return Event(E.space, set(range(len(E.space))) - E.indices)


def kernels_sum_dimension(E1: Event, E2: Event) -> int:
    """Dimension of ``Kernel(E1) + Kernel(E2)``."""
    rows = [b.values for b in E1.kernel_basis() + E2.kernel_basis()]
    return rank(rows) if rows else 0


def is_regular(E: Event) -> bool:
    """A classical event is regular iff it is nonempty.

    The defining condition, that no uniformly positive gamble lies in the
    kernel, is rechecked with the strict-membership LP.
    """
    closed_form = E.is_regular()
    K = E.kernel_basis()
    assessment = ADAssessment(E.space, tuple(K) + tuple(-b for b in K), ())
    by_lp = not natural_extension(assessment).is_contradiction
    if closed_form != by_lp:
        raise InvariantViolation(f"regularity of {E!r}: closed form {closed_form}, LP {by_lp}")
    return closed_form


def is_conditionable(M: ADModel, E: Event) -> bool:
    if not E.is_regular():
        raise NonRegularEvent(f"{E!r} is not a regular event")
    return M.is_conditionable(E)


def condition(M: ADModel, E: Event) -> ADModel:
    """The model ``M`` conditioned on ``E``.

    Raises :class:`NonRegularEvent` or :class:`NotConditionable` when the
    conditional model is undefined.
    """
    return M.condition(E)


def conditional_lower_prevision(M: ADModel, f: Gamble, E: Event) -> Fraction:
    return M.conditional_lower_prevision(f, E)


def conditional_upper_prevision(M: ADModel, f: Gamble, E: Event) -> Fraction:
    return M.conditional_upper_prevision(f, E)

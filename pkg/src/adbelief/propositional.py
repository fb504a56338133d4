"""Propositional belief states as AD models.

On a finite space every proper filter of propositions is principal, so a
belief state is just its core: the smallest proposition believed.  The
embedding sends a core ``C`` to the natural extension of ``I_C - 1``,
which accepts exactly the gambles that are nonnegative on ``C``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .cones import PossibilitySpace
from .conditioning import Event
from .errors import NonRegularEvent
from .models import ADAssessment, ADModel, ConeModel, natural_extension

__all__ = [
    "FilterCore",
    "filter_closure",
    "embed_filter",
    "extract_filter",
    "prop_revise",
    "prop_expand",
    "all_events",
]


@dataclass(frozen=True)
class FilterCore:
    """A proper filter on a finite space, represented by its core."""

    space: PossibilitySpace
    core: frozenset

    def __post_init__(self):
        object.__setattr__(self, "core", frozenset(self.core))
        if not self.core:
            raise ValueError("a proper filter has a nonempty core")
        if any(i < 0 or i >= len(self.space) for i in self.core):
            raise ValueError("core index outside the possibility space")

    def __contains__(self, proposition) -> bool:
        """Is the proposition (a set of outcome indices) in the filter?"""
        return self.core <= frozenset(proposition)

    @property
    def event(self) -> Event:
        return Event(self.space, self.core)

    def __repr__(self):
        labels = [self.space.labels[i] for i in sorted(self.core)]
        return "FilterCore({" + ", ".join(map(str, labels)) + "})"


def all_events(space: PossibilitySpace, nonempty: bool = False) -> list:
    n = len(space)
    out = []
    for k in range(1 if nonempty else 0, n + 1):
        out.extend(Event(space, c) for c in combinations(range(n), k))
    return out


def filter_closure(space: PossibilitySpace, props: Iterable[Iterable[int]]) -> Optional[FilterCore]:
    """Deductive closure of ``props``; ``None`` when they are jointly inconsistent."""
    core = frozenset(range(len(space)))
    for p in props:
        core &= frozenset(p)
    return FilterCore(space, core) if core else None


def embed_filter(F: FilterCore) -> ConeModel:
    space = F.space
    g = space.indicator(F.core).shift(-1)
    return natural_extension(ADAssessment(space, (g,) if not g.is_zero() else ()))


def extract_filter(M: ADModel) -> FilterCore:
    """The propositions ``B`` whose bet ``I_B - 1`` the model accepts."""
    if M.is_contradiction:
        raise ValueError("the contradictory model has no proper filter")
    space = M.space
    core = frozenset(range(len(space)))
    for B in all_events(space):
        if M.accepts(B.indicator().shift(-1)):
            core &= B.indices
    return FilterCore(space, core)


def prop_revise(F: FilterCore, E: Event) -> FilterCore:
    """Full meet revision: keep ``core ∩ E`` if possible, else believe just ``E``."""
    if not E.indices:
        raise NonRegularEvent("cannot revise by the empty proposition")
    meet = F.core & E.indices
    return FilterCore(F.space, meet if meet else E.indices)


def prop_expand(F: FilterCore, E: Event) -> Optional[FilterCore]:
    """``core ∩ E``, or ``None`` (the contradiction) when that is empty."""
    meet = F.core & E.indices
    return FilterCore(F.space, meet) if meet else None

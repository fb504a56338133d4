"""Random instances shared by the test modules."""

import random

from adbelief import ADAssessment, Event, PossibilitySpace, natural_extension


def random_model(rng: random.Random, n: int, max_gens: int = 4, bound: int = 3):
    """A consistent natural extension with at most ``max_gens`` generators."""
    S = PossibilitySpace.of_size(n)
    while True:
        k = rng.randint(1, max_gens)
        gens = [S.gamble([rng.randint(-bound, bound) for _ in range(n)]) for _ in range(k)]
        des = [g for g in gens if rng.random() < 0.3]
        acc = [g for g in gens if g not in des]
        M = natural_extension(ADAssessment(S, tuple(acc), tuple(des)))
        if not M.is_contradiction:
            return M


def random_event(rng: random.Random, S, p: float = 0.6, nonempty: bool = True) -> Event:
    while True:
        E = Event(S, [i for i in range(len(S)) if rng.random() < p])
        if E.indices or not nonempty:
            return E

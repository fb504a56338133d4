import random
from fractions import Fraction

import pytest

from adbelief import (ConditionedModel, EmptyConditioningEvent, Event, LayeredPrevision, LPOracle,
                      PossibilitySpace, PrevisionalModel, check_coherence, embed_fcp, expand,
                      fcp_value, previsional_expand_consistent, previsional_revise, revise)
from adbelief.belief_change import sample_gambles
from adbelief.previsional import coherence_violations, random_layered_prevision

from helpers import random_event

S3 = PossibilitySpace.of_size(3)
S4 = PossibilitySpace.of_size(4)
Q = Fraction(1, 4)
UNIFORM = LayeredPrevision(S4, [{0: Q, 1: Q, 2: Q, 3: Q}])
STACKED = LayeredPrevision(S4, [{0: Fraction(1, 2), 1: Fraction(1, 2)}, {2: 1}, {3: 1}])


def test_layer_validation():
    with pytest.raises(ValueError):
        LayeredPrevision(S3, [{0: Fraction(1, 2)}])
    with pytest.raises(ValueError):
        LayeredPrevision(S3, [{0: 1}, {0: 1}])
    with pytest.raises(ValueError):
        LayeredPrevision(S3, [])


def test_fcp_examples():
    assert fcp_value(UNIFORM, S4.gamble([4, 0, 0, 0]), range(4)) == 1
    f = S4.gamble([7, -2, 5, 11])
    assert fcp_value(STACKED, f, {2, 3}) == 5
    with pytest.raises(EmptyConditioningEvent):
        fcp_value(STACKED, f, set())


def test_fcp_bounds_on_random_cases():
    rng = random.Random(3)
    for _ in range(500):
        P = random_layered_prevision(S4, rng)
        f = S4.gamble([rng.randint(-9, 9) for _ in range(4)])
        B = random_event(rng, S4).indices
        assert f.min_on(B) <= fcp_value(P, f, B) <= f.max_on(B)


def test_coherence():
    rng = random.Random(0)
    for k in range(5):
        assert check_coherence(random_layered_prevision(S4, rng), samples=100, seed=k)
    assert check_coherence(UNIFORM, samples=100)


class _Corrupted:
    """A prevision table with one entry changed."""

    def __init__(self, P):
        self.P = P
        self.space = P.space
        self.domain = P.domain

    def value(self, f, B):
        v = self.P.value(f, B)
        if frozenset(B) == frozenset({0, 1}):
            return v + Fraction(1, 10) * f.values[0]
        return v


def test_corrupted_table_fails():
    assert coherence_violations(_Corrupted(UNIFORM), samples=200)


def test_embedded_status_quo():
    M = embed_fcp(STACKED)
    assert M.accepts(S4.zero()) and not M.desires(S4.zero())


def test_embedded_conditional_equals_table():
    rng = random.Random(7)
    for _ in range(200):
        P = random_layered_prevision(S4, rng)
        M = embed_fcp(P)
        f = S4.gamble([rng.randint(-6, 6) for _ in range(4)])
        B = random_event(rng, S4)
        v = fcp_value(P, f, B.indices)
        assert M.conditional_lower_prevision(f, B) == v == M.conditional_upper_prevision(f, B)
        # the update identity P(I_B f) = P(f|B) P(I_B)
        assert M.lower_prevision(B.indicator() * f) == v * M.lower_prevision(B.indicator())


def test_closed_form_matches_oracle():
    rng = random.Random(1)
    for _ in range(12):
        P = random_layered_prevision(S3, rng)
        M, O = embed_fcp(P), LPOracle(P)
        for f in sample_gambles(S3, 25, rng, bound=3):
            assert M.accepts(f) == O.accepts(f), (P, f)
            assert M.desires(f) == O.desires(f), (P, f)


def test_revision_examples():
    assert previsional_revise(UNIFORM, range(4)) == UNIFORM
    half = Fraction(1, 2)
    assert previsional_revise(UNIFORM, {0, 1}).layers == ({0: half, 1: half},)
    assert previsional_revise(STACKED, {2, 3}).layers == ({2: 1}, {3: 1})
    with pytest.raises(EmptyConditioningEvent):
        previsional_revise(UNIFORM, set())


def test_revision_matches_model_revision():
    rng = random.Random(5)
    for _ in range(15):
        P = random_layered_prevision(S4, rng)
        E = random_event(rng, S4)
        A, B = PrevisionalModel(previsional_revise(P, E.indices)), revise(embed_fcp(P), E)
        for f in sample_gambles(S4, 20, rng):
            assert A.accepts(f) == B.accepts(f) and A.desires(f) == B.desires(f)


def test_revision_composes():
    rng = random.Random(9)
    for _ in range(30):
        P = random_layered_prevision(S4, rng)
        E1, E2 = random_event(rng, S4), random_event(rng, S4)
        both = E1.indices & E2.indices
        if both:
            assert previsional_revise(previsional_revise(P, E1.indices), both) == previsional_revise(P, both)


def test_expand_consistency_examples():
    assert previsional_expand_consistent(UNIFORM, range(4))
    assert not previsional_expand_consistent(UNIFORM, {0, 1})
    two = LayeredPrevision(S4, [{0: Fraction(1, 2), 1: Fraction(1, 2)}, {2: Fraction(1, 2), 3: Fraction(1, 2)}])
    assert previsional_expand_consistent(two, {0, 1})
    # then expansion is the restriction
    X = expand(embed_fcp(two), Event(S4, [0, 1]))
    R = PrevisionalModel(previsional_revise(two, {0, 1}))
    for f in sample_gambles(S4, 40, random.Random(2)):
        assert X.accepts(f) == R.accepts(f)


def test_weak_expansion_is_not_a_restriction():
    # the top layer sits inside E, yet P(E|{1,3}) = 0: expansion stays
    # consistent but accepts more than the revision does
    P = LayeredPrevision(S3, [{1: 1}, {2: 1}, {0: 1}])
    E = Event(S3, [0, 1])
    assert not previsional_expand_consistent(P, E.indices)
    M = embed_fcp(P)
    X, R = expand(M, E), revise(M, E)
    assert not X.is_contradiction
    f = S3.gamble([-1, 0, 0])
    assert X.accepts(f) and LPOracle(P).expanded_accepts(f, E.indices)
    assert not R.accepts(f)


def test_expansion_contradiction_when_top_layer_leaves_event():
    assert expand(embed_fcp(UNIFORM), Event(S4, [0, 1])).is_contradiction


def test_expanded_models_match_oracle():
    rng = random.Random(4)
    seen = 0
    for _ in range(40):
        P = random_layered_prevision(S3, rng)
        E = random_event(rng, S3)
        X = expand(embed_fcp(P), E)
        O = LPOracle(P)
        assert X.is_contradiction == (not O.expand_consistent(E.indices))
        if X.is_contradiction:
            continue
        F = random_event(rng, S3)
        for f in sample_gambles(S3, 10, rng, bound=3):
            assert X.accepts(f) == O.expanded_accepts(f, E.indices)
            assert X.desires(f) == O.expanded_desires(f, E.indices)
        if X.is_conditionable(F):
            seen += 1
            C = X.condition(F)
            for f in sample_gambles(S3, 10, rng, bound=3):
                assert C.accepts(f) == O.expanded_revised_accepts(f, E.indices, F.indices)
                assert C.desires(f) == O.expanded_revised_desires(f, E.indices, F.indices)
    assert seen > 5


def test_conditioning_a_weak_expansion_is_lazy():
    P = LayeredPrevision(S3, [{1: 1}, {2: 1}, {0: 1}])
    X = expand(embed_fcp(P), Event(S3, [0, 1]))
    assert isinstance(X, PrevisionalModel) and not X.is_plain
    C = X.condition(Event(S3, [0, 1]))
    assert isinstance(C, ConditionedModel)
    assert C.accepts(S3.gamble([-1, 0, 5])) and not C.accepts(S3.gamble([0, -1, 5]))
    # conditioning on an event carrying the free outcome is impossible
    assert not X.is_conditionable(Event(S3, [0, 2]))


def test_embedded_models_are_precise():
    rng = random.Random(6)
    for _ in range(20):
        M = embed_fcp(random_layered_prevision(S4, rng))
        f = S4.gamble([rng.randint(-5, 5) for _ in range(4)])
        assert M.lower_prevision(f) == M.upper_prevision(f)

"""Expanding a full conditional probability need not give its revision.

The top layer puts all mass on outcome 2, so expanding by E = {1, 2} is
consistent.  Yet outcome 3 is more plausible than outcome 1 given {1, 3},
so P(E | {1, 3}) = 0.  The expanded model becomes indifferent to outcome 3
and then accepts losing on outcome 1; the revision, which keeps only
conditionals inside E, does not.  Both answers are confirmed by the
brute-force LP oracle.
"""

from adbelief import (Event, LayeredPrevision, LPOracle, PossibilitySpace, check_agm, embed_fcp,
                      expand, previsional_expand_consistent, revise)

S = PossibilitySpace.of_size(3)
P = LayeredPrevision(S, [{1: 1}, {2: 1}, {0: 1}])
E = Event(S, [0, 1])
f = S.gamble([-1, 0, 0])

M = embed_fcp(P)
X, R = expand(M, E), revise(M, E)
oracle = LPOracle(P)
print(P)
print("P(E | {1,3}) =", P.probability(E.indices, {0, 2}))
print("every B meeting E has P(E|B) = 1:", previsional_expand_consistent(P, E.indices))
print("expansion consistent:", not X.is_contradiction)
print("expansion accepts", f, ":", X.accepts(f), "(oracle:", oracle.expanded_accepts(f, E.indices), ")")
print("revision accepts", f, ":", R.accepts(f), "(oracle:", oracle.revised_accepts(f, E.indices), ")")
print("BR4 verdict:", check_agm(M, E, Event.full(S))["BR4"].status)

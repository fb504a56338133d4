"""Full conditional previsions and the AD models they induce.

A full conditional prevision assigns ``P(f|B)`` to every gamble and every
nonempty event.  We build them lexicographically: an ordered list of
probability mass functions with disjoint supports, where ``P(·|B)`` is the
first layer that gives ``B`` positive mass, renormalised on ``B``.

The induced AD model accepts ``f`` when ``f >= 0`` or when there is an
event ``B`` with ``f >= 0`` off ``B`` and ``P(f|B) > 0``; it desires ``f``
when some ``B`` has ``f > 0`` off ``B`` and ``P(f|B) > 0``.  That set is not
polyhedral, so :class:`PrevisionalModel` decides membership in closed form
by enumerating events.  :class:`LPOracle` decides the same questions from
the generating assessment with exact LPs and serves as an independent
check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .cones import Gamble, PossibilitySpace
from .errors import EmptyConditioningEvent, NonRegularEvent, NotConditionable
from .lp import lp_max
from .models import ADModel, CONTRADICTION, ConditionedModel

__all__ = [
    "LayeredPrevision",
    "fcp_value",
    "check_coherence",
    "coherence_violations",
    "embed_fcp",
    "PrevisionalModel",
    "previsional_revise",
    "previsional_expand_consistent",
    "LPOracle",
    "random_layered_prevision",
    "MAX_OUTCOMES",
]

#: event enumeration is exponential; larger spaces are refused
MAX_OUTCOMES = 12


def _indices(B) -> frozenset:
    return frozenset(B.indices) if hasattr(B, "indices") else frozenset(B)


def _subsets(items, nonempty=True):
    items = sorted(items)
    for k in range(1 if nonempty else 0, len(items) + 1):
        for c in combinations(items, k):
            yield frozenset(c)


class LayeredPrevision:
    """A lexicographic sequence of probability mass functions.

    Parameters
    ----------
    space : PossibilitySpace
    layers : sequence of mappings
        Each maps outcome indices to positive rational masses summing to one.
        Supports must be disjoint.  Their union is the domain: the events
        one may condition on are its nonempty subsets.
    """

    def __init__(self, space: PossibilitySpace, layers: Sequence[Mapping[int, object]]):
        if len(space) > MAX_OUTCOMES:
            raise ValueError(f"layered previsions are limited to {MAX_OUTCOMES} outcomes")
        clean = []
        seen = set()
        for layer in layers:
            pmf = {int(i): Fraction(v) for i, v in layer.items()}
            if not pmf:
                raise ValueError("empty layer")
            for i, v in pmf.items():
                if i < 0 or i >= len(space):
                    raise ValueError("layer mentions an outcome outside the space")
                if v <= 0:
                    raise ValueError("layer masses must be strictly positive on the support")
                if i in seen:
                    raise ValueError("layer supports must be disjoint")
                seen.add(i)
            if sum(pmf.values()) != 1:
                raise ValueError("each layer must sum to one")
            clean.append(pmf)
        if not clean:
            raise ValueError("a layered prevision needs at least one layer")
        self.space = space
        self.layers = tuple(clean)
        self.domain = frozenset(seen)

    @property
    def is_full(self) -> bool:
        return len(self.domain) == len(self.space)

    def __repr__(self):
        parts = []
        for pmf in self.layers:
            parts.append("{" + ", ".join(f"{self.space.labels[i]}: {v}" for i, v in sorted(pmf.items())) + "}")
        return "LayeredPrevision([" + ", ".join(parts) + "])"

    def __eq__(self, other):
        return (isinstance(other, LayeredPrevision) and self.space == other.space
                and self.layers == other.layers)

    def __hash__(self):
        return hash((self.space, tuple(tuple(sorted(p.items())) for p in self.layers)))

    def layer_of(self, B) -> dict:
        """The first layer with positive mass on ``B``."""
        B = _indices(B)
        if not B:
            raise EmptyConditioningEvent("cannot condition on the empty event")
        if not B <= self.domain:
            raise ValueError("conditioning event leaves the domain of the prevision")
        for pmf in self.layers:
            if any(i in pmf for i in B):
                return pmf
        raise AssertionError("unreachable: the layers cover the domain")  # pragma: no cover

    def value(self, f: Gamble, B) -> Fraction:
        """``P(f|B)``."""
        B = _indices(B)
        pmf = self.layer_of(B)
        mass = Fraction(0)
        total = Fraction(0)
        for i in B:
            p = pmf.get(i)
            if p:
                mass += p
                total += p * f.values[i]
        return total / mass

    def probability(self, C, B) -> Fraction:
        """``P(I_C|B)``."""
        B = _indices(B)
        C = _indices(C)
        pmf = self.layer_of(B)
        mass = sum((pmf.get(i, 0) for i in B), Fraction(0))
        return sum((pmf.get(i, 0) for i in B & C), Fraction(0)) / mass

    def restrict(self, E) -> "LayeredPrevision":
        """Keep each layer's mass inside ``E``, renormalise, drop empty layers."""
        E = _indices(E)
        if not E:
            raise EmptyConditioningEvent("cannot restrict to the empty event")
        layers = []
        for pmf in self.layers:
            part = {i: v for i, v in pmf.items() if i in E}
            if part:
                s = sum(part.values())
                layers.append({i: v / s for i, v in part.items()})
        if not layers:
            raise EmptyConditioningEvent("the event misses the domain of the prevision")
        return LayeredPrevision(self.space, layers)

    def events(self):
        """All nonempty subsets of the domain, smallest first."""
        return _subsets(self.domain)


def fcp_value(P: LayeredPrevision, f: Gamble, B) -> Fraction:
    return P.value(f, B)


def previsional_revise(P: LayeredPrevision, E) -> LayeredPrevision:
    """Restrict ``P`` to conditioning events inside ``E``."""
    return P.restrict(E)


def previsional_expand_consistent(P: LayeredPrevision, E) -> bool:
    """Does ``P(I_E|B) = 1`` hold for every ``B`` in the domain that meets ``E``?"""
    E = _indices(E)
    if not E:
        raise EmptyConditioningEvent("cannot expand by the empty event")
    for B in P.events():
        if B & E and P.probability(E, B) != 1:
            return False
    return True


def random_layered_prevision(space: PossibilitySpace, rng: random.Random,
                             max_weight: int = 6) -> LayeredPrevision:
    """A random ordered partition of the space with random positive masses."""
    idx = list(range(len(space)))
    rng.shuffle(idx)
    layers = []
    while idx:
        k = rng.randint(1, len(idx))
        block, idx = idx[:k], idx[k:]
        w = [rng.randint(1, max_weight) for _ in block]
        s = sum(w)
        layers.append({i: Fraction(x, s) for i, x in zip(block, w)})
    return LayeredPrevision(space, layers)


# --- coherence --------------------------------------------------------------

def _random_event(rng, domain):
    dom = sorted(domain)
    while True:
        B = frozenset(i for i in dom if rng.random() < 0.5)
        if B:
            return B


def _random_gamble(rng, space):
    n = len(space)
    if rng.random() < 0.25:
        return space.indicator(i for i in range(n) if rng.random() < 0.5)
    return Gamble(space, [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)])


def coherence_violations(P, samples: int = 500, seed: int = 0, families: int = 50) -> list:
    """Check bounds, linearity and Bayes' rule on sampled triples, and avoiding sure loss.

    ``P`` can be any object with ``space``, ``domain`` and ``value(f, B)``.
    Returns human-readable descriptions of every violation found.
    """
    rng = random.Random(seed)
    space = P.space
    dom = P.domain
    bad = []
    for _ in range(samples):
        f, g = _random_gamble(rng, space), _random_gamble(rng, space)
        B, C = _random_event(rng, dom), _random_event(rng, dom)
        v = P.value(f, B)
        if not (f.min_on(B) <= v <= f.max_on(B)):
            bad.append(f"bounds: P({f}|{sorted(B)}) = {v}")
        lam, mu = Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if P.value(f * lam + g * mu, B) != lam * v + mu * P.value(g, B):
            bad.append(f"linearity at B={sorted(B)}")
        if B & C:
            IC = space.indicator(C)
            if P.value(f * IC, B) != P.value(f, B & C) * P.value(IC, B):
                bad.append(f"Bayes' rule at f={f}, B={sorted(B)}, C={sorted(C)}")
    if len(dom) <= 5:
        # indicator tables are cheap to check exhaustively on small domains
        for B in _subsets(dom):
            basis = {i: P.value(space.basis(i), B) for i in dom}
            for C in _subsets(dom):
                if P.value(space.indicator(C), B) != sum(basis[i] for i in C):
                    bad.append(f"linearity: P(I_{sorted(C)}|{sorted(B)})")
                if B & C:
                    pC = P.value(space.indicator(C), B)
                    for i in C & dom:
                        lhs = basis[i] if i in B else 0
                        if lhs != P.value(space.basis(i), B & C) * pC:
                            bad.append(f"Bayes' rule at e_{i}, B={sorted(B)}, C={sorted(C)}")
    for _ in range(families):
        k = rng.randint(1, 4)
        terms = []
        for _ in range(k):
            f, B = _random_gamble(rng, space), _random_event(rng, dom)
            eps = Fraction(1, rng.randint(50, 1000))
            terms.append((B, [(f.values[x] - P.value(f, B) + eps) if x in B else 0
                              for x in range(len(space))]))
        if _sure_loss(terms):
            bad.append("avoiding sure loss fails for a sampled family")
    return bad


def _sure_loss(terms) -> bool:
    # is there λ >= 0, Σλ = 1, with Σ λ_k h_k < 0 on the union of the B_k?
    union = sorted(set().union(*(B for B, _ in terms)))
    k = len(terms)
    cons = [([h[x] for _, h in terms] + [1], "<=", 0) for x in union]
    cons.append(([1] * k + [0], "==", 1))
    res = lp_max([0] * k + [1], cons, nonneg=range(k))
    return res.optimal and res.value > 0


def check_coherence(P, samples: int = 500, seed: int = 0) -> bool:
    """``True`` iff :func:`coherence_violations` finds nothing."""
    return not coherence_violations(P, samples, seed)


# --- the induced AD model -----------------------------------------------------

class PrevisionalModel(ADModel):
    """The AD model of a (possibly restricted) layered prevision.

    Membership only depends on the gamble's values on the domain ``S`` of
    the prevision.  With ``watch = E`` the model is additionally indifferent
    to every gamble that vanishes on ``E``; that is how expansion by ``E``
    is represented when it does not reduce to restricting the prevision.
    """

    def __init__(self, P: LayeredPrevision, watch: Optional[Iterable[int]] = None):
        self.P = P
        self.space = P.space
        self.support = P.domain
        n = len(self.space)
        self.watch = frozenset(range(n)) if watch is None else frozenset(watch)
        self._free_set = frozenset(range(n)) - self.watch
        self._acc_memo = {}
        self._des_memo = {}
        self._witnesses = None
        self._free = {}
        if not self.support & self.watch or self._free_mass(self.support):
            raise ValueError("this prevision and indifference set are inconsistent")

    @property
    def is_plain(self) -> bool:
        """No indifference beyond what the domain already implies."""
        return self.support <= self.watch

    def __repr__(self):
        if self.is_plain:
            return f"PrevisionalModel({self.P!r})"
        labels = [self.space.labels[i] for i in sorted(self.watch)]
        return f"PrevisionalModel({self.P!r}, watch={labels!r})"

    def _free_mass(self, C) -> bool:
        # does the layer deciding C put mass where the model is indifferent?
        hit = self._free.get(C)
        if hit is None:
            hit = bool(self._free_set) and self.P.probability(self._free_set, C) > 0
            self._free[C] = hit
        return hit

    def _ok(self, f, C):
        return self._free_mass(C) or self.P.value(f, C) > 0

    def accepts(self, f: Gamble) -> bool:
        self._check_space(f)
        key = f.values
        hit = self._acc_memo.get(key)
        if hit is None:
            hit = self._member(f, strict=False)
            self._acc_memo[key] = hit
        return hit

    def desires(self, f: Gamble) -> bool:
        self._check_space(f)
        key = f.values
        hit = self._des_memo.get(key)
        if hit is None:
            hit = self._member(f, strict=True)
            self._des_memo[key] = hit
        return hit

    def _member(self, f, strict):
        # acceptable: f >= 0 on the watched part of S, or some C has
        #   f >= 0 on the watched part of S \ C and P(f|C) > 0 (or free mass);
        # desirable: the same with f > 0 and the first alternative dropped.
        S = self.support
        W = S & self.watch
        vals = f.values
        if strict:
            forced = frozenset(i for i in W if vals[i] <= 0)
        else:
            forced = frozenset(i for i in W if vals[i] < 0)
            if not forced:
                return True
        rest = S - forced
        for extra in _subsets(rest, nonempty=not forced):
            if self._ok(f, forced | extra):
                return True
        return False

    def lower_prevision(self, f: Gamble) -> Fraction:
        self._check_space(f)
        return self._sup(f, None)

    def _sup(self, f, F):
        """``sup{α : I_F (f - α) ∈ acceptable}``; ``None`` if unbounded."""
        S = self.support
        W = S & self.watch
        if F is not None:
            W = W & F
            IF = self.space.indicator(F)
            fF = f * IF
        if not W:
            return None
        best = f.min_on(W)
        for C in _subsets(S):
            outside = (S - C) & W
            cap = f.min_on(outside) if outside else None
            if self._free_mass(C):
                v = cap
            else:
                if F is None:
                    p = self.P.value(f, C)
                else:
                    pF = self.P.value(IF, C)
                    if pF == 0:
                        continue
                    p = self.P.value(fF, C) / pF
                v = p if cap is None else min(p, cap)
            if v is None:
                return None
            if best is None or v > best:
                best = v
        if best is None:
            return None
        return best

    def is_conditionable(self, event) -> bool:
        if not event.is_regular():
            raise NonRegularEvent(f"{event!r} is not a regular event")
        return self._sup(self.space.zero(), event.indices) is not None

    def condition(self, event) -> ADModel:
        if not self.is_conditionable(event):
            raise NotConditionable(f"model is not conditionable on {event!r}")
        if self.is_plain:
            return PrevisionalModel(self.P.restrict(event.indices))
        return ConditionedModel(self, event)

    def conditional_lower_prevision(self, f: Gamble, event) -> Fraction:
        self._check_space(f)
        if not event.is_regular():
            raise NonRegularEvent(f"{event!r} is not a regular event")
        v = self._sup(f, event.indices)
        if v is None:
            raise NotConditionable(f"model is not conditionable on {event!r}")
        return v

    def expand(self, event) -> ADModel:
        if not event.is_regular():
            return CONTRADICTION
        watch = self.watch & event.indices
        S = self.support
        if not S & watch:
            return CONTRADICTION
        # consistent iff the top layer on S sits inside the watched set
        top = self.P.layer_of(S)
        if any(i not in watch for i in top):
            return CONTRADICTION
        if self.is_plain and previsional_expand_consistent(self.P, event.indices & S):
            return PrevisionalModel(self.P.restrict(event.indices))
        return PrevisionalModel(self.P, watch)

    def witnesses(self) -> tuple:
        if self._witnesses is None:
            space = self.space
            n = len(space)
            quarter = Fraction(1, 4)
            acc = [space.basis(i) for i in range(n)]
            des = [space.unit()]
            for i in sorted(self._free_set):
                acc.append(-space.basis(i))
            W = self.watch
            for C in _subsets(self.support):
                if self._free_mass(C) and C & W:
                    g = -space.indicator(C & W)
                    acc.append(g)
                    des.append(g + space.unit() * quarter)
            for C in _subsets(self.support):
                IC = space.indicator(C)
                for x in sorted(C)[:-1] if len(C) > 1 else ():
                    v = (space.basis(x) - IC * self.P.value(space.basis(x), C)) * IC
                    for w in (v, -v):
                        acc.append(w + IC * quarter)
                        des.append(w + IC * quarter + space.unit() * quarter)
            self._witnesses = (tuple(acc), tuple(des))
        return self._witnesses


def embed_fcp(P: LayeredPrevision) -> PrevisionalModel:
    return PrevisionalModel(P)


# --- independent LP oracle ------------------------------------------------------

class LPOracle:
    """Membership in the natural extension of a full prevision's assessment, by LP.

    For every nonempty ``B`` the assessment contributes the gambles
    ``I_B·(f - P(f|B) + ε)``, that is, the span of ``I_B·(e_x - P(e_x|B))``
    plus a strictly positive multiple of ``I_B``.  A gamble is acceptable
    when it is nonnegative or dominates one of these; each ``B`` is one LP.
    Expansion adds free kernel directions, revision calls the gamble off.
    """

    def __init__(self, P: LayeredPrevision):
        if not P.is_full:
            raise ValueError("the oracle needs a full conditional prevision")
        self.P = P
        self.space = P.space
        n = len(self.space)
        self._orthant = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        self._blocks = []
        for B in _subsets(range(n)):
            pmf = P.layer_of(B)
            mass = sum((pmf.get(i, 0) for i in B), Fraction(0))
            span = []
            for x in sorted(B):
                px = pmf.get(x, 0) / mass
                span.append(tuple((1 if j == x else 0) - px if j in B else 0 for j in range(n)))
            self._blocks.append((B, span, tuple(1 if j in B else 0 for j in range(n))))

    def _lp(self, f, free, strict):
        # f = Σ free + Σ orthant + Σ σ_j strict_j ; maximise t <= σ_j, t <= 1
        cols = list(free) + self._orthant + list(strict)
        nf, no, ns = len(free), len(self._orthant), len(strict)
        m = len(cols) + 1
        n = len(f)
        cons = [([c[i] for c in cols] + [0], "==", f[i]) for i in range(n)]
        if ns == 0:
            return lp_max([0] * m, cons, nonneg=range(nf, m)).feasible
        for j in range(ns):
            row = [0] * m
            row[nf + no + j] = -1
            row[-1] = 1
            cons.append((row, "<=", 0))
        cons.append(([0] * (m - 1) + [1], "<=", 1))
        res = lp_max([0] * (m - 1) + [1], cons, nonneg=range(nf, m))
        return res.optimal and res.value > 0

    def _member(self, f, kernel=(), extra_strict=(), desirable=False):
        n = len(self.space)
        unit = (1,) * n
        base_strict = list(extra_strict) + ([unit] if desirable else [])
        if self._lp(f, kernel, base_strict):
            return True
        for B, span, IB in self._blocks:
            if self._lp(f, list(span) + list(kernel), [IB] + base_strict):
                return True
        return False

    def accepts(self, f: Gamble) -> bool:
        return self._member(f.values)

    def desires(self, f: Gamble) -> bool:
        return self._member(f.values, desirable=True)

    def _kernel(self, E):
        E = _indices(E)
        n = len(self.space)
        return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n) if i not in E]

    def expanded_accepts(self, f: Gamble, E) -> bool:
        return self._member(f.values, kernel=self._kernel(E))

    def expanded_desires(self, f: Gamble, E) -> bool:
        return self._member(f.values, kernel=self._kernel(E), desirable=True)

    def expand_consistent(self, E) -> bool:
        """Is ``0`` outside the desirable gambles plus the kernel of ``E``?"""
        zero = (0,) * len(self.space)
        return not self._member(zero, kernel=self._kernel(E), desirable=True)

    def revised_accepts(self, f: Gamble, E) -> bool:
        E = _indices(E)
        g = tuple(v if i in E else 0 for i, v in enumerate(f.values))
        return self._member(g)

    def revised_desires(self, f: Gamble, E) -> bool:
        E = _indices(E)
        g = tuple(v if i in E else 0 for i, v in enumerate(f.values))
        IE = tuple(1 if i in E else 0 for i in range(len(self.space)))
        return self._member(g, desirable=True) or self._member(g, extra_strict=[IE])

    def expanded_revised_accepts(self, f: Gamble, E, F) -> bool:
        """Is ``I_F f`` acceptable after expanding by ``E``?"""
        F = _indices(F)
        g = tuple(v if i in F else 0 for i, v in enumerate(f.values))
        return self._member(g, kernel=self._kernel(E))

    def expanded_revised_desires(self, f: Gamble, E, F) -> bool:
        F = _indices(F)
        g = tuple(v if i in F else 0 for i, v in enumerate(f.values))
        IF = tuple(1 if i in F else 0 for i in range(len(self.space)))
        K = self._kernel(E)
        return (self._member(g, kernel=K, desirable=True)
                or self._member(g, kernel=K, extra_strict=[IF]))

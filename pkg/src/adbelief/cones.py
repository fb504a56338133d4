"""Gambles, finitely generated cones and exact membership tests.

Every decision in the classical part of the package reduces to one of three
questions about a cone ``posi(G ∪ 𝒢≥0)``: does it contain a gamble, does a
gamble lie in its strict (desirable) part, and what does the cone look like
once it is cut down to a linear subspace.  The first two are exact LPs, the
third is a small double description computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .lp import lp_max

__all__ = [
    "PossibilitySpace",
    "Gamble",
    "ConeRep",
    "as_fraction",
    "cone_membership",
    "separating_certificate",
    "strict_membership",
    "cone_intersect_subspace",
    "extreme_rays",
    "nullspace",
    "primitive",
    "MAX_DD_DIM",
]

#: largest possibility space on which generator extraction is attempted
MAX_DD_DIM = 8


def as_fraction(x) -> Fraction:
    """Parse an int, a Fraction or a ``"p/q"`` string exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or a 'p/q' string")
    return Fraction(x)


class PossibilitySpace:
    """A finite, ordered set of outcome labels."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable):
        labels = tuple(labels)
        if not labels:
            raise ValueError("a possibility space needs at least one outcome")
        if len(set(labels)) != len(labels):
            raise ValueError("outcome labels must be unique")
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}

    @classmethod
    def of_size(cls, n: int) -> "PossibilitySpace":
        """Outcomes labelled ``1, ..., n``."""
        return cls(range(1, n + 1))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __eq__(self, other):
        return isinstance(other, PossibilitySpace) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"PossibilitySpace({list(self.labels)!r})"

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown outcome {label!r}") from None

    def gamble(self, values: Sequence) -> "Gamble":
        return Gamble(self, values)

    def zero(self) -> "Gamble":
        return Gamble(self, (0,) * len(self))

    def unit(self) -> "Gamble":
        return Gamble(self, (1,) * len(self))

    def basis(self, i: int) -> "Gamble":
        return Gamble(self, tuple(1 if j == i else 0 for j in range(len(self))))

    def indicator(self, indices: Iterable[int]) -> "Gamble":
        idx = set(indices)
        return Gamble(self, tuple(1 if j in idx else 0 for j in range(len(self))))


class Gamble:
    """An exact rational vector indexed by a possibility space."""

    __slots__ = ("space", "values", "_hash")

    def __init__(self, space: PossibilitySpace, values: Sequence):
        vals = tuple(as_fraction(v) for v in values)
        if len(vals) != len(space):
            raise ValueError(
                f"gamble has {len(vals)} values but the space has {len(space)} outcomes")
        self.space = space
        self.values = vals
        self._hash = None

    @classmethod
    def _raw(cls, space, vals):
        g = object.__new__(cls)
        g.space = space
        g.values = vals
        g._hash = None
        return g

    def _check(self, other):
        if not isinstance(other, Gamble):
            return NotImplemented
        if other.space != self.space:
            raise ValueError("gambles live on different possibility spaces")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Gamble._raw(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Gamble._raw(self.space, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return Gamble._raw(self.space, tuple(-a for a in self.values))

    def __mul__(self, other):
        if isinstance(other, Gamble):
            self._check(other)
            return Gamble._raw(self.space, tuple(a * b for a, b in zip(self.values, other.values)))
        q = as_fraction(other)
        return Gamble._raw(self.space, tuple(a * q for a in self.values))

    __rmul__ = __mul__

    def shift(self, alpha) -> "Gamble":
        """``f + alpha * 1``."""
        a = as_fraction(alpha)
        return Gamble._raw(self.space, tuple(v + a for v in self.values))

    def dot(self, other: "Gamble") -> Fraction:
        return sum((a * b for a, b in zip(self.values, other.values)), Fraction(0))

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return (isinstance(other, Gamble) and self.values == other.values
                and self.space == other.space)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.values)
        return self._hash

    def __repr__(self):
        return "Gamble(" + ", ".join(str(v) for v in self.values) + ")"

    def is_zero(self) -> bool:
        return not any(self.values)

    def is_nonneg(self) -> bool:
        return all(v >= 0 for v in self.values)

    def is_positive(self) -> bool:
        return all(v > 0 for v in self.values)

    def min_on(self, indices) -> Fraction:
        return min(self.values[i] for i in indices)

    def max_on(self, indices) -> Fraction:
        return max(self.values[i] for i in indices)


def primitive(values: Sequence) -> tuple:
    """Scale a rational vector to coprime integers, keeping its direction."""
    vals = [as_fraction(v) for v in values]
    den = reduce(lcm, (v.denominator for v in vals), 1)
    ints = [int(v * den) for v in vals]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


@dataclass(frozen=True)
class ConeRep:
    """Generator description of ``posi(generators ∪ 𝒢≥0)``.

    ``nonneg_orthant`` adds the unit vectors of every outcome.  When
    ``open_orthant_shift`` is set the cone stands for the open part
    ``posi(generators ∪ 𝒢>0) + ...``, decided by :func:`strict_membership`.
    """

    generators: tuple = ()
    nonneg_orthant: bool = True
    open_orthant_shift: bool = False
    space: Optional[PossibilitySpace] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.space is None and self.generators:
            object.__setattr__(self, "space", self.generators[0].space)
        for g in self.generators:
            if g.space != self.space:
                raise ValueError("generators live on different possibility spaces")

    def columns(self, n: int) -> list:
        cols = [g.values for g in self.generators]
        if self.nonneg_orthant:
            cols.extend(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
        return cols


def _dimcheck(f: Gamble, gens: Iterable[Gamble]):
    for g in gens:
        if len(g) != len(f):
            raise ValueError("dimension mismatch between gamble and generators")
        if g.space != f.space:
            raise ValueError("gamble and generators live on different possibility spaces")


def cone_membership(f: Gamble, C: ConeRep) -> bool:
    """Decide ``f ∈ posi(C.generators ∪ 𝒢≥0)`` exactly."""
    if C.open_orthant_shift:
        raise ValueError("use strict_membership for the open part of a cone")
    _dimcheck(f, C.generators)
    n = len(f)
    if C.nonneg_orthant and f.is_nonneg():
        return True
    cols = C.columns(n)
    if not cols:
        return False
    m = len(cols)
    if f.is_zero():
        # posi asks for a nontrivial combination: normalise sum(lambda) = 1
        cons = [([c[i] for c in cols], "==", 0) for i in range(n)]
        cons.append(([1] * m, "==", 1))
        return lp_max([0] * m, cons).feasible
    cons = [([c[i] for c in cols], "==", f.values[i]) for i in range(n)]
    return lp_max([0] * m, cons).feasible


def separating_certificate(f: Gamble, C: ConeRep) -> Optional[Gamble]:
    """A functional ``y`` with ``y·f < 0 <= y·g`` on every generator and orthant ray.

    Returns ``None`` when ``f`` belongs to the cone.  For ``f = 0`` outside
    ``posi(G)`` (only possible without the orthant) the certificate instead
    satisfies ``y·g >= 1`` for every generator.
    """
    if cone_membership(f, C):
        return None
    n = len(f)
    cols = C.columns(n)
    if f.is_zero():
        cons = [(list(c), ">=", 1) for c in cols]
    else:
        cons = [(list(c), ">=", 0) for c in cols]
        cons.append((list(f.values), "<=", -1))
    res = lp_max([0] * n, cons, nonneg=())
    if not res.feasible:  # pragma: no cover - Farkas guarantees a certificate
        raise AssertionError("membership LP and certificate LP disagree")
    return Gamble(f.space, res.point)


def strict_membership(f: Gamble, des_gens: Sequence[Gamble], acc_cone: ConeRep) -> bool:
    """Decide ``f ∈ posi(D ∪ 𝒢>0) + acc_cone`` (or the first set alone).

    Uses ``𝒢>0 = 𝒢≥0 + {ε·1 : ε > 0}``: maximise ``t = Σμ + ε`` (capped at 1)
    over decompositions ``f = Σμ d + Σλ a + s + ε·1`` and test ``t* > 0``.
    """
    des_gens = tuple(des_gens)
    _dimcheck(f, des_gens)
    _dimcheck(f, acc_cone.generators)
    n = len(f)
    if f.is_positive():
        return True
    dcols = [d.values for d in des_gens] + [(1,) * n]
    acols = [g.values for g in acc_cone.generators]
    acols.extend(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    cols = dcols + acols
    k = len(dcols)
    m = len(cols)
    cons = [([c[i] for c in cols], "==", f.values[i]) for i in range(n)]
    cons.append(([1] * k + [0] * (m - k), "<=", 1))
    res = lp_max([1] * k + [0] * (m - k), cons)
    return res.optimal and res.value > 0


# --- exact linear algebra -------------------------------------------------

def _rref(rows: list) -> tuple:
    """Reduced row echelon form over Fractions; returns (rows, pivot columns)."""
    A = [[as_fraction(v) for v in r] for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                fac = A[i][c]
                A[i] = [a - fac * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(rows: list, ncols: int) -> list:
    """Basis (as integer tuples) of ``{x : row·x = 0 for every row}``."""
    R, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for r, pc in zip(R, pivots):
            x[pc] = -r[fc]
        basis.append(primitive(x))
    return basis


def rank(rows: list) -> int:
    return len(_rref(rows)[1])


def extreme_rays(M: list, m: int) -> list:
    """Extreme rays of the pointed cone ``{λ ∈ R^m : λ >= 0, Mλ = 0}``.

    Double description: start from the unit vectors of the orthant, cut with
    one hyperplane at a time combining every (positive, negative) pair, and
    keep only rays of minimal support.  Rays are primitive integer tuples.
    """
    rows = [primitive(r) for r in M if any(r)]
    rays = [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
    for a in rows:
        zero, pos, neg = [], [], []
        for r in rays:
            s = sum(x * y for x, y in zip(a, r))
            (zero if s == 0 else pos if s > 0 else neg).append((r, s))
        new = [r for r, _ in zero]
        for rp, sp in pos:
            for rn, sn in neg:
                new.append(primitive([sp * y - sn * x for x, y in zip(rp, rn)]))
        rays = _minimal_support(new)
    return rays


def _minimal_support(rays: list) -> list:
    supports = {}
    for r in rays:
        if not any(r):
            continue
        s = frozenset(i for i, v in enumerate(r) if v)
        supports.setdefault(s, r)
    keys = sorted(supports, key=len)
    keep = []
    for s in keys:
        if not any(t < s for t in keep):
            keep.append(s)
    return [supports[s] for s in keep]


def cone_intersect_subspace(C: ConeRep, basis: Sequence[Gamble]) -> ConeRep:
    """Generators of ``posi(C) ∩ span(basis)``.

    The result carries no orthant flag: its generators describe the whole
    intersection on their own.
    """
    basis = list(basis)
    space = C.space or (basis[0].space if basis else None)
    if space is None:
        raise ValueError("cannot infer the possibility space")
    n = len(space)
    if n > MAX_DD_DIM:
        raise ValueError(f"generator extraction is limited to {MAX_DD_DIM} outcomes")
    normals = nullspace([b.values for b in basis], n) if basis else [
        tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    cols = C.columns(n)
    m = len(cols)
    if m == 0:
        return ConeRep((), nonneg_orthant=False, space=space)
    M = [[sum(Fraction(a) * c[i] for i, a in enumerate(row)) for c in cols] for row in normals]
    gens = []
    seen = set()
    for lam in extreme_rays(M, m):
        v = primitive([sum(l * c[i] for l, c in zip(lam, cols)) for i in range(n)])
        if any(v) and v not in seen:
            seen.add(v)
            gens.append(Gamble(space, v))
    return ConeRep(tuple(gens), nonneg_orthant=False, space=space)

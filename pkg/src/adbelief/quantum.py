"""Quantum events, calling off and Lüders conditioning.

Options are Hermitian matrices.  An event is a family of mutually
orthogonal subspaces, stored as matrices with orthonormal columns; it calls
off a measurement ``A`` by ``Σ P_k A P_k``.  Only precise models, i.e.
density operators, are conditioned.  Everything here is floating point:
elementwise checks use :data:`TOL` and subspace comparisons :data:`RANK_TOL`.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .errors import NonRegularEvent, ZeroProbabilityEvent

__all__ = [
    "TOL",
    "RANK_TOL",
    "as_hermitian",
    "as_density",
    "QuantumEvent",
    "q_call_off",
    "q_event_leq",
    "q_event_meet",
    "q_is_regular",
    "luders",
    "q_conditional_prevision",
    "hermitian_basis",
    "call_off_matrix",
    "q_kernel",
    "same_subspace",
    "subspace_contains",
    "kernel_sum_residual",
    "q_leq_by_kernel",
    "random_unitary",
    "random_hermitian",
    "random_density",
    "random_event",
    "random_event_pair",
]

TOL = 1e-9
RANK_TOL = 1e-6
# eigenvalue threshold for the intersection of two subspaces
MEET_THRESHOLD = 1 - 1e-6


def as_hermitian(A, tol: float = TOL) -> np.ndarray:
    """Return ``A`` as a complex array after checking it is Hermitian."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("a measurement must be a square matrix")
    if np.max(np.abs(A - A.conj().T), initial=0.0) > tol:
        raise ValueError("matrix is not Hermitian")
    return (A + A.conj().T) / 2


def as_density(rho, tol: float = TOL) -> np.ndarray:
    """Check Hermitian, trace one and positive semidefinite."""
    rho = as_hermitian(rho, tol)
    if abs(np.trace(rho).real - 1) > tol or abs(np.trace(rho).imag) > tol:
        raise ValueError("density operator must have trace one")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density operator must be positive semidefinite")
    return rho


def _orthonormal(B, tol):
    B = np.asarray(B, dtype=complex)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    r = B.shape[1]
    if r and np.max(np.abs(B.conj().T @ B - np.eye(r))) > tol:
        raise ValueError("subspace basis columns are not orthonormal")
    return B


class QuantumEvent:
    """A family of mutually orthogonal subspaces of ``C^d``.

    ``bases`` holds one ``d × r`` matrix with orthonormal columns per
    subspace.  Zero-dimensional members are dropped, so the null event is
    the empty family.
    """

    def __init__(self, dim: int, bases: Sequence = (), tol: float = TOL):
        self.dim = int(dim)
        kept = []
        for B in bases:
            B = _orthonormal(B, tol)
            if B.shape[0] != self.dim:
                raise ValueError("subspace basis has the wrong dimension")
            if B.shape[1]:
                kept.append(B)
        for i in range(len(kept)):
            for j in range(i + 1, len(kept)):
                if np.max(np.abs(kept[i].conj().T @ kept[j])) > tol:
                    raise ValueError("subspaces of an event must be mutually orthogonal")
        self.bases = tuple(kept)
        self.projectors = tuple(B @ B.conj().T for B in kept)

    @classmethod
    def full(cls, dim: int) -> "QuantumEvent":
        return cls(dim, [np.eye(dim)])

    @classmethod
    def null(cls, dim: int) -> "QuantumEvent":
        return cls(dim, [])

    @classmethod
    def from_vectors(cls, dim: int, families: Sequence[Sequence]) -> "QuantumEvent":
        """Each family of vectors spans one subspace (orthonormalised here)."""
        bases = []
        for vecs in families:
            M = np.array(vecs, dtype=complex).reshape(len(vecs), dim).T
            Q, R = np.linalg.qr(M)
            keep = np.abs(np.diag(R)) > RANK_TOL
            bases.append(Q[:, keep])
        return cls(dim, bases)

    @property
    def is_null(self) -> bool:
        return not self.bases

    @property
    def ranks(self) -> tuple:
        return tuple(B.shape[1] for B in self.bases)

    def __repr__(self):
        return f"QuantumEvent(dim={self.dim}, ranks={list(self.ranks)})"


def _check_dims(*items):
    dims = set()
    for x in items:
        dims.add(x.dim if isinstance(x, QuantumEvent) else np.asarray(x).shape[0])
    if len(dims) != 1:
        raise ValueError("dimension mismatch")


def q_call_off(e: QuantumEvent, A) -> np.ndarray:
    """``Σ_k P_k A P_k``."""
    A = np.asarray(A, dtype=complex)
    _check_dims(e, A)
    out = np.zeros_like(A)
    for P in e.projectors:
        out += P @ A @ P
    return out


def q_event_leq(e1: QuantumEvent, e2: QuantumEvent, tol: float = RANK_TOL) -> bool:
    """Does every subspace of ``e1`` lie inside some subspace of ``e2``?"""
    _check_dims(e1, e2)
    for B in e1.bases:
        if not any(np.max(np.abs(B - P @ B)) <= tol for P in e2.projectors):
            return False
    return True


def _intersection(P1, P2):
    w, v = np.linalg.eigh(P1 @ P2 @ P1)
    return v[:, w >= MEET_THRESHOLD]


def q_event_meet(e1: QuantumEvent, e2: QuantumEvent) -> QuantumEvent:
    """Pairwise intersections of the subspaces of both events."""
    _check_dims(e1, e2)
    bases = [_intersection(P, Q) for P in e1.projectors for Q in e2.projectors]
    return QuantumEvent(e1.dim, bases, tol=RANK_TOL)


def q_is_regular(e: QuantumEvent, rng: Optional[np.random.Generator] = None) -> bool:
    """Non-null events are the regular ones.

    Rechecked by calling off a random positive definite matrix, which only
    vanishes for the null event.
    """
    rng = rng or np.random.default_rng(0)
    X = rng.normal(size=(e.dim, e.dim)) + 1j * rng.normal(size=(e.dim, e.dim))
    A = X @ X.conj().T + np.eye(e.dim)
    by_call_off = np.max(np.abs(q_call_off(e, A)), initial=0.0) > TOL
    if by_call_off == e.is_null:
        raise AssertionError("regularity: structure and calling off disagree")
    return not e.is_null


def luders(rho, e: QuantumEvent) -> np.ndarray:
    """``Σ P_k ρ P_k / Σ tr(P_k ρ P_k)``."""
    rho = as_density(rho)
    _check_dims(e, rho)
    if e.is_null:
        raise NonRegularEvent("cannot condition on the null event")
    num = q_call_off(e, rho)
    z = np.trace(num).real
    if z <= TOL:
        raise ZeroProbabilityEvent("the event has zero probability under this state")
    return num / z


def q_conditional_prevision(rho, A, e: QuantumEvent) -> float:
    """``tr(ρ' A)`` with ``ρ'`` the Lüders update of ``ρ`` on ``e``."""
    A = as_hermitian(A)
    return float(np.trace(luders(rho, e) @ A).real)


# --- the operator space ------------------------------------------------------

def hermitian_basis(d: int) -> list:
    """An orthonormal basis (Hilbert-Schmidt) of the ``d²``-dimensional real space of Hermitians."""
    out = []
    for i in range(d):
        E = np.zeros((d, d), dtype=complex)
        E[i, i] = 1
        out.append(E)
    s = 1 / np.sqrt(2)
    for i in range(d):
        for j in range(i + 1, d):
            E = np.zeros((d, d), dtype=complex)
            E[i, j] = E[j, i] = s
            out.append(E)
            F = np.zeros((d, d), dtype=complex)
            F[i, j], F[j, i] = -1j * s, 1j * s
            out.append(F)
    return out


def _coords(A, basis):
    return np.array([np.trace(E.conj().T @ A).real for E in basis])


def call_off_matrix(e: QuantumEvent) -> np.ndarray:
    """Real ``d² × d²`` matrix of ``A ↦ e ⊛ A`` in :func:`hermitian_basis` coordinates."""
    basis = hermitian_basis(e.dim)
    return np.column_stack([_coords(q_call_off(e, E), basis) for E in basis])


def _null_space(M, tol=RANK_TOL):
    u, s, vh = np.linalg.svd(M)
    rank = int(np.sum(s > tol))
    return vh[rank:].conj().T


def q_kernel(e: QuantumEvent) -> np.ndarray:
    """Orthonormal columns spanning ``{A : e ⊛ A = 0}`` in real coordinates."""
    return _null_space(call_off_matrix(e))


def _rank(M, tol=RANK_TOL):
    if M.size == 0:
        return 0
    return int(np.sum(np.linalg.svd(M, compute_uv=False) > tol))


def subspace_contains(big: np.ndarray, small: np.ndarray, tol: float = RANK_TOL) -> bool:
    """Is the column span of ``small`` inside that of ``big``?"""
    if small.size == 0 or small.shape[1] == 0:
        return True
    if big.size == 0 or big.shape[1] == 0:
        return False
    Q, _ = np.linalg.qr(big)
    Q = Q[:, :_rank(big, tol)]
    residual = small - Q @ (Q.T @ small)
    return float(np.max(np.abs(residual), initial=0.0)) <= tol


def same_subspace(U: np.ndarray, V: np.ndarray, tol: float = RANK_TOL) -> bool:
    return subspace_contains(U, V, tol) and subspace_contains(V, U, tol)


def kernel_sum_residual(e1: QuantumEvent, e2: QuantumEvent) -> float:
    """Distance between ``ker(e1⊛) + ker(e2⊛)`` and ``ker((e1 ⊓ e2)⊛)``.

    Both subspaces are orthonormalised and compared through their
    orthogonal projectors; zero means the kernel sum identity holds.
    """
    d = e1.dim
    S = np.hstack([q_kernel(e1), q_kernel(e2)])
    K = q_kernel(q_event_meet(e1, e2))

    def proj(M):
        r = _rank(M)
        if r == 0:
            return np.zeros((d * d, d * d))
        u, _, _ = np.linalg.svd(M, full_matrices=False)
        return u[:, :r] @ u[:, :r].T

    return float(np.max(np.abs(proj(S) - proj(K))))


def q_leq_by_kernel(e1: QuantumEvent, e2: QuantumEvent) -> bool:
    """``ker(e2⊛) ⊆ ker(e1⊛)``."""
    return subspace_contains(q_kernel(e1), q_kernel(e2))


# --- random instances ----------------------------------------------------------

def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    Z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_hermitian(d: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    X = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * (X + X.conj().T) / 2


def random_density(d: int, rng: np.random.Generator, rank: Optional[int] = None) -> np.ndarray:
    r = rank or int(rng.integers(1, d + 1))
    X = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def random_event(d: int, rng: np.random.Generator, basis: Optional[np.ndarray] = None,
                 allow_null: bool = False) -> QuantumEvent:
    """Group a random subset of an orthonormal basis into subspaces."""
    U = random_unitary(d, rng) if basis is None else basis
    cols = list(rng.permutation(d))
    used = int(rng.integers(0 if allow_null else 1, d + 1))
    cols = cols[:used]
    bases = []
    while cols:
        k = int(rng.integers(1, len(cols) + 1))
        bases.append(U[:, sorted(cols[:k])])
        cols = cols[k:]
    return QuantumEvent(d, bases)


def random_event_pair(d: int, rng: np.random.Generator) -> tuple:
    """Two random events; half the time they are built on one shared basis."""
    if rng.random() < 0.5:
        U = random_unitary(d, rng)
        return random_event(d, rng, U), random_event(d, rng, U)
    return random_event(d, rng), random_event(d, rng)

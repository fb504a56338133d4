import numpy as np
import pytest

from adbelief import (NonRegularEvent, QuantumEvent, ZeroProbabilityEvent, luders, q_call_off,
                      q_conditional_prevision, q_event_leq, q_event_meet, q_is_regular)
from adbelief.quantum import (as_density, as_hermitian, kernel_sum_residual, q_leq_by_kernel,
                              random_density, random_event, random_event_pair, random_hermitian)

TOL = 1e-9
KET0, KET1 = np.array([1, 0]), np.array([0, 1])
PLUS, MINUS = np.array([1, 1]) / np.sqrt(2), np.array([1, -1]) / np.sqrt(2)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def close(A, B, tol=TOL):
    return np.max(np.abs(np.asarray(A) - np.asarray(B))) <= tol


def test_validation():
    with pytest.raises(ValueError):
        as_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        as_density(np.diag([2.0, 0.0]))
    with pytest.raises(ValueError):
        QuantumEvent.from_vectors(2, [[KET0], [PLUS]])


def test_call_off_examples():
    rng = np.random.default_rng(0)
    A = random_hermitian(3, rng)
    assert close(q_call_off(QuantumEvent.full(3), A), A)
    assert close(q_call_off(QuantumEvent.null(3), A), 0)
    assert close(q_call_off(QuantumEvent.from_vectors(2, [[KET0]]), PAULI_X), 0)


def test_order_and_meet_examples():
    rng = np.random.default_rng(1)
    e = random_event(3, rng)
    assert q_event_leq(e, QuantumEvent.full(3))
    assert q_event_meet(QuantumEvent.from_vectors(2, [[KET0]]), QuantumEvent.from_vectors(2, [[PLUS]])).is_null
    e01 = QuantumEvent.from_vectors(3, [[np.eye(3)[0], np.eye(3)[1]]])
    e12 = QuantumEvent.from_vectors(3, [[np.eye(3)[1], np.eye(3)[2]]])
    m = q_event_meet(e01, e12)
    assert m.ranks == (1,)
    assert close(m.projectors[0], np.diag([0, 1, 0]), 1e-6)


def test_regularity_examples():
    assert not q_is_regular(QuantumEvent.null(2))
    assert q_is_regular(QuantumEvent.from_vectors(2, [[PLUS]]))
    assert q_is_regular(QuantumEvent.full(4))


def test_luders_examples():
    rng = np.random.default_rng(2)
    rho = random_density(3, rng)
    assert close(luders(rho, QuantumEvent.full(3)), rho)
    assert close(luders(np.outer(PLUS, PLUS), QuantumEvent.from_vectors(2, [[KET0]])), np.diag([1, 0]))
    block = QuantumEvent(4, [np.eye(4)[:, :2]])
    assert close(luders(np.eye(4) / 4, block), np.diag([0.5, 0.5, 0, 0]))
    with pytest.raises(NonRegularEvent):
        luders(rho, QuantumEvent.null(3))
    with pytest.raises(ZeroProbabilityEvent):
        luders(np.diag([1.0, 0.0]), QuantumEvent.from_vectors(2, [[KET1]]))


def test_conditional_prevision_examples():
    rng = np.random.default_rng(3)
    rho, e = random_density(3, rng), random_event(3, rng)
    assert abs(q_conditional_prevision(rho, np.eye(3), e) - 1) <= TOL
    v = q_conditional_prevision(np.diag([1, 0]), np.diag([5, 7]), QuantumEvent.from_vectors(2, [[KET0]]))
    assert abs(v - 5) <= TOL


@pytest.mark.parametrize("d", [2, 3, 4])
def test_event_axioms_random(d):
    rng = np.random.default_rng(10 + d)
    for _ in range(20):
        e = random_event(d, rng, allow_null=True)
        A, B = random_hermitian(d, rng), random_hermitian(d, rng)
        lam = rng.normal()
        assert close(q_call_off(e, A + lam * B), q_call_off(e, A) + lam * q_call_off(e, B))
        assert close(q_call_off(e, q_call_off(e, A)), q_call_off(e, A))
        X = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        assert np.linalg.eigvalsh(q_call_off(e, X @ X.conj().T)).min() >= -TOL
        assert np.linalg.eigvalsh(np.eye(d) - q_call_off(e, np.eye(d))).min() >= -TOL


@pytest.mark.parametrize("d", [2, 3])
def test_order_matches_kernel_inclusion(d):
    rng = np.random.default_rng(20 + d)
    for _ in range(25):
        e1, e2 = random_event_pair(d, rng)
        assert q_event_leq(e1, e2) == q_leq_by_kernel(e1, e2)
        m = q_event_meet(e1, e2)
        assert q_event_leq(m, e1) and q_event_leq(m, e2)


def test_kernel_sum_single_subspaces():
    rng = np.random.default_rng(5)
    for d in (2, 3, 4):
        for _ in range(10):
            a = QuantumEvent(d, [random_event(d, rng).bases[0]])
            b = QuantumEvent(d, [random_event(d, rng).bases[0]])
            assert kernel_sum_residual(a, b) <= 1e-6


def test_kernel_sum_fails_for_two_complete_measurements():
    # both events cover the whole space, so the identity lies in both called-off
    # ranges and the kernel sum misses it, while the meet is null and its kernel
    # is everything: the kernel sum identity does not hold for these families
    z = QuantumEvent.from_vectors(2, [[KET0], [KET1]])
    x = QuantumEvent.from_vectors(2, [[PLUS], [MINUS]])
    assert q_event_meet(z, x).is_null
    assert kernel_sum_residual(z, x) == pytest.approx(0.5, abs=1e-9)

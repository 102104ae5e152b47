import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_invertible, rotation
from lieentropy.errors import NumericError
from lieentropy.jordan import elliptic_invariant_gram, multiplicative_jordan
from lieentropy.oracle.adjoint import adjoint_matrix, conjugation_recurrent_membership, verify_adjoint_jordan

seeds = st.integers(0, 2**32 - 1)


def test_adjoint_examples():
    assert np.allclose(adjoint_matrix(np.eye(3)), np.eye(9))
    assert np.allclose(adjoint_matrix(np.diag([2.0, 0.5])), np.diag([1.0, 4.0, 0.25, 1.0]))


def test_adjoint_acts_by_conjugation(rng):
    g = random_invertible(rng, 3)
    x = rng.normal(size=(3, 3))
    lhs = adjoint_matrix(g) @ x.reshape(-1)
    assert np.allclose(lhs, (g @ x @ np.linalg.inv(g)).reshape(-1))


def test_adjoint_singular():
    with pytest.raises(NumericError):
        adjoint_matrix([[1.0, 1.0], [1.0, 1.0]])


@given(st.integers(1, 4), seeds)
def test_adjoint_det_one_on_sl(n, seed):
    g = random_invertible(np.random.default_rng(seed), n, 1e2)
    g = g / abs(np.linalg.det(g)) ** (1 / n)
    assert np.linalg.det(adjoint_matrix(g)) == pytest.approx(1.0, rel=1e-6)


@given(st.integers(1, 4), seeds)
def test_adjoint_homomorphism(n, seed):
    rng = np.random.default_rng(seed)
    g1, g2 = random_invertible(rng, n, 1e2), random_invertible(rng, n, 1e2)
    lhs, rhs = adjoint_matrix(g1 @ g2), adjoint_matrix(g1) @ adjoint_matrix(g2)
    assert np.linalg.norm(lhs - rhs, 2) <= 1e-8 * np.linalg.norm(rhs, 2)


def test_verify_adjoint_jordan_examples():
    ok, res = verify_adjoint_jordan(np.eye(2))
    assert ok and max(res.values()) == 0.0
    assert verify_adjoint_jordan(np.diag([2.0, 0.5]))[0]
    ok, _ = verify_adjoint_jordan([[1.0, 1.0], [0.0, 1.0]])
    assert ok
    u = multiplicative_jordan(adjoint_matrix([[1.0, 1.0], [0.0, 1.0]]))
    assert np.allclose(u.elliptic, np.eye(4)) and np.allclose(u.hyperbolic, np.eye(4))


@given(st.integers(1, 5), seeds)
def test_verify_adjoint_jordan_random(n, seed):
    ok, res = verify_adjoint_jordan(random_invertible(np.random.default_rng(seed), n))
    assert ok, res


def test_membership_examples(rng):
    g = random_invertible(rng, 3)
    assert conjugation_recurrent_membership(g, g)
    assert not conjugation_recurrent_membership(np.diag([2.0, 0.5]), rotation(np.pi / 2))
    x = random_invertible(rng, 2)
    assert conjugation_recurrent_membership(np.eye(2), x)


@given(seeds)
def test_membership_implies_bounded_orbit(seed):
    rng = np.random.default_rng(seed)
    a = random_invertible(rng, 2, 1e2)
    # g = e h with e a rotation and h commuting with e; x commutes with h
    e = a @ rotation(rng.uniform(0.1, 3.0)) @ np.linalg.inv(a)
    h = a @ np.diag([1.7, 1.7]) @ np.linalg.inv(a)
    g = e @ h
    x = a @ (np.eye(2) * rng.uniform(0.5, 2.0) + rotation(rng.uniform(0, 6.0))) @ np.linalg.inv(a)
    assert conjugation_recurrent_membership(g, x)
    ad = adjoint_matrix(g)
    p = elliptic_invariant_gram(multiplicative_jordan(ad).elliptic)
    norm = lambda v: float(np.sqrt(v @ p @ v))  # noqa: E731
    v = x.reshape(-1)
    start = norm(v)
    peak = start
    for _ in range(10_000):
        v = ad @ v
        peak = max(peak, norm(v))
    assert peak <= 10 * start

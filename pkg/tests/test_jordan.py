import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_invertible, rotation
from lieentropy.errors import NumericError
from lieentropy.jordan import (
    chevalley,
    check_invariants,
    elliptic_invariant_gram,
    fixed_space_of_hyperbolic,
    multiplicative_jordan,
    recurrent_subspace,
    semisimplicity_residual,
    spectral_blocks,
)

seeds = st.integers(0, 2**32 - 1)


def test_positive_diagonal():
    m = np.diag([2.0, 0.5])
    mj = multiplicative_jordan(m)
    assert np.allclose(mj.elliptic, np.eye(2))
    assert np.allclose(mj.hyperbolic, m)
    assert np.allclose(mj.unipotent, np.eye(2))


def test_shear_is_unipotent():
    m = np.array([[1.0, 1.0], [0.0, 1.0]])
    mj = multiplicative_jordan(m)
    assert np.allclose(mj.elliptic, np.eye(2))
    assert np.allclose(mj.hyperbolic, np.eye(2))
    assert np.allclose(mj.unipotent, m)


def test_scaled_rotation():
    mj = multiplicative_jordan([[0.0, -2.0], [2.0, 0.0]])
    assert np.allclose(mj.elliptic, [[0, -1], [1, 0]])
    assert np.allclose(mj.hyperbolic, 2 * np.eye(2))
    assert np.allclose(mj.unipotent, np.eye(2))
    assert np.allclose(mj.elliptic @ mj.hyperbolic @ mj.unipotent, [[0, -2], [2, 0]])


def test_defective_negative_eigenvalue():
    # -1 Jordan block: E = -I, H = I, U = -m
    m = np.array([[-1.0, 1.0], [0.0, -1.0]])
    mj = multiplicative_jordan(m)
    assert np.allclose(mj.elliptic, -np.eye(2))
    assert np.allclose(mj.hyperbolic, np.eye(2))
    assert np.allclose(mj.unipotent, [[1.0, -1.0], [0.0, 1.0]])


def test_singular_rejected():
    with pytest.raises(NumericError) as info:
        multiplicative_jordan([[1.0, 2.0], [2.0, 4.0]])
    assert info.value.code == "SINGULAR_MATRIX"


def test_chevalley_parts():
    m = np.array([[2.0, 1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]])
    s, n = chevalley(m)
    assert np.allclose(s, np.diag([2.0, 2.0, 3.0]))
    assert np.allclose(n @ n, 0)
    assert np.allclose(s @ n, n @ s)


def test_spectral_projectors_partition_identity(rng):
    m = random_invertible(rng, 4)
    blocks = spectral_blocks(m)
    total = sum(b.projector for b in blocks)
    assert np.allclose(total, np.eye(4), atol=1e-8)
    for b in blocks:
        assert np.allclose(b.projector @ b.projector, b.projector, atol=1e-8)


@given(st.integers(1, 5), seeds)
def test_invariants_random(n, seed):
    m = random_invertible(np.random.default_rng(seed), n)
    assert all(check_invariants(multiplicative_jordan(m)).values())


@given(st.integers(1, 4), seeds)
def test_idempotent_on_factors(n, seed):
    rng = np.random.default_rng(seed)
    a = random_invertible(rng, n, 1e2)
    # commuting diagonalizable test matrix with chosen moduli and phases
    d = np.zeros((n, n))
    i = 0
    while i < n:
        r = rng.uniform(0.3, 3.0)
        if i + 1 < n and rng.random() < 0.5:
            d[i : i + 2, i : i + 2] = r * rotation(rng.uniform(0.1, 3.0))
            i += 2
        else:
            d[i, i] = r * rng.choice([-1.0, 1.0])
            i += 1
    m = a @ d @ np.linalg.inv(a)
    e, h, u = multiplicative_jordan(m).factors()
    eye = np.eye(n)
    for part, expected in ((e, (e, eye, eye)), (h, (eye, h, eye)), (u, (eye, eye, u))):
        got = multiplicative_jordan(part).factors()
        for x, y in zip(got, expected):
            assert np.allclose(x, y, atol=1e-6)


@given(st.integers(1, 5), seeds)
def test_similarity_functoriality(n, seed):
    rng = np.random.default_rng(seed)
    m = random_invertible(rng, n)
    a = random_invertible(rng, n, 1e2)
    ai = np.linalg.inv(a)
    base = multiplicative_jordan(m).factors()
    conj = multiplicative_jordan(a @ m @ ai).factors()
    for x, y in zip(base, conj):
        expected = a @ x @ ai
        assert np.linalg.norm(y - expected, 2) <= 1e-6 * max(1.0, np.linalg.norm(expected, 2))


def test_recurrent_subspace_examples():
    assert recurrent_subspace([[0.0, -1.0], [1.0, 0.0]]).dim == 2
    assert recurrent_subspace(np.diag([2.0, 3.0])).dim == 0
    shear = recurrent_subspace([[1.0, 1.0], [0.0, 1.0]])
    assert shear.dim == 1
    assert np.allclose(shear.basis[:, 0], [1.0, 0.0])


def test_fixed_space_of_hyperbolic_mixed():
    m = np.zeros((3, 3))
    m[:2, :2] = rotation(0.7)
    m[2, 2] = 5.0
    fix = fixed_space_of_hyperbolic(m)
    assert fix.dim == 2
    assert np.allclose(fix.projector(), np.diag([1.0, 1.0, 0.0]))


@given(st.integers(1, 5), seeds)
def test_recurrent_subspace_invariant(n, seed):
    rng = np.random.default_rng(seed)
    m = random_invertible(rng, n, 1e3)
    # plant a rotation block so the subspace is often nontrivial
    if n >= 2:
        a = random_invertible(rng, n, 1e2)
        d = np.diag(rng.uniform(0.5, 2.0, size=n))
        d[:2, :2] = rotation(1.1)
        m = a @ d @ np.linalg.inv(a)
    sub = recurrent_subspace(m)
    p = sub.projector()
    assert np.linalg.norm((np.eye(n) - p) @ m @ p, 2) <= 1e-7 * max(1.0, np.linalg.norm(m, 2))
    if sub.dim:
        restricted = sub.basis.T @ m @ sub.basis
        assert np.allclose(np.abs(np.linalg.eigvals(restricted)), 1.0, atol=1e-6)


def test_gram_examples(rng):
    assert np.allclose(elliptic_invariant_gram(np.eye(3)), np.eye(3))
    r = rotation(0.37)
    p = elliptic_invariant_gram(r)
    assert np.allclose(r.T @ p @ r, p)
    a = random_invertible(rng, 2, 1e2)
    e = a @ r @ np.linalg.inv(a)
    p = elliptic_invariant_gram(e)
    assert np.allclose(e.T @ p @ e, p, atol=1e-7 * np.linalg.norm(p, 2))
    assert np.all(np.linalg.eigvalsh(p) > 0)
    ai = np.linalg.inv(a)
    q = ai.T @ ai
    assert np.allclose(e.T @ q @ e, q)


def test_gram_rejects_non_elliptic():
    with pytest.raises(NumericError) as info:
        elliptic_invariant_gram(np.diag([2.0, 0.5]))
    assert info.value.code == "NOT_ELLIPTIC"
    with pytest.raises(NumericError):
        elliptic_invariant_gram([[1.0, 1.0], [0.0, 1.0]])


def test_semisimplicity_residual():
    assert semisimplicity_residual(np.diag([1.0, 2.0])) < 1e-12
    assert semisimplicity_residual(np.array([[1.0, 1.0], [0.0, 1.0]])) > 0.1
    assert semisimplicity_residual(rotation(math.pi / 3)) < 1e-12

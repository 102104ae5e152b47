import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from conftest import CAT, CAT_ENTROPY, random_integer, random_invertible
from lieentropy import engine
from lieentropy.engine import (
    abelian_entropy,
    bowen_formula,
    compact_entropy,
    compute,
    conjectural_general_entropy,
    nilpotent_entropy,
    power_entropy,
    product_entropy,
    reductive_entropy,
    semisimple_entropy,
    torus_entropy,
)
from lieentropy.errors import InputError, NumericError, ValidationFailed
from lieentropy.groups import (
    AbelianEndo,
    CompactEndo,
    SemisimpleEndo,
    abelian,
    compact,
    semisimple_linear,
    vector,
)
from lieentropy.oracle.adjoint import adjoint_matrix
from lieentropy.references import GENERAL, SEMISIMPLE

seeds = st.integers(0, 2**32 - 1)
LOG2, LOG3 = math.log(2), math.log(3)


def test_bowen_examples():
    assert bowen_formula(np.eye(3)).value == 0.0
    assert bowen_formula(np.eye(3)).contributions == ()
    assert bowen_formula(CAT).value == pytest.approx(CAT_ENTROPY, abs=1e-10)
    assert bowen_formula(np.diag([2.0, 0.5])).value == pytest.approx(LOG2, abs=1e-15)


def test_bowen_counts_multiplicity():
    cert = bowen_formula(np.array([[3.0, 1.0], [0.0, 3.0]]))
    assert cert.value == pytest.approx(2 * LOG3, abs=1e-12)


def test_torus_examples():
    assert torus_entropy([[2]]).value == pytest.approx(LOG2, abs=1e-15)
    assert torus_entropy(CAT).value == pytest.approx(CAT_ENTROPY, abs=1e-10)
    assert torus_entropy([[0, -1], [1, 0]]).value == 0.0
    assert "TORUS" in torus_entropy([[2]]).rules()
    assert torus_entropy([]).value == 0.0


def test_torus_singular():
    with pytest.raises(InputError) as info:
        torus_entropy([[1, 1], [1, 1]])
    assert info.value.code == "SINGULAR_LATTICE_MAP"


def test_exact_cyclotomic_mode():
    # x^4 + 1 is cyclotomic; its roots sit exactly on the unit circle
    t = [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
    cert = torus_entropy(t, exact_cyclotomic=True)
    assert cert.value == 0.0
    assert "CYCLOTOMIC" in " ".join(cert.rules())
    # the exact mode must agree with the numeric one off the circle
    for m in ([[2]], CAT, [[3, 1], [2, 1]]):
        assert torus_entropy(m, exact_cyclotomic=True).value == pytest.approx(torus_entropy(m).value, abs=1e-12)


def test_abelian_examples():
    cert = abelian_entropy([[2]], None, [[3.0]])
    assert cert.value == pytest.approx(LOG2, abs=1e-15)
    assert abelian_entropy([], None, random_invertible(np.random.default_rng(1), 3)).value == 0.0
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert abelian_entropy(CAT, None, rot).value == pytest.approx(CAT_ENTROPY, abs=1e-10)


def test_abelian_singular_s():
    with pytest.raises(InputError) as info:
        abelian_entropy([[2]], None, [[0.0]])
    assert info.value.code == "NOT_SURJECTIVE"


def test_nilpotent_examples():
    assert nilpotent_entropy([]).value == 0.0
    assert nilpotent_entropy([[2]]).value == pytest.approx(LOG2, abs=1e-15)
    assert nilpotent_entropy(np.eye(3, dtype=int)).value == 0.0
    assert "NILPOTENT_REDUCTION" in nilpotent_entropy([[2]]).rules()


def test_semisimple_examples(rng):
    for g in (np.eye(2), np.diag([2.0, 0.5]), [[1.0, 1.0], [0.0, 1.0]]):
        cert = semisimple_entropy(SemisimpleEndo(g))
        assert cert.value == 0.0
        assert not cert.conjectural
        assert cert.rules()[-1] == "SEMISIMPLE_ZERO"
        assert cert.trace[-1].paper_ref == SEMISIMPLE


def test_semisimple_strictness():
    g = np.diag([2.0, 0.5])
    assert semisimple_entropy(SemisimpleEndo(g)).value == 0.0
    assert bowen_formula(adjoint_matrix(g)).value == pytest.approx(math.log(4), abs=1e-12)
    rules = semisimple_entropy(SemisimpleEndo(g)).rules()
    assert "BOWEN" not in rules and "BOWEN_UPPER_BOUND_ONLY" in rules


def test_reductive_examples():
    center = AbelianEndo([[3]])
    derived = SemisimpleEndo(np.diag([2.0, 0.5]))
    cert = reductive_entropy(center, derived, True)
    assert cert.value == pytest.approx(LOG3, abs=1e-15)
    assert not cert.conjectural
    assert {"REDUCTIVE_SPLIT", "PRODUCT", "SEMISIMPLE_ZERO", "REDUCTIVE_REDUCTION"} <= set(cert.rules())
    flagged = reductive_entropy(center, derived, False)
    assert flagged.value == cert.value and flagged.conjectural
    assert "WARNING_PI_NOT_PROPER" in flagged.rules()
    assert reductive_entropy(AbelianEndo(None, None, np.eye(2) * 4), derived, True).value == 0.0


def test_compact_matches_torus():
    for t in ([[2]], CAT, [[0, -1], [1, 0]]):
        assert compact_entropy(t).value == torus_entropy(t).value


def test_product_and_power():
    two = torus_entropy([[2]])
    zero = torus_entropy([[1]])
    assert product_entropy(two, zero).value == pytest.approx(LOG2)
    assert product_entropy(torus_entropy(CAT), two).value == pytest.approx(CAT_ENTROPY + LOG2, abs=1e-10)
    assert product_entropy(zero, zero).value == 0.0
    assert power_entropy(two, 1).value == two.value
    assert power_entropy(two, 3).value == pytest.approx(3 * LOG2, abs=1e-15)
    assert power_entropy(zero, 7).value == 0.0
    with pytest.raises(InputError):
        power_entropy(two, 0)


def test_conjectural_general():
    cert = conjectural_general_entropy([[2]], [[1]])
    assert cert.value == pytest.approx(LOG2) and cert.conjectural
    assert conjectural_general_entropy([[1]], [[1]]).value == 0.0
    cert = conjectural_general_entropy(CAT, [[3]])
    assert cert.value == pytest.approx(CAT_ENTROPY + LOG3, abs=1e-10)
    assert cert.trace[-1].rule == "GENERAL_CONJECTURE" and cert.trace[-1].paper_ref == GENERAL
    with pytest.raises(InputError):
        conjectural_general_entropy([[0]], [[1]])


def test_compute_dispatch():
    assert compute(compact(1), CompactEndo([[2]])).value == pytest.approx(LOG2)
    assert compute(semisimple_linear(3), SemisimpleEndo(np.eye(3))).value == 0.0
    cert = compute(abelian(1, 1), AbelianEndo([[1]], None, [[5.0]]))
    assert cert.value == 0.0
    assert cert.rules()[0] == "VALIDATED"


def test_compute_validation_failure():
    with pytest.raises(ValidationFailed) as info:
        compute(vector(1), AbelianEndo(None, None, [[0.0]]))
    assert "NOT_SURJECTIVE" in info.value.report.codes("ERROR")


def test_log_base_two():
    cert = compute(compact(1), CompactEndo([[2]]), log_base="2")
    assert cert.value == pytest.approx(1.0, abs=1e-15)
    assert cert.log_base == "2"
    assert cert.to_dict()["log_base"] == "2"


def test_certificate_json_key_order():
    d = torus_entropy(CAT).to_dict()
    assert list(d) == ["value", "log_base", "conjectural", "contributions", "trace"]
    assert list(d["contributions"][0]) == ["re", "im", "modulus", "log_modulus"]
    assert list(d["trace"][0]) == ["rule", "paper_ref", "detail"]


@given(st.integers(1, 6), seeds)
def test_nonnegative_and_self_consistent(n, seed):
    cert = torus_entropy(random_integer(np.random.default_rng(seed), n))
    assert cert.value >= 0
    assert abs(cert.value - math.fsum(c.log_modulus for c in cert.contributions)) <= 1e-12
    assert all(c.modulus > 1 + 1e-9 for c in cert.contributions)
    assert not cert.conjectural


@given(st.integers(1, 3), st.integers(1, 3), seeds)
def test_product_formula(p, r, seed):
    rng = np.random.default_rng(seed)
    a, b = random_integer(rng, p), random_integer(rng, r)
    whole = torus_entropy(scipy.linalg.block_diag(a, b)).value
    assert abs(whole - torus_entropy(a).value - torus_entropy(b).value) <= 1e-9


@given(st.integers(1, 3), st.integers(1, 5), seeds)
def test_power_formula(p, k, seed):
    a = random_integer(np.random.default_rng(seed), p)
    assert abs(torus_entropy(np.linalg.matrix_power(a, k)).value - k * torus_entropy(a).value) <= 1e-8 * k


@given(st.integers(1, 4), seeds)
def test_conjugation_invariance(n, seed):
    rng = np.random.default_rng(seed)
    a = random_invertible(rng, n, 1e3) * 2
    p = random_invertible(rng, n, 1e2)
    conj = p @ a @ np.linalg.inv(p)
    assert abs(bowen_formula(conj).value - bowen_formula(a).value) <= 1e-6


@given(st.integers(1, 2), st.integers(1, 2), seeds)
def test_factor_inequality(p, r, seed):
    rng = np.random.default_rng(seed)
    a, d = random_integer(rng, p), random_integer(rng, r)
    c = rng.integers(-3, 4, size=(p, r))
    full = np.block([[a, c], [np.zeros((r, p), dtype=int), d]])
    assert torus_entropy(d).value <= torus_entropy(full).value + 1e-9


def test_bowen_rejects_singular():
    with pytest.raises(NumericError) as info:
        bowen_formula([[1.0, 2.0], [2.0, 4.0]])
    assert info.value.code == "SINGULAR_MATRIX"


def test_certificates_are_immutable():
    cert = torus_entropy([[2]])
    with pytest.raises(Exception):
        cert.value = 3.0
    assert engine.EntropyCertificate.build(cert.contributions, cert.trace) == cert

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from spinfour import (
    QI,
    QJ,
    QK,
    QONE,
    ValidationError,
    as_vec4,
    from_vec4,
    qconj,
    qinv,
    qmul,
    qnorm,
    qnormalize,
    qpow,
    random_unit,
)

UNITS = {"1": QONE, "i": QI, "j": QJ, "k": QK}

# full basis multiplication table: i^2 = j^2 = k^2 = ijk = -1
TABLE = {
    ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
    ("i", "1"): ("i", 1), ("j", "1"): ("j", 1), ("k", "1"): ("k", 1),
    ("i", "i"): ("1", -1), ("j", "j"): ("1", -1), ("k", "k"): ("1", -1),
    ("i", "j"): ("k", 1), ("j", "i"): ("k", -1),
    ("j", "k"): ("i", 1), ("k", "j"): ("i", -1),
    ("k", "i"): ("j", 1), ("i", "k"): ("j", -1),
}


@pytest.mark.parametrize("a,b", sorted(TABLE))
def test_multiplication_table(a, b):
    name, sign = TABLE[(a, b)]
    assert_allclose(qmul(UNITS[a], UNITS[b]), sign * UNITS[name], atol=0)


def test_ijk_equals_minus_one():
    assert_allclose(qmul(qmul(QI, QJ), QK), -QONE, atol=0)


def test_identity_element():
    rng = np.random.default_rng(0)
    q = rng.normal(size=(50, 4))
    assert_allclose(qmul(QONE, q), q, atol=0)
    assert_allclose(qmul(q, QONE), q, atol=0)


def test_noncommutativity_witness():
    assert_allclose(qmul(QI, QJ), -qmul(QJ, QI))


unit_quaternions = st.builds(
    lambda seed: random_unit(np.random.default_rng(seed)),
    st.integers(min_value=0, max_value=2**31),
)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31))
def test_norm_multiplicative(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=4) * rng.uniform(0.1, 10)
    b = rng.normal(size=4) * rng.uniform(0.1, 10)
    lhs = qnorm(qmul(a, b))
    rhs = qnorm(a) * qnorm(b)
    assert abs(lhs - rhs) <= 1e-12 * rhs


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31))
def test_associative_on_unit_triples(seed):
    a, b, c = random_unit(np.random.default_rng(seed), (3,))
    assert_allclose(qmul(qmul(a, b), c), qmul(a, qmul(b, c)), atol=1e-12)


def test_qinv_basics():
    assert_allclose(qinv(QONE), QONE, atol=0)
    assert_allclose(qinv(QI), -QI, atol=0)
    rng = np.random.default_rng(3)
    q = random_unit(rng, (100,))
    assert_allclose(qinv(qinv(q)), q, atol=1e-12)
    assert_allclose(qmul(q, qinv(q)), np.broadcast_to(QONE, q.shape), atol=1e-12)


def test_qinv_rejects_non_unit():
    with pytest.raises(ValidationError):
        qinv(np.array([1.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValidationError):
        qinv(1.001 * QONE, atol=1e-6)


def test_qpow():
    assert_allclose(qpow(QI, 2), -QONE, atol=1e-15)
    assert_allclose(qpow(QJ, 4), QONE, atol=1e-15)
    rng = np.random.default_rng(4)
    q = random_unit(rng, (40,))
    assert_allclose(qpow(q, 1), q, atol=1e-12)
    assert_allclose(qpow(q, 0), np.broadcast_to(QONE, q.shape), atol=0)
    for n in (1, 2, 5):
        assert_allclose(qpow(q, -n), qinv(qpow(q, n)), atol=1e-12)
    # power by angle scaling == repeated product
    repeated = q.copy()
    for _ in range(4):
        repeated = qmul(repeated, q)
    assert_allclose(qpow(q, 5), repeated, atol=1e-12)


def test_unit_norm_survives_long_products():
    rng = np.random.default_rng(5)
    acc = QONE.copy()
    for q in random_unit(rng, (1000,)):
        acc = qmul(acc, q)
    assert abs(qnorm(acc) - 1.0) <= 1e-9
    assert abs(qnorm(qpow(random_unit(rng), 10**6)) - 1.0) <= 1e-9


def test_vec4_roundtrip():
    assert_allclose(as_vec4(QONE), np.array([1.0, 0, 0, 0]), atol=0)
    assert_allclose(from_vec4(np.array([0.0, 1, 0, 0])), QI, atol=0)
    rng = np.random.default_rng(6)
    v = rng.normal(size=(30, 4))
    assert_allclose(as_vec4(from_vec4(v)), v, atol=0)
    with pytest.raises(ValidationError):
        from_vec4(np.zeros(3))


def test_qconj_and_normalize():
    assert_allclose(qconj(np.array([1.0, 2, 3, 4])), np.array([1.0, -2, -3, -4]))
    q = qnormalize(np.array([3.0, 4.0, 0.0, 0.0]))
    assert_allclose(qnorm(q), 1.0, atol=1e-15)

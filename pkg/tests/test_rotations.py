import numpy as np
import pytest
from numpy.testing import assert_allclose

from spinfour import (
    QI,
    QJ,
    QK,
    QONE,
    DecompositionError,
    ValidationError,
    conjugation_matrix,
    double_cover,
    is_so4,
    isoclinic_decompose,
    left_mult_matrix,
    qmul,
    random_unit,
    require_so4,
    right_mult_matrix,
)

E1 = np.array([1.0, 0, 0, 0])


def test_left_mult_identity():
    assert_allclose(left_mult_matrix(QONE), np.eye(4), atol=0)


def test_left_mult_by_i_matches_table():
    # columns are the images of 1, i, j, k under p -> i*p
    m = left_mult_matrix(QI)
    assert_allclose(m @ QONE, QI, atol=0)
    assert_allclose(m @ QI, -QONE, atol=0)
    assert_allclose(m @ QJ, QK, atol=0)
    assert_allclose(m @ QK, -QJ, atol=0)


def test_mult_matrices_agree_with_qmul():
    rng = np.random.default_rng(0)
    q = random_unit(rng, (200,))
    p = random_unit(rng, (200,))
    assert_allclose(
        np.einsum("nij,nj->ni", left_mult_matrix(q), p), qmul(q, p), atol=1e-14
    )
    assert_allclose(
        np.einsum("nij,nj->ni", right_mult_matrix(q), p), qmul(p, q), atol=1e-14
    )


def test_translations_are_special_orthogonal():
    rng = np.random.default_rng(1)
    q = random_unit(rng, (1000,))
    assert is_so4(left_mult_matrix(q)).all()
    assert is_so4(right_mult_matrix(q)).all()
    assert is_so4(conjugation_matrix(q)).all()


def test_conjugation_fixes_real_axis():
    rng = np.random.default_rng(2)
    q = random_unit(rng, (300,))
    assert_allclose(conjugation_matrix(q) @ E1, np.broadcast_to(E1, (300, 4)), atol=1e-14)
    assert_allclose(conjugation_matrix(QONE), np.eye(4), atol=0)


def test_conjugation_even_in_sign():
    rng = np.random.default_rng(3)
    q = random_unit(rng, (100,))
    assert_allclose(conjugation_matrix(-q), conjugation_matrix(q), atol=1e-14)


def test_double_cover_specializations():
    rng = np.random.default_rng(4)
    q = random_unit(rng, (100,))
    ones = np.broadcast_to(QONE, q.shape)
    assert_allclose(double_cover(QONE, QONE), np.eye(4), atol=0)
    assert_allclose(double_cover(q, ones), left_mult_matrix(q), atol=1e-14)
    assert_allclose(double_cover(q, q), conjugation_matrix(q), atol=1e-14)


def test_double_cover_two_fold_kernel():
    rng = np.random.default_rng(5)
    q1, q2 = random_unit(rng, (2, 100))
    assert_allclose(double_cover(-q1, -q2), double_cover(q1, q2), atol=1e-14)


def test_double_cover_is_homomorphism():
    rng = np.random.default_rng(6)
    a1, a2, b1, b2 = random_unit(rng, (4, 200))
    lhs = double_cover(qmul(a1, b1), qmul(a2, b2))
    rhs = double_cover(a1, a2) @ double_cover(b1, b2)
    assert np.max(np.abs(lhs - rhs)) <= 1e-9


def test_so4_validation_rejects_bad_matrices():
    with pytest.raises(ValidationError):
        require_so4(np.eye(4) * 1.5)
    reflection = np.diag([1.0, 1.0, 1.0, -1.0])  # orthogonal but det -1
    with pytest.raises(ValidationError):
        require_so4(reflection)
    with pytest.raises(ValidationError):
        require_so4(np.eye(3))


def test_decompose_identity_canonical():
    q1, q2 = isoclinic_decompose(np.eye(4))
    assert_allclose(q1, QONE, atol=1e-12)
    assert_allclose(q2, QONE, atol=1e-12)


def test_decompose_roundtrips_random_pairs():
    # oracle: rebuild through double_cover and compare matrices
    rng = np.random.default_rng(7)
    p, r = random_unit(rng, (2, 5000))
    m = double_cover(p, r)
    q1, q2 = isoclinic_decompose(m)
    assert np.max(np.abs(double_cover(q1, q2) - m)) <= 1e-8
    # recovered pair is the original up to one shared sign
    keep = np.linalg.norm(q1 - p, axis=-1) + np.linalg.norm(q2 - r, axis=-1)
    flip = np.linalg.norm(q1 + p, axis=-1) + np.linalg.norm(q2 + r, axis=-1)
    assert np.max(np.minimum(keep, flip)) <= 1e-8


def test_decompose_conjugation_gives_equal_pair():
    rng = np.random.default_rng(8)
    q = random_unit(rng, (500,))
    q1, q2 = isoclinic_decompose(conjugation_matrix(q))
    keep = np.linalg.norm(q1 - q, axis=-1) + np.linalg.norm(q2 - q, axis=-1)
    flip = np.linalg.norm(q1 + q, axis=-1) + np.linalg.norm(q2 + q, axis=-1)
    assert np.max(np.minimum(keep, flip)) <= 1e-10


def test_decompose_sign_rule_is_canonical():
    rng = np.random.default_rng(9)
    p, r = random_unit(rng, (2, 400))
    q1, _ = isoclinic_decompose(double_cover(p, r))
    # first component of q1 larger than the threshold must be positive
    idx = np.argmax(np.abs(q1) > 1e-4, axis=-1)
    lead = np.take_along_axis(q1, idx[:, None], axis=-1)[:, 0]
    assert np.all(lead > 0)


def test_decompose_same_output_for_flipped_pair():
    rng = np.random.default_rng(10)
    p, r = random_unit(rng, (2, 50))
    a = isoclinic_decompose(double_cover(p, r))
    b = isoclinic_decompose(double_cover(-p, -r))
    assert_allclose(a[0], b[0], atol=1e-12)
    assert_allclose(a[1], b[1], atol=1e-12)


def test_decompose_residual_guard():
    # a matrix that sneaks past a loosened validation must still be rejected
    rng = np.random.default_rng(11)
    m = double_cover(*random_unit(rng, (2,)).reshape(2, 4))
    m = m + 1e-5 * rng.normal(size=(4, 4))
    with pytest.raises((DecompositionError, ValidationError)):
        isoclinic_decompose(m, atol=1e-3)

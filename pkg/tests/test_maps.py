import numpy as np
import pytest
from numpy.testing import assert_allclose

from spinfour import (
    QONE,
    BlackBoxMap,
    GridCoarseError,
    HopfGrid,
    PowerMap,
    ValidationError,
    WordMap,
    conjugation_matrix,
    double_cover,
    evaluate,
    left_mult_matrix,
    lift_numeric,
    lift_word,
    parse_word,
    pointwise_inverse,
    pointwise_product,
    random_unit,
)

ETA = parse_word("eta")
NU = parse_word("nu")
TANGENT = parse_word("eta^2 * nu^-1")


def black_box(word):
    """Wrap a word's evaluator so the symbolic structure is invisible."""
    wm = WordMap(word)
    return BlackBoxMap(lambda p: wm.matrices(p), f"boxed {word}")


def test_evaluate_single_letters():
    rng = np.random.default_rng(0)
    q = random_unit(rng, (50,))
    assert_allclose(evaluate(ETA, q), left_mult_matrix(q), atol=1e-14)
    assert_allclose(evaluate(NU, q), conjugation_matrix(q), atol=1e-14)


def test_evaluate_word_letter_order():
    rng = np.random.default_rng(1)
    q = random_unit(rng, (50,))
    expected = (
        left_mult_matrix(q) @ left_mult_matrix(q)
        @ np.swapaxes(conjugation_matrix(q), -1, -2)
    )
    assert_allclose(evaluate(TANGENT, q), expected, atol=1e-12)


def test_all_generators_send_base_point_to_identity():
    assert_allclose(evaluate(TANGENT, QONE), np.eye(4), atol=1e-14)
    assert_allclose(evaluate(ETA, QONE), np.eye(4), atol=1e-14)


def test_evaluate_empty_word():
    rng = np.random.default_rng(2)
    q = random_unit(rng, (20,))
    assert_allclose(evaluate(parse_word(""), q), np.broadcast_to(np.eye(4), (20, 4, 4)))


def test_black_box_validation_names_the_point():
    bad = BlackBoxMap(
        lambda p: np.broadcast_to(np.eye(4) * 2.0, p.shape[:-1] + (4, 4)), "bad"
    )
    rng = np.random.default_rng(3)
    q = random_unit(rng, (4,))
    with pytest.raises(ValidationError, match="at q ="):
        bad.matrices(q)


def test_pointwise_product_of_words_stays_symbolic():
    prod = pointwise_product(ETA, parse_word("eta^-1"))
    assert isinstance(prod, WordMap)
    assert prod.word.is_empty
    prod = pointwise_product(parse_word("eta^2"), parse_word("nu^-1"))
    assert prod.word.exponent_sums() == (2, -1)


def test_pointwise_product_matches_matrix_product():
    rng = np.random.default_rng(4)
    q = random_unit(rng, (40,))
    mixed = pointwise_product(black_box(ETA), NU)
    assert_allclose(
        mixed.matrices(q), evaluate(ETA, q) @ evaluate(NU, q), atol=1e-12
    )


def test_pointwise_inverse():
    rng = np.random.default_rng(5)
    q = random_unit(rng, (40,))
    for m in (WordMap(TANGENT), black_box(TANGENT)):
        inv = pointwise_inverse(m)
        assert_allclose(
            inv.matrices(q) @ m.matrices(q),
            np.broadcast_to(np.eye(4), (40, 4, 4)),
            atol=1e-12,
        )


def test_lift_word_letter_substitution():
    # nu lifts to the identity on both components
    pair = lift_word(NU)
    assert (pair.f1, pair.f2) == (PowerMap(1), PowerMap(1))
    # eta lifts to the identity on the first and the constant 1 on the second
    pair = lift_word(ETA)
    assert (pair.f1, pair.f2) == (PowerMap(1), PowerMap(0))


def test_lift_word_tangent():
    # componentwise products of the letter lifts: (q^2 * q^-1, q^-1)
    pair = lift_word(TANGENT)
    assert (pair.f1, pair.f2) == (PowerMap(1), PowerMap(-1))


def test_lift_word_covers_the_word_map():
    rng = np.random.default_rng(6)
    q = random_unit(rng, (1000,))
    for word in (ETA, NU, TANGENT, parse_word("nu^2 * eta^-1 * nu")):
        assert lift_word(word).cover_deviation(q) <= 1e-7


def test_numeric_lift_covers_the_map():
    rng = np.random.default_rng(7)
    q = random_unit(rng, (1000,))
    pair = lift_numeric(black_box(TANGENT))
    assert pair.cover_deviation(q) <= 1e-7


def test_numeric_lift_matches_symbolic_up_to_global_sign():
    grid = HopfGrid(24, 24, 12)
    for word in (ETA, NU):
        numeric = lift_numeric(black_box(word), grid=grid)
        table = numeric.grid_pair_values().reshape(-1, 2, 4)
        sym = lift_word(word).pair_values(grid.nodes)
        keep = float(np.max(np.abs(table - sym)))
        flip = float(np.max(np.abs(table + sym)))
        assert min(keep, flip) <= 1e-9


def test_numeric_lift_of_nu_has_equal_components():
    grid = HopfGrid(24, 24, 12)
    numeric = lift_numeric(black_box(NU), grid=grid)
    table = numeric.grid_pair_values()
    assert_allclose(table[..., 0, :], table[..., 1, :], atol=1e-9)


def test_numeric_lift_of_constant_map():
    const = BlackBoxMap(
        lambda p: np.broadcast_to(np.eye(4), p.shape[:-1] + (4, 4)), "constant"
    )
    numeric = lift_numeric(const, grid=HopfGrid(12, 12, 6))
    table = numeric.grid_pair_values()
    ones = np.broadcast_to(QONE, table[..., 0, :].shape)
    # both components constant +-1; the global sign rule picks +1
    assert_allclose(table[..., 0, :], ones, atol=1e-9)
    assert_allclose(table[..., 1, :], ones, atol=1e-9)


def test_numeric_lift_base_point_sign():
    for word in (ETA, TANGENT, parse_word("nu^-2")):
        numeric = lift_numeric(black_box(word), grid=HopfGrid(24, 24, 12))
        lead = numeric.pair_values(QONE[None, :])[0, 0, 0]
        assert lead > 0  # matches the symbolic lift, where f1(1) = 1


def test_numeric_lift_off_grid_queries_are_consistent():
    rng = np.random.default_rng(8)
    q = random_unit(rng, (500,))
    numeric = lift_numeric(black_box(TANGENT))
    sym = lift_word(TANGENT).pair_values(q)
    num = numeric.pair_values(q)
    assert min(
        float(np.max(np.abs(num - sym))), float(np.max(np.abs(num + sym)))
    ) <= 1e-7


def test_coarse_grid_raises():
    with pytest.raises(GridCoarseError, match="grid too coarse"):
        lift_numeric(black_box(parse_word("nu^4")), grid=HopfGrid(8, 8, 4))


def test_default_grid_handles_words_up_to_size_six():
    for text in ("nu^6", "eta^6", "eta^3 * nu^3", "eta^-2 * nu^4", "nu * eta^4 * nu"):
        lift_numeric(WordMap(parse_word(text)))  # must not raise


def test_lifted_pair_components_cover_jointly():
    # both components come from one factorization, so recombining them
    # through the double cover reproduces the matrix pointwise
    rng = np.random.default_rng(9)
    q = random_unit(rng, (200,))
    numeric = lift_numeric(black_box(parse_word("eta * nu^-1")))
    f1 = numeric.f1.evaluate(q)
    f2 = numeric.f2.evaluate(q)
    m = WordMap(parse_word("eta * nu^-1")).matrices(q)
    assert np.max(np.abs(double_cover(f1, f2) - m)) <= 1e-7

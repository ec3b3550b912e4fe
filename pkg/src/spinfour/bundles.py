"""Classification of oriented rank-4 bundles over the 4-sphere.

A bundle is determined by the homotopy class of its clutching map from the
3-sphere into SO(4), and that class is pinned down by two integers: the Euler
number and the first Pontryagin number.  With lift degrees (d1, d2) of the
clutching map these are

    euler = d1 - d2,        pontryagin = -2 * (d1 + d2),

and the lattice coordinates phi = (euler, -(pontryagin + 2*euler) / 4) turn
pointwise multiplication of clutching maps into vector addition.  For the
generators: phi(eta) = (1, 0) and phi(nu) = (0, 1), so phi of a word equals
its exponent sums.  The tangent bundle of the 4-sphere has clutching word
eta^2 * nu^-1, giving euler 2 and pontryagin 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .degree import degree_exact, degree_integral_multi, degree_preimage
from .errors import MethodDisagreementError
from .hopf import as_grid
from .maps import LiftedPair, as_so4_map, lift_numeric, lift_word
from .words import GeneratorWord, parse_word

__all__ = [
    "BundleClass",
    "class_from_degrees",
    "classify_word",
    "classify_numeric",
    "tangent_bundle_word",
]


@dataclass(frozen=True)
class BundleClass:
    """Euler number, Pontryagin number, and lattice coordinates of a bundle."""

    euler: int
    pontryagin: int
    phi: tuple[int, int]

    def __post_init__(self):
        if (self.pontryagin + 2 * self.euler) % 4 != 0:
            raise ValueError(
                f"(pontryagin + 2*euler) = {self.pontryagin + 2 * self.euler} "
                "is not divisible by 4: not realizable over the 4-sphere"
            )
        expected = (self.euler, -(self.pontryagin + 2 * self.euler) // 4)
        if tuple(self.phi) != expected:
            raise ValueError(f"phi {self.phi} inconsistent, expected {expected}")

    @classmethod
    def from_invariants(cls, euler: int, pontryagin: int) -> "BundleClass":
        return cls(euler, pontryagin, (euler, -(pontryagin + 2 * euler) // 4))


def class_from_degrees(d1: int, d2: int) -> BundleClass:
    """Bundle class of a clutching map whose lift has component degrees (d1, d2)."""
    return BundleClass.from_invariants(int(d1) - int(d2), -2 * (int(d1) + int(d2)))


def classify_word(word) -> BundleClass:
    """Exact classification of a clutching word via its symbolic lift."""
    if isinstance(word, str):
        word = parse_word(word)
    pair = lift_word(word)
    d1 = degree_exact(pair.f1).degree
    d2 = degree_exact(pair.f2).degree
    return class_from_degrees(d1, d2)


def _lift_degrees_integral(pair: LiftedPair, resolution=None) -> tuple[int, int]:
    results = degree_integral_multi(pair.pair_values, 2, resolution)
    return results[0].degree, results[1].degree


def classify_numeric(m, resolution=None, cross_check: bool = False,
                     seed_count: int = 512) -> BundleClass:
    """Classification of an arbitrary smooth clutching map.

    Lifts the map numerically over a Hopf grid (one lift, so both component
    degrees share a single global sign -- flipping components independently
    could shift both integers coherently) and integrates both component
    degrees in one sweep.  With ``cross_check=True`` the preimage counter
    recomputes each degree and any disagreement raises.
    """
    m = as_so4_map(m)
    grid = as_grid(resolution)
    pair = lift_numeric(m, grid)
    d1, d2 = _lift_degrees_integral(pair, grid)
    if cross_check:
        p1 = degree_preimage(pair.f1, seed_count=seed_count).degree
        p2 = degree_preimage(pair.f2, seed_count=seed_count).degree
        if (p1, p2) != (d1, d2):
            raise MethodDisagreementError(
                f"integral degrees ({d1}, {d2}) disagree with preimage counts ({p1}, {p2})"
            )
    return class_from_degrees(d1, d2)


def tangent_bundle_word() -> GeneratorWord:
    """Clutching word of the tangent bundle of the 4-sphere: eta^2 * nu^-1."""
    return GeneratorWord.from_pairs(("eta", 2), ("nu", -1))

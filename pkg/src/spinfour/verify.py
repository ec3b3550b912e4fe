"""One-shot verification of every pinned numeric identity in the package.

Runs the exact classifications of the generator words, the lattice-coordinate
additivity law, the double-cover roundtrip, numeric degree additivity, and the
numeric-vs-symbolic classifier comparison, and collects one pass/fail line per
claim.  Randomized blocks draw from a seeded generator so runs are
reproducible; the seed, grid resolution, and preimage seed count are the only
knobs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .bundles import classify_numeric, classify_word, tangent_bundle_word
from .degree import PowerMap, ProductMap, degree_exact, degree_integral
from .errors import NumericalFailure
from .maps import WordMap
from .quaternions import random_unit
from .rotations import double_cover, isoclinic_decompose
from .words import EMPTY_WORD, GeneratorWord

__all__ = [
    "CheckLine",
    "VerificationReport",
    "run_verification",
    "classifier_agreement_words",
    "random_word",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 8128
ROUNDTRIP_PAIRS = 10_000
ROUNDTRIP_TOL = 1e-8
HOMOMORPHISM_PAIRS = 100
ADDITIVITY_PAIRS = 20


@dataclass(frozen=True)
class CheckLine:
    name: str
    claim: str
    computed: str
    expected: str
    passed: bool
    note: str = ""

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name}: {self.claim} [computed {self.computed}]"
        if self.note:
            text += f" ({self.note})"
        return text


@dataclass
class VerificationReport:
    seed: int
    resolution: tuple[int, int, int] | None
    lines: list[CheckLine] = field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "resolution": list(self.resolution) if self.resolution else None,
            "passed": self.passed,
            "duration_seconds": round(self.duration, 3),
            "checks": [
                {
                    "name": l.name,
                    "claim": l.claim,
                    "computed": l.computed,
                    "expected": l.expected,
                    "passed": l.passed,
                    "note": l.note,
                }
                for l in self.lines
            ],
        }


def classifier_agreement_words() -> list[GeneratorWord]:
    """The 19 words, of total size at most 3, used for the numeric-vs-symbolic
    comparison: the empty word, all pure powers of either generator up to
    exponent 3, the four mixed degree-2 words, and the tangent-bundle word
    with its inverse class."""
    words = [EMPTY_WORD]
    for n in (1, 2, 3, -1, -2, -3):
        words.append(GeneratorWord.from_pairs(("eta", n)))
        words.append(GeneratorWord.from_pairs(("nu", n)))
    for a in (1, -1):
        for b in (1, -1):
            words.append(GeneratorWord.from_pairs(("eta", a), ("nu", b)))
    words.append(GeneratorWord.from_pairs(("eta", 2), ("nu", -1)))
    words.append(GeneratorWord.from_pairs(("eta", -2), ("nu", 1)))
    return words


def random_word(rng: np.random.Generator, max_total: int = 5) -> GeneratorWord:
    """Random word with total size sum(|exponent|) at most `max_total`."""
    budget = int(rng.integers(0, max_total + 1))
    letters = []
    while budget > 0:
        e = int(rng.integers(1, budget + 1))
        if rng.integers(2):
            e = -e
        gen = "eta" if rng.integers(2) else "nu"
        letters.append((gen, e))
        budget -= abs(e)
    return GeneratorWord.from_pairs(*letters)


def _word_class_line(name, word, expected_euler, expected_p1, claim) -> CheckLine:
    cls = classify_word(word)
    computed = f"chi={cls.euler}, p1={cls.pontryagin}, phi={cls.phi}"
    expected = f"chi={expected_euler}, p1={expected_p1}"
    ok = cls.euler == expected_euler and cls.pontryagin == expected_p1
    return CheckLine(name, claim, computed, expected, ok)


def run_verification(
    seed: int = DEFAULT_SEED,
    resolution: tuple[int, int, int] | None = None,
) -> VerificationReport:
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    report = VerificationReport(seed=seed, resolution=resolution)
    lines = report.lines

    eta = GeneratorWord.from_pairs(("eta", 1))
    nu = GeneratorWord.from_pairs(("nu", 1))

    cls_eta = classify_word(eta)
    cls_nu = classify_word(nu)
    lines.append(CheckLine(
        "phi-eta", "Phi(eta) = (1, 0)", str(cls_eta.phi), "(1, 0)",
        cls_eta.phi == (1, 0),
    ))
    lines.append(CheckLine(
        "phi-nu", "Phi(nu) = (0, 1)", str(cls_nu.phi), "(0, 1)",
        cls_nu.phi == (0, 1),
    ))
    lines.append(CheckLine(
        "euler-eta", "chi(eta) = 1", str(cls_eta.euler), "1", cls_eta.euler == 1,
    ))
    lines.append(CheckLine(
        "p1-eta", "p1(eta) = -2", str(cls_eta.pontryagin), "-2",
        cls_eta.pontryagin == -2,
    ))
    lines.append(CheckLine(
        "euler-nu", "chi(nu) = 0", str(cls_nu.euler), "0", cls_nu.euler == 0,
    ))
    lines.append(CheckLine(
        "p1-nu", "p1(nu) = -4", str(cls_nu.pontryagin), "-4",
        cls_nu.pontryagin == -4,
    ))
    lines.append(_word_class_line(
        "tangent-class", tangent_bundle_word(), 2, 0,
        "the word eta^2 * nu^-1 classifies to chi = 2, p1 = 0",
    ))

    # additivity of the lattice coordinates over random word pairs
    bad = 0
    for _ in range(HOMOMORPHISM_PAIRS):
        w1, w2 = random_word(rng), random_word(rng)
        lhs = classify_word(w1 * w2).phi
        rhs = tuple(x + y for x, y in zip(classify_word(w1).phi, classify_word(w2).phi))
        bad += lhs != rhs
    lines.append(CheckLine(
        "phi-additivity", "Phi(w1 * w2) = Phi(w1) + Phi(w2)",
        f"{HOMOMORPHISM_PAIRS - bad}/{HOMOMORPHISM_PAIRS} pairs additive",
        f"{HOMOMORPHISM_PAIRS}/{HOMOMORPHISM_PAIRS}", bad == 0,
    ))

    # double cover factorization roundtrip
    p = random_unit(rng, (ROUNDTRIP_PAIRS,))
    r = random_unit(rng, (ROUNDTRIP_PAIRS,))
    m = double_cover(p, r)
    try:
        q1, q2 = isoclinic_decompose(m)
        worst = float(np.max(np.abs(double_cover(q1, q2) - m)))
        lines.append(CheckLine(
            "double-cover-roundtrip",
            "factor and rebuild 10^4 random SO(4) matrices",
            f"max residual {worst:.2e}", f"<= {ROUNDTRIP_TOL:g}",
            worst <= ROUNDTRIP_TOL,
        ))
    except NumericalFailure as exc:
        lines.append(CheckLine(
            "double-cover-roundtrip",
            "factor and rebuild 10^4 random SO(4) matrices",
            "error", f"<= {ROUNDTRIP_TOL:g}", False, note=str(exc),
        ))

    # numeric degree additivity over random symbolic pairs
    worst_resid = 0.0
    mismatches = 0
    note = ""
    ok = True
    try:
        for _ in range(ADDITIVITY_PAIRS):
            f = PowerMap(int(rng.integers(-3, 4)))
            g = PowerMap(int(rng.integers(-3, 4)))
            res = degree_integral(ProductMap((f, g)), resolution=resolution)
            worst_resid = max(worst_resid, res.residual)
            mismatches += res.degree != degree_exact(f).degree + degree_exact(g).degree
        ok = mismatches == 0
        computed = (
            f"{ADDITIVITY_PAIRS - mismatches}/{ADDITIVITY_PAIRS} exact, "
            f"worst residual {worst_resid:.3f}"
        )
    except NumericalFailure as exc:
        ok, computed, note = False, "error", str(exc)
    lines.append(CheckLine(
        "degree-additivity", "deg(a * b) = deg(a) + deg(b)",
        computed, f"{ADDITIVITY_PAIRS}/{ADDITIVITY_PAIRS} exact", ok, note=note,
    ))

    # numeric lift + integral degrees against the exact classification
    words = classifier_agreement_words()
    agree = 0
    note = ""
    ok = True
    try:
        for w in words:
            numeric = classify_numeric(WordMap(w), resolution=resolution)
            agree += numeric == classify_word(w)
        ok = agree == len(words)
        computed = f"{agree}/{len(words)} words agree"
    except NumericalFailure as exc:
        ok, computed, note = False, "error", str(exc)
    lines.append(CheckLine(
        "numeric-symbolic-agreement",
        "numeric classification of every word of size <= 3 matches the exact one",
        computed, f"{len(words)}/{len(words)}", ok, note=note,
    ))

    report.duration = time.perf_counter() - started
    return report

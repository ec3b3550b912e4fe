"""Clutching words: exact symbolic maps from the 3-sphere into SO(4).

A word is a finite product of powers of two generators,

- ``eta``: q acting by left multiplication, p -> q*p;
- ``nu``:  q acting by conjugation, p -> q*p*q^-1;

stored in normal form (adjacent letters with the same generator merged, zero
exponents dropped).  The pair of exponent sums (sum over eta letters, sum over
nu letters) is a complete homotopy invariant of the word, which is what makes
the symbolic route exact.

Text form: ``eta^2 * nu^-1`` -- whitespace-insensitive, ``^`` takes an integer
exponent (default 1), ``*`` separates letters in evaluation order.  The empty
word prints as ``1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import WordParseError


class Generator(Enum):
    ETA = "eta"
    NU = "nu"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Letter:
    gen: Generator
    exp: int

    def __str__(self) -> str:
        return self.gen.value if self.exp == 1 else f"{self.gen.value}^{self.exp}"


def _normalize(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for letter in letters:
        if letter.exp == 0:
            continue
        if out and out[-1].gen is letter.gen:
            merged = out[-1].exp + letter.exp
            out.pop()
            if merged != 0:
                out.append(Letter(letter.gen, merged))
        else:
            out.append(Letter(letter.gen, int(letter.exp)))
    return tuple(out)


@dataclass(frozen=True)
class GeneratorWord:
    """Normal-form word in the generators eta, nu and their pointwise inverses."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _normalize(self.letters))

    @classmethod
    def from_pairs(cls, *pairs: tuple[str, int]) -> "GeneratorWord":
        return cls(tuple(Letter(Generator(g), int(e)) for g, e in pairs))

    def __mul__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.letters + other.letters)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(tuple(Letter(l.gen, -l.exp) for l in reversed(self.letters)))

    def exponent_sums(self) -> tuple[int, int]:
        """(sum of eta exponents, sum of nu exponents); additive under products."""
        a = sum(l.exp for l in self.letters if l.gen is Generator.ETA)
        b = sum(l.exp for l in self.letters if l.gen is Generator.NU)
        return a, b

    def letter_total(self) -> int:
        """Total size sum(|exponent|) of the normal form."""
        return sum(abs(l.exp) for l in self.letters)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " * ".join(str(l) for l in self.letters)


EMPTY_WORD = GeneratorWord()

_LETTER_RE = re.compile(r"^(eta|nu)(?:\^([+-]?\d+))?$")


def parse_word(text: str) -> GeneratorWord:
    """Parse the compact text form; '' and '1' both mean the empty word."""
    if not isinstance(text, str):
        raise WordParseError(f"expected a string, got {type(text).__name__}")
    stripped = "".join(text.split())
    if stripped in ("", "1"):
        return EMPTY_WORD
    letters = []
    for chunk in stripped.split("*"):
        m = _LETTER_RE.match(chunk)
        if not m:
            raise WordParseError(
                f"cannot parse {chunk!r}: expected eta or nu with an optional ^integer"
            )
        exp = int(m.group(2)) if m.group(2) is not None else 1
        letters.append(Letter(Generator(m.group(1)), exp))
    return GeneratorWord(tuple(letters))


def format_word(word: GeneratorWord) -> str:
    return str(word)

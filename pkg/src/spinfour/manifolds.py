"""Parallelizability of closed orientable 4-manifolds from characteristic data.

The decision needs three numbers: whether the second Stiefel-Whitney class
vanishes, the first Pontryagin number, and the Euler characteristic.  A closed
orientable 4-manifold is parallelizable exactly when all three vanish.  When
they do not, and the manifold is spin, the failure is measured by the integer
pair (d1, d2) solving

    d1 - d2 = euler,        d1 + d2 = -p1 / 2,

the degrees of the two lift components of the framing change-of-basis map over
the last 4-handle; the map is null-homotopic iff both degrees vanish.

Characteristic data can be entered directly or derived from an intersection
form Q on second homology: euler = 2 - 2*b1 + rank(Q), p1 = 3*signature(Q),
and (for simply connected manifolds) w2 = 0 iff Q has even diagonal.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import ManifoldInputError, ObstructionError

__all__ = [
    "Provenance",
    "ManifoldData",
    "IntersectionFormInput",
    "UnimodularityWarning",
    "characteristic_from_form",
    "ParallelizabilityDecision",
    "is_parallelizable",
    "obstruction_degrees",
    "catalog",
    "catalog_entry",
    "load_manifolds",
    "hyperbolic_form",
    "e8_form",
]


class Provenance(Enum):
    DIRECT = "direct"
    FROM_FORM = "from_form"


@dataclass(frozen=True)
class ManifoldData:
    """Characteristic data of a closed orientable 4-manifold."""

    name: str
    w2_zero: bool
    p1: int
    euler: int
    provenance: Provenance = Provenance.DIRECT


@dataclass(frozen=True)
class IntersectionFormInput:
    """Symmetric integer intersection form plus the first Betti number.

    `w2_zero_override` must be supplied when b1 > 0: evenness of the form
    certifies a vanishing w2 only in the simply connected case, and guessing
    would silently produce wrong verdicts.
    """

    name: str
    form: tuple[tuple[int, ...], ...]
    b1: int = 0
    w2_zero_override: bool | None = None

    def matrix(self) -> np.ndarray:
        q = np.array(self.form, dtype=np.int64)
        if q.size == 0:
            return q.reshape(0, 0)
        return q


class UnimodularityWarning(UserWarning):
    pass


def hyperbolic_form(copies: int = 1) -> tuple[tuple[int, ...], ...]:
    """Orthogonal sum of `copies` hyperbolic planes [[0,1],[1,0]]."""
    n = 2 * copies
    q = np.zeros((n, n), dtype=int)
    for c in range(copies):
        q[2 * c, 2 * c + 1] = q[2 * c + 1, 2 * c] = 1
    return tuple(tuple(int(v) for v in row) for row in q)


_E8_CARTAN = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)


def e8_form(sign: int = 1) -> tuple[tuple[int, ...], ...]:
    """The even unimodular rank-8 form (Cartan matrix of E8), times +-1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return tuple(tuple(sign * v for v in row) for row in _E8_CARTAN)


def _direct_sum(*blocks) -> tuple[tuple[int, ...], ...]:
    mats = [np.array(b, dtype=int).reshape(len(b), -1) if len(b) else
            np.zeros((0, 0), dtype=int) for b in blocks]
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=int)
    at = 0
    for m in mats:
        k = m.shape[0]
        out[at:at + k, at:at + k] = m
        at += k
    return tuple(tuple(int(v) for v in row) for row in out)


def _signature_float(q: np.ndarray, zero_tol: float = 1e-9) -> tuple[int, int, int]:
    if q.shape[0] == 0:
        return 0, 0, 0
    eigs = np.linalg.eigvalsh(q.astype(float))
    pos = int(np.sum(eigs > zero_tol))
    neg = int(np.sum(eigs < -zero_tol))
    return pos, neg, q.shape[0] - pos - neg


def _signature_exact(q: np.ndarray) -> tuple[int, int, int]:
    """Inertia by symmetric congruence reduction over exact rationals."""
    n = q.shape[0]
    a = [[Fraction(int(q[i, j])) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0
    rows = list(range(n))
    while rows:
        # find a nonzero diagonal pivot, manufacturing one from an
        # off-diagonal entry if the whole diagonal vanished
        pivot = next((i for i in rows if a[i][i] != 0), None)
        if pivot is None:
            off = next(
                ((i, j) for i in rows for j in rows if j != i and a[i][j] != 0),
                None,
            )
            if off is None:
                zero += len(rows)
                break
            i, j = off
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            pivot = i
        d = a[pivot][pivot]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rows.remove(pivot)
        for i in rows:
            if a[i][pivot] != 0:
                factor = a[i][pivot] / d
                for k in range(n):
                    a[i][k] -= factor * a[pivot][k]
                for k in range(n):
                    a[k][i] -= factor * a[k][pivot]
    return pos, neg, zero


def _det_exact(q: np.ndarray) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = q.shape[0]
    if n == 0:
        return 1
    m = [[int(v) for v in row] for row in q]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def signature(q: np.ndarray) -> int:
    """Signature of a symmetric integer matrix, computed two independent ways."""
    q = np.asarray(q)
    approx = _signature_float(q)
    exact = _signature_exact(q)
    if approx != exact:
        raise ArithmeticError(
            f"signature cross-check failed: eigenvalue inertia {approx} "
            f"vs congruence inertia {exact}"
        )
    pos, neg, _ = exact
    return pos - neg


def characteristic_from_form(inp: IntersectionFormInput) -> ManifoldData:
    """Derive (w2, p1, euler) from an intersection form and first Betti number.

    euler comes from the Betti numbers (Poincare duality fills in b3 = b1 and
    b4 = b0 = 1), p1 from the signature via the factor 3, and w2 from evenness
    of the form when b1 = 0.  Non-unimodular forms only warn: the numbers are
    still well defined, the input is just not a closed-manifold form.
    """
    q = inp.matrix()
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ManifoldInputError(f"{inp.name}: intersection form must be square")
    if not np.array_equal(q, q.T):
        raise ManifoldInputError(f"{inp.name}: intersection form must be symmetric")
    if inp.b1 < 0:
        raise ManifoldInputError(f"{inp.name}: b1 must be nonnegative")
    if q.shape[0] > 0 and abs(_det_exact(q)) != 1:
        warnings.warn(
            f"{inp.name}: form determinant {_det_exact(q)} is not +-1; "
            "not the intersection form of a closed oriented 4-manifold",
            UnimodularityWarning,
            stacklevel=2,
        )
    euler = 2 - 2 * inp.b1 + q.shape[0]
    p1 = 3 * signature(q)
    if inp.b1 == 0:
        derived = bool(q.shape[0] == 0 or np.all(np.diagonal(q) % 2 == 0))
        if inp.w2_zero_override is not None and inp.w2_zero_override != derived:
            raise ManifoldInputError(
                f"{inp.name}: w2_zero override {inp.w2_zero_override} contradicts "
                f"the form (even diagonal: {derived})"
            )
        w2_zero = derived
    else:
        if inp.w2_zero_override is None:
            raise ManifoldInputError(
                f"{inp.name}: w2 not derivable from form alone when b1 > 0; "
                "set w2_zero explicitly"
            )
        w2_zero = bool(inp.w2_zero_override)
    return ManifoldData(inp.name, w2_zero, int(p1), int(euler), Provenance.FROM_FORM)


@dataclass(frozen=True)
class ParallelizabilityDecision:
    manifold: ManifoldData
    w2_zero_ok: bool
    p1_ok: bool
    euler_ok: bool

    @property
    def parallelizable(self) -> bool:
        return self.w2_zero_ok and self.p1_ok and self.euler_ok

    @property
    def failing(self) -> tuple[str, ...]:
        out = []
        if not self.w2_zero_ok:
            out.append("w2")
        if not self.p1_ok:
            out.append("p1")
        if not self.euler_ok:
            out.append("euler")
        return tuple(out)


def is_parallelizable(m: ManifoldData) -> ParallelizabilityDecision:
    """Parallelizable iff w2 vanishes, p1 = 0, and euler = 0."""
    return ParallelizabilityDecision(
        m, bool(m.w2_zero), m.p1 == 0, m.euler == 0
    )


def obstruction_degrees(m: ManifoldData) -> tuple[int, int]:
    """Lift degrees (d1, d2) of the framing obstruction over the last 4-handle.

    Solves d1 - d2 = euler, d1 + d2 = -p1/2.  (0, 0) iff the manifold is
    parallelizable.  Requires w2 = 0 (otherwise no framing over the 2-skeleton
    exists to extend) and integrality of the solution.
    """
    if not m.w2_zero:
        raise ObstructionError(
            f"{m.name}: framing over 2-skeleton unavailable (w2 nonzero)"
        )
    if m.p1 % 2 != 0:
        raise ObstructionError(f"{m.name}: no integral solution (p1 parity)")
    half = -m.p1 // 2
    if (m.euler + half) % 2 != 0:
        raise ObstructionError(f"{m.name}: no integral solution (parity mismatch)")
    d1 = (m.euler + half) // 2
    d2 = (half - m.euler) // 2
    return d1, d2


def catalog() -> list[ManifoldData]:
    """Built-in characteristic data for the standard closed 4-manifolds."""
    entries = [
        IntersectionFormInput("S4", ()),
        IntersectionFormInput("S1xS3", (), b1=1, w2_zero_override=True),
        IntersectionFormInput("T4", hyperbolic_form(3), b1=4, w2_zero_override=True),
        IntersectionFormInput("S2xS2", hyperbolic_form(1)),
        IntersectionFormInput("CP2", ((1,),)),
        IntersectionFormInput(
            "K3", _direct_sum(e8_form(-1), e8_form(-1), hyperbolic_form(3))
        ),
    ]
    return [characteristic_from_form(e) for e in entries]


def catalog_entry(name: str) -> ManifoldData:
    for m in catalog():
        if m.name.lower() == name.lower():
            return m
    known = ", ".join(m.name for m in catalog())
    raise KeyError(f"unknown catalog manifold {name!r}; known: {known}")


_DIRECT_FIELDS = {"name", "w2_zero", "p1", "euler"}
_FORM_FIELDS = {"name", "Q", "b1", "w2_zero"}


def _record_to_manifold(record: dict, index: int) -> ManifoldData:
    if not isinstance(record, dict):
        raise ManifoldInputError(f"record {index}: expected an object")
    name = record.get("name")
    if not isinstance(name, str) or not name:
        raise ManifoldInputError(f"record {index}: missing or empty 'name'")
    if "Q" in record:
        unknown = set(record) - _FORM_FIELDS
        if unknown:
            raise ManifoldInputError(
                f"record {index} ({name}): unknown field {sorted(unknown)[0]!r}"
            )
        q = record["Q"]
        if not isinstance(q, list) or not all(isinstance(r, list) for r in q):
            raise ManifoldInputError(
                f"record {index} ({name}): 'Q' must be a list of rows"
            )
        inp = IntersectionFormInput(
            name,
            tuple(tuple(int(v) for v in row) for row in q),
            b1=int(record.get("b1", 0)),
            w2_zero_override=record.get("w2_zero"),
        )
        return characteristic_from_form(inp)
    unknown = set(record) - _DIRECT_FIELDS
    if unknown:
        raise ManifoldInputError(
            f"record {index} ({name}): unknown field {sorted(unknown)[0]!r}"
        )
    missing = _DIRECT_FIELDS - set(record)
    if missing:
        raise ManifoldInputError(
            f"record {index} ({name}): missing field {sorted(missing)[0]!r}"
        )
    return ManifoldData(
        name, bool(record["w2_zero"]), int(record["p1"]), int(record["euler"])
    )


def load_manifolds(source) -> list[ManifoldData]:
    """Read manifold records from a JSON document (path, file object, or text).

    The document is a list of records, or an object with a single "manifolds"
    list.  Each record carries "name" plus either direct data
    {"w2_zero", "p1", "euler"} or form data {"Q", "b1", optional "w2_zero"}.
    Unknown fields are rejected by name.
    """
    if hasattr(source, "read"):
        doc = json.load(source)
    else:
        text = str(source)
        if text.lstrip().startswith(("[", "{")):
            doc = json.loads(text)
        else:
            with open(text, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
    if isinstance(doc, dict):
        unknown = set(doc) - {"manifolds"}
        if unknown:
            raise ManifoldInputError(f"unknown field {sorted(unknown)[0]!r}")
        doc = doc.get("manifolds")
    if not isinstance(doc, list):
        raise ManifoldInputError("expected a list of manifold records")
    return [_record_to_manifold(rec, i) for i, rec in enumerate(doc)]

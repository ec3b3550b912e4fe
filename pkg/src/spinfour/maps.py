"""Maps from the 3-sphere into SO(4), and their lifts to quaternion pairs.

Two representations share one interface:

- `WordMap`: an exact clutching word; evaluation multiplies the generator
  matrices letter by letter (left multiplication for ``eta``, conjugation for
  ``nu``, group powers for the exponents).
- `BlackBoxMap`: any vectorized evaluator (N, 4) -> (N, 4, 4); every output
  batch is validated against the SO(4) contract, and failures name the point.

Both lift through the double cover to a pair of self-maps of the sphere.
Word maps lift symbolically: ``eta`` contributes (q -> q^e, constant 1) per
letter, ``nu`` contributes (q -> q^e, q -> q^e), and the componentwise products
collapse to single power maps whose degrees are plain integers.  Black boxes
lift numerically by factoring the matrix at every node of a Hopf grid and
propagating the pair's sign ambiguity across neighboring nodes.
"""

from __future__ import annotations

import numpy as np

from .degree import CallableMap, PowerMap
from .errors import GridCoarseError, ValidationError
from .hopf import HopfGrid, as_grid
from .quaternions import QONE, qconj, qpow, require_unit
from .rotations import _lmat, _rmat, double_cover, is_so4, isoclinic_decompose
from .words import Generator, GeneratorWord, parse_word

__all__ = [
    "MapToSO4",
    "WordMap",
    "BlackBoxMap",
    "as_so4_map",
    "evaluate",
    "pointwise_product",
    "pointwise_inverse",
    "LiftedPair",
    "lift_word",
    "lift_numeric",
    "CONTINUITY_THRESHOLD",
]

#: largest accepted chordal jump of aligned lift values between adjacent grid
#: nodes, as a fraction of the antipodal separation 2.0 (so 0.5 -> 1.0 raw)
CONTINUITY_THRESHOLD = 0.5
LIFT_COVER_TOL = 1e-7
GLOBAL_SIGN_THRESHOLD = 1e-4


class MapToSO4:
    """Common interface: `matrices(points)` -> (N, 4, 4), `at(q)` -> (4, 4)."""

    word: GeneratorWord | None = None

    def matrices(self, points: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def at(self, q: np.ndarray) -> np.ndarray:
        q = require_unit(np.asarray(q, dtype=float))
        return self.matrices(q[None, :])[0]


class WordMap(MapToSO4):
    def __init__(self, word: GeneratorWord):
        self.word = word

    def matrices(self, points: np.ndarray) -> np.ndarray:
        # qpow outputs are unit by construction, so the letter loop builds the
        # generator matrices without re-validating each power
        p = require_unit(np.asarray(points, dtype=float))
        out = None
        for letter in self.word.letters:
            qe = qpow(p, letter.exp)
            mat = _lmat(qe)
            if letter.gen is Generator.NU:
                mat = mat @ _rmat(qconj(qe))
            out = mat if out is None else out @ mat
        if out is None:
            return np.broadcast_to(np.eye(4), p.shape[:-1] + (4, 4)).copy()
        return out

    def __repr__(self) -> str:
        return f"WordMap({self.word})"


class BlackBoxMap(MapToSO4):
    def __init__(self, fn, label: str = "black-box"):
        self.fn = fn
        self.label = label

    def matrices(self, points: np.ndarray) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        out = np.asarray(self.fn(p), dtype=float)
        if out.shape != p.shape[:-1] + (4, 4):
            raise ValidationError(
                f"{self.label} returned shape {out.shape}, expected {p.shape[:-1] + (4, 4)}"
            )
        ok = is_so4(out)
        if not np.all(ok):
            bad = p.reshape(-1, 4)[~ok.reshape(-1)][0]
            raise ValidationError(
                f"{self.label} output failed SO(4) validation at q = {bad.tolist()}"
            )
        return out

    def __repr__(self) -> str:
        return f"BlackBoxMap({self.label})"


def as_so4_map(obj) -> MapToSO4:
    """Coerce a word, word text, MapToSO4, or bare matrix evaluator."""
    if isinstance(obj, MapToSO4):
        return obj
    if isinstance(obj, GeneratorWord):
        return WordMap(obj)
    if isinstance(obj, str):
        return WordMap(parse_word(obj))
    if callable(obj):
        return BlackBoxMap(obj)
    raise TypeError(f"not a map into SO(4): {obj!r}")


def evaluate(m, q: np.ndarray) -> np.ndarray:
    """Value of the map at one unit quaternion (or a batch of them)."""
    m = as_so4_map(m)
    q = np.asarray(q, dtype=float)
    if q.ndim == 1:
        return m.at(q)
    return m.matrices(require_unit(q))


def pointwise_product(m1, m2) -> MapToSO4:
    """The map q -> m1(q) @ m2(q); stays symbolic when both are words."""
    m1, m2 = as_so4_map(m1), as_so4_map(m2)
    if isinstance(m1, WordMap) and isinstance(m2, WordMap):
        return WordMap(m1.word * m2.word)
    return BlackBoxMap(
        lambda p: m1.matrices(p) @ m2.matrices(p), "pointwise product"
    )


def pointwise_inverse(m) -> MapToSO4:
    """The map q -> m(q)^-1 (the transpose: inputs are validated orthogonal)."""
    m = as_so4_map(m)
    if isinstance(m, WordMap):
        return WordMap(m.word.inverse())
    return BlackBoxMap(
        lambda p: np.swapaxes(m.matrices(p), -1, -2), "pointwise inverse"
    )


class LiftedPair:
    """Pair of sphere self-maps covering a map into SO(4).

    The defining property, checked by `cover_deviation`, is that
    double_cover(f1(q), f2(q)) reproduces the underlying matrix at every q.
    """

    def __init__(self, f1, f2, pair_evaluate, source: MapToSO4):
        self.f1 = f1
        self.f2 = f2
        self._pair_evaluate = pair_evaluate
        self.source = source

    def pair_values(self, points: np.ndarray) -> np.ndarray:
        """Both components at once: (N, 4) -> (N, 2, 4)."""
        return self._pair_evaluate(np.asarray(points, dtype=float))

    def cover_deviation(self, points: np.ndarray) -> float:
        """max |double_cover(f1, f2) - source| over the given points."""
        pts = require_unit(np.asarray(points, dtype=float))
        pair = self.pair_values(pts)
        rebuilt = double_cover(pair[..., 0, :], pair[..., 1, :])
        return float(np.max(np.abs(rebuilt - self.source.matrices(pts))))


def lift_word(word) -> LiftedPair:
    """Symbolic lift of a clutching word.

    Letter substitutions eta^e -> (q^e, 1) and nu^e -> (q^e, q^e) multiply out
    to single powers of q: with exponent sums (a, b) the pair is
    (q -> q^(a+b), q -> q^b).
    """
    if isinstance(word, str):
        word = parse_word(word)
    a, b = word.exponent_sums()
    f1, f2 = PowerMap(a + b), PowerMap(b)

    def pair_evaluate(points: np.ndarray) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        return np.stack([f1.evaluate(p), f2.evaluate(p)], axis=-2)

    return LiftedPair(f1, f2, pair_evaluate, WordMap(word))


def _align_signs(table: np.ndarray) -> np.ndarray:
    """Choose per-node signs making the pair table continuous along a spanning
    tree of the grid graph: down the first xi1 line, across the first xi2
    plane, then through the eta slabs.  Each step is vectorized and picks the
    sign closer to the already-fixed neighbor."""
    n1, n2, neta = table.shape[:3]
    sign = np.ones((n1, n2, neta))

    def closer_sign(fixed, free):
        return np.where(np.sum(free * fixed, axis=(-2, -1)) < 0.0, -1.0, 1.0)

    for i in range(1, n1):
        sign[i, 0, 0] = closer_sign(
            table[i - 1, 0, 0] * sign[i - 1, 0, 0], table[i, 0, 0]
        )
    for j in range(1, n2):
        sign[:, j, 0] = closer_sign(
            table[:, j - 1, 0] * sign[:, j - 1, 0, None, None], table[:, j, 0]
        )
    for k in range(1, neta):
        sign[:, :, k] = closer_sign(
            table[:, :, k - 1] * sign[:, :, k - 1][..., None, None], table[:, :, k]
        )
    return sign


def _worst_edge_jump(table: np.ndarray, grid: HopfGrid) -> float:
    """Largest chordal jump of either component across any adjacency edge
    (coordinate neighbors, wrapping around the two circle axes)."""
    worst = 0.0
    for axis in range(3):
        d = np.linalg.norm(np.roll(table, -1, axis=axis) - table, axis=-1)
        d = d.max(axis=-1)
        if not grid.axis_wraps(axis):
            d = np.moveaxis(d, axis, 0)[:-1]
        if d.size:
            worst = max(worst, float(d.max()))
    return worst


class NumericLift(LiftedPair):
    """Lift of a black-box SO(4) map via gridwise isoclinic factorization.

    Build phase: factor the matrix at every grid node (each factorization has
    its own arbitrary sign), then propagate one consistent sign choice across
    the grid and verify continuity over every adjacency edge.  Off-grid
    queries factor at the query point and copy the sign of the nearest node,
    which is what makes finite differencing through the lift well defined.
    """

    def __init__(self, source: MapToSO4, grid: HopfGrid | None = None,
                 continuity_threshold: float = CONTINUITY_THRESHOLD):
        self.grid = as_grid(grid)
        self._threshold = 2.0 * continuity_threshold  # fraction -> raw chordal
        # the MapToSO4 layer already validates matrix outputs
        q1, q2 = isoclinic_decompose(source.matrices(self.grid.nodes), validate=False)
        table = self.grid.grid_values(np.stack([q1, q2], axis=-2))
        sign = _align_signs(table)
        table = table * sign[..., None, None]
        worst = _worst_edge_jump(table, self.grid)
        if worst > self._threshold:
            raise GridCoarseError(
                f"grid too coarse: adjacent lift values differ by {worst:.3f} "
                f"(threshold {self._threshold:.3f}); refine the grid"
            )
        self._table = table
        self._flat_table = table.reshape(-1, 2, 4)
        super().__init__(
            CallableMap(lambda p: self.pair_values(p)[..., 0, :], "lift component 1"),
            CallableMap(lambda p: self.pair_values(p)[..., 1, :], "lift component 2"),
            self._matched_pairs,
            source,
        )
        self._fix_global_sign()

    def _matched_pairs(self, points: np.ndarray) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        q1, q2 = isoclinic_decompose(self.source.matrices(p), validate=False)
        pair = np.stack([q1, q2], axis=-2)
        i, j, k = self.grid.nearest_index(p)
        ref = self._table[i, j, k]
        # the sign closer to the reference maximizes the inner product
        sign = np.where(np.sum(pair * ref, axis=(-2, -1)) < 0.0, -1.0, 1.0)
        return pair * sign[..., None, None]

    def _fix_global_sign(self) -> None:
        # prefer a positive leading component of f1 at the base point q = 1,
        # falling back to the first grid node where the rule is decisive
        lead = float(self._matched_pairs(QONE[None, :])[0, 0, 0])
        if abs(lead) <= GLOBAL_SIGN_THRESHOLD:
            decisive = np.abs(self._flat_table[:, 0, 0]) > GLOBAL_SIGN_THRESHOLD
            if not np.any(decisive):
                return
            lead = float(self._flat_table[np.argmax(decisive), 0, 0])
        if lead < 0.0:
            self._table *= -1.0
            self._flat_table = self._table.reshape(-1, 2, 4)

    def grid_pair_values(self) -> np.ndarray:
        """The aligned (n1, n2, neta, 2, 4) table of lift values at the nodes."""
        return self._table.copy()


def lift_numeric(m, grid: HopfGrid | None = None,
                 continuity_threshold: float = CONTINUITY_THRESHOLD) -> NumericLift:
    """Numeric lift of any map into SO(4) over a Hopf sample grid."""
    return NumericLift(as_so4_map(m), grid, continuity_threshold)

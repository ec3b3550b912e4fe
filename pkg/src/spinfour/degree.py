"""Topological degree of smooth self-maps of the unit 3-sphere.

Three routes to the same integer:

- `degree_exact`: for symbolic maps (powers q -> q^n and pointwise products of
  powers) the degree is the exponent sum, read off with no floating point.
- `degree_integral`: quadrature of the Jacobian determinant over a Hopf grid,
  normalized by vol(S^3) = 2*pi^2.  Derivatives come from central differences
  along the global left-translation frame (q*i, q*j, q*k), and determinants are
  taken between the source frame at q and the same frame field at f(q), so one
  orientation convention covers source and target.
- `degree_preimage`: Newton's method in stereographic charts from a batch of
  low-discrepancy seeds; the degree is the signed count of distinct preimages
  of a generic target value.

Raw estimates further than 0.25 from every integer are refused rather than
rounded (`ResolutionError`), since downstream classification consumes these
integers with no further checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .errors import NonRegularValueError, ResolutionError, ValidationError
from .hopf import HopfGrid, as_grid
from .quaternions import QI, QJ, QK, qmul, qnormalize, qpow, require_unit

__all__ = [
    "PowerMap",
    "ProductMap",
    "CallableMap",
    "as_sphere_map",
    "product_map",
    "DegreeMethod",
    "DegreeResult",
    "degree_exact",
    "degree_integral",
    "degree_integral_multi",
    "degree_preimage",
    "find_preimages",
    "DEFAULT_REGULAR_VALUE",
    "DEFAULT_SEED_COUNT",
]

ROUNDING_BAND = 0.25
FD_STEP = 1e-5
DEFAULT_SEED_COUNT = 512
#: generic target for preimage counting; kept away from poles and symmetry axes
DEFAULT_REGULAR_VALUE = qnormalize(np.array([0.3, 0.5, -0.2, 0.79]))
JACOBIAN_FLOOR = 1e-6
DEDUP_DISTANCE = 1e-6
UNIT_OUTPUT_ATOL = 1e-9


class PowerMap:
    """Symbolic self-map q -> q^n."""

    def __init__(self, n: int):
        self.n = int(n)

    @property
    def exact_degree(self) -> int:
        return self.n

    def evaluate(self, p: np.ndarray) -> np.ndarray:
        return qpow(p, self.n)

    def __repr__(self) -> str:
        return f"PowerMap({self.n})"

    def __str__(self) -> str:
        return f"q^{self.n}"

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerMap) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("PowerMap", self.n))


class ProductMap:
    """Pointwise product of symbolic factors, evaluated factor by factor.

    Evaluation multiplies the factor values with `qmul` at each point; no
    symbolic simplification happens here, so integrating a ProductMap is an
    honest numerical check of degree additivity rather than a tautology.
    """

    def __init__(self, factors):
        self.factors = tuple(factors)
        if not all(hasattr(f, "exact_degree") for f in self.factors):
            raise TypeError("ProductMap factors must carry exact degrees")

    @property
    def exact_degree(self) -> int:
        return sum(f.exact_degree for f in self.factors)

    def evaluate(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        out = np.broadcast_to(np.array([1.0, 0.0, 0.0, 0.0]), p.shape).copy()
        for f in self.factors:
            out = qmul(out, f.evaluate(p))
        return out

    def __repr__(self) -> str:
        return f"ProductMap({list(self.factors)!r})"

    def __str__(self) -> str:
        return " . ".join(str(f) for f in self.factors) if self.factors else "q^0"


class CallableMap:
    """Black-box self-map wrapping a vectorized evaluator (N, 4) -> (N, 4)."""

    def __init__(self, fn, label: str = "black-box"):
        self.fn = fn
        self.label = label

    def evaluate(self, p: np.ndarray) -> np.ndarray:
        return self.fn(np.asarray(p, dtype=float))

    def __repr__(self) -> str:
        return f"CallableMap({self.label})"


def as_sphere_map(obj):
    """Coerce a PowerMap/ProductMap/CallableMap or bare callable."""
    if isinstance(obj, (PowerMap, ProductMap, CallableMap)):
        return obj
    if isinstance(obj, int):
        return PowerMap(obj)
    if callable(obj):
        return CallableMap(obj)
    raise TypeError(f"not a sphere self-map: {obj!r}")


def product_map(f, g):
    """Pointwise product q -> f(q)*g(q)."""
    f, g = as_sphere_map(f), as_sphere_map(g)
    if hasattr(f, "exact_degree") and hasattr(g, "exact_degree"):
        ff = f.factors if isinstance(f, ProductMap) else (f,)
        gg = g.factors if isinstance(g, ProductMap) else (g,)
        return ProductMap(ff + gg)
    return CallableMap(lambda p: qmul(f.evaluate(p), g.evaluate(p)), "pointwise product")


class DegreeMethod(Enum):
    EXACT = "exact"
    INTEGRAL = "integral"
    PREIMAGE = "preimage"


@dataclass(frozen=True)
class DegreeResult:
    degree: int
    method: DegreeMethod
    residual: float
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.residual > ROUNDING_BAND:
            raise ResolutionError(
                f"degree estimate residual {self.residual:.3f} exceeds {ROUNDING_BAND}"
            )


def _frame(q: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # global orthonormal tangent frame by left translation of (i, j, k)
    return qmul(q, QI), qmul(q, QJ), qmul(q, QK)


def _det3(m: np.ndarray) -> np.ndarray:
    return (
        m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
        - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
        + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0])
    )


def _check_unit_outputs(values: np.ndarray, what: str) -> None:
    dev = np.abs(np.linalg.norm(values, axis=-1) - 1.0)
    worst = float(np.max(dev)) if dev.size else 0.0
    if worst > UNIT_OUTPUT_ATOL:
        raise ValidationError(
            f"{what} returned non-unit values (worst norm deviation {worst:.3e})"
        )


def _round_with_band(raw: float, method: DegreeMethod, context: str,
                     warnings: tuple[str, ...] = ()) -> DegreeResult:
    nearest = int(np.rint(raw))
    residual = abs(raw - nearest)
    if residual > ROUNDING_BAND:
        raise ResolutionError(
            f"resolution insufficient: {context} estimate {raw:.4f} is "
            f"{residual:.3f} from the nearest integer (band {ROUNDING_BAND})"
        )
    return DegreeResult(nearest, method, residual, warnings)


def degree_exact(f) -> DegreeResult:
    """Degree of a symbolic map: the exponent sum over its power factors."""
    f = as_sphere_map(f)
    if not hasattr(f, "exact_degree"):
        raise TypeError(f"{f!r} has no symbolic representation; use a numeric method")
    return DegreeResult(int(f.exact_degree), DegreeMethod.EXACT, 0.0)


def _integral_raws(evaluate, n_components: int, grid: HopfGrid, step: float) -> np.ndarray:
    """Raw degree estimates for a map with values (N, n_components, 4).

    One batched evaluation covers the center nodes and all six finite-difference
    offsets, so multi-component maps (numeric lifts) pay for the expensive part
    -- evaluating the underlying SO(4) map and factoring it -- exactly once.
    """
    q = grid.nodes
    n = grid.node_count
    t1, t2, t3 = _frame(q)
    batches = [q]
    for t in (t1, t2, t3):
        batches.append(qnormalize(q + step * t))
        batches.append(qnormalize(q - step * t))
    values = evaluate(np.concatenate(batches, axis=0))
    values = values.reshape(7 * n, n_components, 4)
    _check_unit_outputs(values[:n], "sphere map")
    raws = np.empty(n_components)
    for c in range(n_components):
        fq = values[:n, c]
        u1, u2, u3 = _frame(fq)
        jac = np.empty((n, 3, 3))
        for i in range(3):
            fp = values[(1 + 2 * i) * n:(2 + 2 * i) * n, c]
            fm = values[(2 + 2 * i) * n:(3 + 2 * i) * n, c]
            d = (fp - fm) / (2.0 * step)
            for j, u in enumerate((u1, u2, u3)):
                jac[:, i, j] = np.sum(d * u, axis=-1)
        det = _det3(jac)
        raws[c] = np.sum(det * grid.weights) / (2.0 * np.pi**2)
    return raws


def degree_integral(f, resolution=None, step: float = FD_STEP) -> DegreeResult:
    """Degree by quadrature of the Jacobian determinant over a Hopf grid.

    `resolution` is an (n1, n2, neta) triple or a HopfGrid; None means the
    default 48 x 48 x 24 grid.  Raises ResolutionError when the raw estimate
    falls outside the rounding band.
    """
    f = as_sphere_map(f)
    grid = as_grid(resolution)
    raw = _integral_raws(lambda p: f.evaluate(p)[:, None, :], 1, grid, step)[0]
    return _round_with_band(float(raw), DegreeMethod.INTEGRAL, "degree integral")


def degree_integral_multi(evaluate_components, n_components: int,
                          resolution=None, step: float = FD_STEP) -> list[DegreeResult]:
    """Degrees of several maps sharing one evaluator (N, 4) -> (N, k, 4)."""
    grid = as_grid(resolution)
    raws = _integral_raws(evaluate_components, n_components, grid, step)
    return [
        _round_with_band(float(r), DegreeMethod.INTEGRAL, f"component {c} degree integral")
        for c, r in enumerate(raws)
    ]


def _halton_sphere_seeds(count: int) -> np.ndarray:
    engine = qmc.Halton(d=4, scramble=False, seed=0)
    u = engine.random(count + 1)[1:]  # first Halton point is the origin; skip it
    return qnormalize(ndtri(np.clip(u, 1e-12, 1.0 - 1e-12)))


def _stereo_coords(y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Coordinates of z in the stereographic chart at y (projection from -y).

    Points at or near the antipode -y sit at infinity in this chart; the
    denominator is clamped so they come out merely huge instead of dividing
    by zero.
    """
    ty = np.stack(_frame(y), axis=0)  # (3, 4)
    den = np.maximum(1.0 + z @ y, 1e-30)
    return 2.0 * (z @ ty.T) / den[:, None]


def _chart_step(x: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inverse stereographic map of tangent coordinates u at base points x."""
    t = np.stack(_frame(x), axis=-2)  # (N, 3, 4)
    uu = np.einsum("nk,nkj->nj", u, t)
    n2 = np.sum(u * u, axis=-1, keepdims=True)
    return (4.0 * uu + (4.0 - n2) * x) / (4.0 + n2)


def _jacobian_dets(f, x: np.ndarray, step: float = 1e-6) -> np.ndarray:
    """det(Df) at points x, in the global left-translation frames."""
    fx = f.evaluate(x)
    t = _frame(x)
    u = _frame(fx)
    jac = np.empty(x.shape[:-1] + (3, 3))
    for i in range(3):
        xp = qnormalize(x + step * t[i])
        xm = qnormalize(x - step * t[i])
        d = (f.evaluate(xp) - f.evaluate(xm)) / (2.0 * step)
        for j in range(3):
            jac[..., i, j] = np.sum(d * u[j], axis=-1)
    return _det3(jac)


def find_preimages(
    f,
    y: np.ndarray | None = None,
    seed_count: int = DEFAULT_SEED_COUNT,
    max_iter: int = 60,
    converge_tol: float = 1e-10,
) -> tuple[np.ndarray, tuple[str, ...]]:
    """Distinct solutions of f(x) = y found by multi-seed Newton iteration.

    Newton runs in stereographic charts: unknowns live in the chart at the
    current iterate, residuals in the chart at y.  Singular chart Jacobians
    get a pseudo-inverse step, so seeds attracted to a critical preimage still
    converge instead of being discarded.  Returns the deduplicated solution
    points (k, 4) and a tuple of warnings (nonempty when more than 20% of
    seeds failed to converge).
    """
    f = as_sphere_map(f)
    y = DEFAULT_REGULAR_VALUE if y is None else require_unit(np.asarray(y, dtype=float))
    x = _halton_sphere_seeds(seed_count)
    fd = 1e-6
    for _ in range(max_iter):
        g = _stereo_coords(y, f.evaluate(x))
        jac = np.empty((len(x), 3, 3))
        t = _frame(x)
        for i in range(3):
            xp = qnormalize(x + fd * t[i])
            xm = qnormalize(x - fd * t[i])
            jac[:, :, i] = (_stereo_coords(y, f.evaluate(xp))
                            - _stereo_coords(y, f.evaluate(xm))) / (2.0 * fd)
        du = -np.linalg.pinv(jac, rcond=1e-12) @ g[..., None]
        du = np.clip(du[..., 0], -1.0, 1.0)
        x = qnormalize(_chart_step(x, du))
    residual = np.linalg.norm(_stereo_coords(y, f.evaluate(x)), axis=-1)
    converged = residual < converge_tol
    warnings: tuple[str, ...] = ()
    fail_fraction = 1.0 - float(np.mean(converged))
    if fail_fraction > 0.20:
        warnings = (
            f"Newton failed to converge for {fail_fraction:.0%} of {seed_count} seeds",
        )
    roots: list[np.ndarray] = []
    for r in x[converged]:
        if all(np.linalg.norm(r - kept) >= DEDUP_DISTANCE for kept in roots):
            roots.append(r)
    return np.array(roots).reshape(-1, 4), warnings


def degree_preimage(
    f,
    y: np.ndarray | None = None,
    seed_count: int = DEFAULT_SEED_COUNT,
    max_iter: int = 60,
    converge_tol: float = 1e-10,
) -> DegreeResult:
    """Degree as the signed count of preimages of the value y.

    Runs `find_preimages`, then checks y really is regular a posteriori:
    |det Df| >= 1e-6 at every found preimage, else NonRegularValueError.
    The degree is the sum of Jacobian determinant signs over the preimages.
    """
    f = as_sphere_map(f)
    roots, warnings = find_preimages(f, y, seed_count, max_iter, converge_tol)
    if len(roots) == 0:
        return DegreeResult(0, DegreeMethod.PREIMAGE, 0.0, warnings)
    dets = _jacobian_dets(f, roots)
    if np.any(np.abs(dets) < JACOBIAN_FLOOR):
        raise NonRegularValueError(
            f"y not regular, reseed: |det Df| = {float(np.min(np.abs(dets))):.2e} "
            f"at a preimage (floor {JACOBIAN_FLOOR:g})"
        )
    degree = int(np.sum(np.sign(dets)))
    return DegreeResult(degree, DegreeMethod.PREIMAGE, 0.0, warnings)

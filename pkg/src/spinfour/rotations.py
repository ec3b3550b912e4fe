"""Rotations of R^4 built from quaternion multiplication.

Three families of special-orthogonal 4x4 matrices, acting on `as_vec4`
coordinates, drive everything else in the package:

- `left_mult_matrix(q)`: p -> q*p, the generator ``eta`` of clutching words;
- `conjugation_matrix(q)`: p -> q*p*q^-1, the generator ``nu`` (fixes the real
  axis, so it restricts to a rotation of the imaginary 3-space);
- `double_cover(q1, q2)`: p -> q1*p*q2^-1, the two-to-one covering of SO(4) by
  pairs of unit quaternions, with kernel {(1,1), (-1,-1)}.

`isoclinic_decompose` inverts the covering numerically: it factors an SO(4)
matrix into such a pair, unique up to the simultaneous sign flip.
"""

from __future__ import annotations

import numpy as np

from .errors import DecompositionError, ValidationError
from .quaternions import qconj, qnormalize, require_unit

__all__ = [
    "left_mult_matrix",
    "right_mult_matrix",
    "conjugation_matrix",
    "double_cover",
    "is_so4",
    "require_so4",
    "isoclinic_decompose",
]

SO4_ATOL = 1e-9
ROUNDTRIP_TOL = 1e-8
SIGN_THRESHOLD = 1e-4

# both multiplication matrices permute the same components per row and
# differ only in signs; a single gather + sign multiply builds each one
_MUL_IDX = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
_LEFT_SGN = np.array(
    [[1.0, -1.0, -1.0, -1.0], [1.0, 1.0, -1.0, 1.0],
     [1.0, 1.0, 1.0, -1.0], [1.0, -1.0, 1.0, 1.0]]
)
_RIGHT_SGN = np.array(
    [[1.0, -1.0, -1.0, -1.0], [1.0, 1.0, 1.0, -1.0],
     [1.0, -1.0, 1.0, 1.0], [1.0, 1.0, -1.0, 1.0]]
)


def _lmat(q: np.ndarray) -> np.ndarray:
    return q[..., _MUL_IDX] * _LEFT_SGN


def _rmat(q: np.ndarray) -> np.ndarray:
    return q[..., _MUL_IDX] * _RIGHT_SGN


def left_mult_matrix(q: np.ndarray) -> np.ndarray:
    """Matrix of p -> q*p for unit q.  Broadcasts to (..., 4, 4)."""
    return _lmat(require_unit(q))


def right_mult_matrix(q: np.ndarray) -> np.ndarray:
    """Matrix of p -> p*q for unit q."""
    return _rmat(require_unit(q))


def conjugation_matrix(q: np.ndarray) -> np.ndarray:
    """Matrix of p -> q*p*q^-1.  Fixes (1,0,0,0); equal for q and -q."""
    q = require_unit(q)
    return _lmat(q) @ _rmat(qconj(q))


def double_cover(q1: np.ndarray, q2: np.ndarray) -> np.ndarray:
    """Matrix of p -> q1*p*q2^-1 for unit q1, q2.

    Sends (q, 1) to `left_mult_matrix(q)` and (q, q) to `conjugation_matrix(q)`;
    (q1, q2) and (-q1, -q2) give the same matrix.
    """
    return _lmat(require_unit(q1)) @ _rmat(qconj(require_unit(q2)))


def _det4(m: np.ndarray) -> np.ndarray:
    # Laplace expansion by complementary 2x2 minors of the top and bottom rows
    s0 = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    s1 = m[..., 0, 0] * m[..., 1, 2] - m[..., 0, 2] * m[..., 1, 0]
    s2 = m[..., 0, 0] * m[..., 1, 3] - m[..., 0, 3] * m[..., 1, 0]
    s3 = m[..., 0, 1] * m[..., 1, 2] - m[..., 0, 2] * m[..., 1, 1]
    s4 = m[..., 0, 1] * m[..., 1, 3] - m[..., 0, 3] * m[..., 1, 1]
    s5 = m[..., 0, 2] * m[..., 1, 3] - m[..., 0, 3] * m[..., 1, 2]
    c5 = m[..., 2, 2] * m[..., 3, 3] - m[..., 2, 3] * m[..., 3, 2]
    c4 = m[..., 2, 1] * m[..., 3, 3] - m[..., 2, 3] * m[..., 3, 1]
    c3 = m[..., 2, 1] * m[..., 3, 2] - m[..., 2, 2] * m[..., 3, 1]
    c2 = m[..., 2, 0] * m[..., 3, 3] - m[..., 2, 3] * m[..., 3, 0]
    c1 = m[..., 2, 0] * m[..., 3, 2] - m[..., 2, 2] * m[..., 3, 0]
    c0 = m[..., 2, 0] * m[..., 3, 1] - m[..., 2, 1] * m[..., 3, 0]
    return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0


def is_so4(m: np.ndarray, atol: float = SO4_ATOL) -> np.ndarray:
    """Entrywise orthogonality and det +1 test; returns a boolean (batch) mask."""
    m = np.asarray(m, dtype=float)
    eye = np.eye(4)
    gram_ok = np.all(
        np.abs(np.swapaxes(m, -1, -2) @ m - eye) <= atol, axis=(-2, -1)
    )
    det_ok = np.abs(_det4(m) - 1.0) <= atol
    return gram_ok & det_ok


def require_so4(m: np.ndarray, atol: float = SO4_ATOL) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.shape[-2:] != (4, 4):
        raise ValidationError(f"expected (..., 4, 4) matrix, got shape {m.shape}")
    ok = is_so4(m, atol)
    if not np.all(ok):
        bad = int(np.argmin(ok.reshape(-1))) if ok.ndim else -1
        raise ValidationError(
            f"matrix failed SO(4) validation (orthogonality/determinant, atol={atol:g})"
            + (f" at batch index {bad}" if ok.ndim else "")
        )
    return m


def _isoclinic_basis() -> np.ndarray:
    """(16, 16) table whose row (4k + l) flattens _lmat(e_k) @ _rmat(e_l).

    The 16 matrices are Frobenius-orthogonal with squared norm 4, so for
    M = double_cover(a, conj(c)) the contraction (1/4)*<M, basis[k,l]> recovers
    the rank-one coefficient table a_k * c_l exactly.
    """
    eye = np.eye(4)
    rows = []
    for k in range(4):
        for l in range(4):
            rows.append((_lmat(eye[k]) @ _rmat(eye[l])).reshape(16))
    return np.array(rows)


_BASIS_FLAT = _isoclinic_basis()


def _canonical_pair_sign(q1: np.ndarray, q2: np.ndarray, threshold: float = SIGN_THRESHOLD):
    """Flip each pair so the first component of q1 exceeding `threshold` is positive."""
    decisive = np.abs(q1) > threshold
    idx = np.argmax(decisive, axis=-1)
    lead = np.take_along_axis(q1, idx[..., None], axis=-1)[..., 0]
    s = np.where(lead < 0.0, -1.0, 1.0)
    return q1 * s[..., None], q2 * s[..., None]


def isoclinic_decompose(
    m: np.ndarray,
    atol: float = SO4_ATOL,
    residual_tol: float = ROUNDTRIP_TOL,
    validate: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Factor SO(4) matrices into quaternion pairs inverting `double_cover`.

    Parameters
    ----------
    m : ndarray, shape (..., 4, 4)
        Matrices passing `require_so4`.
    atol : float
        Validation tolerance forwarded to `require_so4`.
    residual_tol : float
        Maximum allowed entrywise deviation of double_cover(q1, q2) from `m`.
    validate : bool
        Skip the upfront `require_so4` when the caller already validated
        (the residual check still rejects matrices outside SO(4)).

    Returns
    -------
    (q1, q2) : pair of ndarrays, shape (..., 4)
        Unit quaternions with double_cover(q1, q2) == m up to `residual_tol`.
        The sign ambiguity is fixed by the rule: the first component of q1
        with absolute value > 1e-4 is made positive.

    Notes
    -----
    Contracting `m` against the 16-matrix isoclinic basis yields the table
    A[k,l] = q1[k] * conj(q2)[l] (rank one, Frobenius norm 1).  q1 is read off
    the largest-norm column, conj(q2) from the induced row, and one power
    iteration on A polishes both against rounding in the input.
    """
    m = require_so4(m, atol) if validate else np.asarray(m, dtype=float)
    batch = m.shape[:-2]
    a_tab = 0.25 * (m.reshape(-1, 16) @ _BASIS_FLAT.T).reshape(batch + (4, 4))
    col_norms = np.linalg.norm(a_tab, axis=-2)
    lead_col = np.argmax(col_norms, axis=-1)
    a = np.take_along_axis(a_tab, lead_col[..., None, None], axis=-1)[..., 0]
    a = qnormalize(a)
    c = qnormalize(np.einsum("...kl,...k->...l", a_tab, a))
    # one refinement pass: power iteration toward the dominant rank-one factor
    a = qnormalize(np.einsum("...kl,...l->...k", a_tab, c))
    c = qnormalize(np.einsum("...kl,...k->...l", a_tab, a))
    q1, q2 = _canonical_pair_sign(a, qconj(c))
    rebuilt = _lmat(q1) @ _rmat(qconj(q2))
    residual = float(np.max(np.abs(rebuilt - m)))
    if residual > residual_tol:
        raise DecompositionError(
            f"isoclinic factorization residual {residual:.3e} exceeds {residual_tol:g}"
        )
    return q1, q2

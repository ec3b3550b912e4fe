"""Quaternion arithmetic on numpy arrays.

Convention: scalar-first components ``(w, x, y, z)`` meaning ``w + x*i + y*j + z*k``,
with the Hamilton sign rules ``i*j = k``, ``j*k = i``, ``k*i = j``.  Every function
broadcasts over leading axes, so a single quaternion is an array of shape ``(4,)``
and a batch is ``(n, 4)``.  R^4 is identified with the quaternions through
`as_vec4` / `from_vec4`, and R^3 with the span of ``i, j, k``.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

QONE = np.array([1.0, 0.0, 0.0, 0.0])
QI = np.array([0.0, 1.0, 0.0, 0.0])
QJ = np.array([0.0, 0.0, 1.0, 0.0])
QK = np.array([0.0, 0.0, 0.0, 1.0])

#: norm deviation accepted by operations that require unit input
UNIT_ATOL = 1e-6


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product a*b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    out[..., 0] = aw * bw - ax * bx - ay * by - az * bz
    out[..., 1] = aw * bx + ax * bw + ay * bz - az * by
    out[..., 2] = aw * by - ax * bz + ay * bw + az * bx
    out[..., 3] = aw * bz + ax * by - ay * bx + az * bw
    return out


def qconj(q: np.ndarray) -> np.ndarray:
    """Conjugate: negate the i, j, k components."""
    q = np.asarray(q, dtype=float)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(q: np.ndarray) -> np.ndarray:
    """Euclidean norm over the last axis."""
    return np.linalg.norm(np.asarray(q, dtype=float), axis=-1)


def qnormalize(q: np.ndarray) -> np.ndarray:
    """Rescale to unit norm."""
    q = np.asarray(q, dtype=float)
    return q / np.linalg.norm(q, axis=-1, keepdims=True)


def is_unit(q: np.ndarray, atol: float = 1e-9) -> bool:
    return bool(np.all(np.abs(qnorm(q) - 1.0) <= atol))


def require_unit(q: np.ndarray, atol: float = UNIT_ATOL) -> np.ndarray:
    """Check the norm deviates by at most `atol`, then return a renormalized copy."""
    q = np.asarray(q, dtype=float)
    dev = np.abs(qnorm(q) - 1.0)
    if np.any(dev > atol):
        raise ValidationError(
            f"expected unit quaternion(s), worst norm deviation {float(np.max(dev)):.3e}"
        )
    return qnormalize(q)


def qinv(q: np.ndarray, atol: float = UNIT_ATOL) -> np.ndarray:
    """Group inverse of a unit quaternion (its conjugate).  Rejects non-unit input."""
    return qconj(require_unit(q, atol))


def qpow(q: np.ndarray, n: int) -> np.ndarray:
    """Integer power of a (renormalized) unit quaternion.

    Uses the polar form q = (cos t, sin t * u): the power scales the angle,
    q^n = (cos n*t, sin n*t * u), which stays exactly on the unit sphere with
    no drift however large n is.  q^0 = 1 and q^-n = qinv(q^n).
    """
    q = qnormalize(q)
    w = np.clip(q[..., 0], -1.0, 1.0)
    v = q[..., 1:]
    vnorm = np.linalg.norm(v, axis=-1)
    theta = np.arctan2(vnorm, w)
    # axis is undefined at q = +-1, where sin(n*theta) = 0 anyway
    safe = np.where(vnorm > 0.0, vnorm, 1.0)
    axis = v / safe[..., None]
    nt = n * theta
    out = np.empty_like(q)
    out[..., 0] = np.cos(nt)
    out[..., 1:] = np.sin(nt)[..., None] * axis
    return out


def as_vec4(q: np.ndarray) -> np.ndarray:
    """Coefficients (w, x, y, z) of a quaternion as a plain float vector."""
    return np.array(q, dtype=float)


def from_vec4(v: np.ndarray) -> np.ndarray:
    """Quaternion w + x*i + y*j + z*k from a 4-vector (w, x, y, z)."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != 4:
        raise ValidationError(f"expected last axis of length 4, got shape {v.shape}")
    return v.copy()


def random_unit(rng: np.random.Generator, shape: tuple[int, ...] = ()) -> np.ndarray:
    """Uniform samples on the unit 3-sphere (normalized Gaussians)."""
    return qnormalize(rng.normal(size=tuple(shape) + (4,)))

"""Product sample grids on the unit 3-sphere in Hopf coordinates.

A point is parametrized by two circle angles and a tilt angle,

    q = (cos(eta)*cos(xi1), cos(eta)*sin(xi1), sin(eta)*cos(xi2), sin(eta)*sin(xi2)),

with xi1, xi2 in [0, 2*pi) and eta in [0, pi/2].  The volume element is
cos(eta)*sin(eta) d(eta) d(xi1) d(xi2), integrating to vol(S^3) = 2*pi^2.
Midpoint nodes in all three coordinates avoid the degenerate circles at
eta = 0 and eta = pi/2 and carry exact midpoint quadrature weights.
"""

from __future__ import annotations

import numpy as np

DEFAULT_SHAPE = (48, 48, 24)


class HopfGrid:
    """Midpoint product grid (xi1, xi2, eta) with quadrature weights.

    Grid axes wrap around in xi1 and xi2 (full circles); the eta axis does not.
    Nodes are stored flattened in C order of the (n1, n2, neta) index block.
    """

    def __init__(self, n1: int = 48, n2: int = 48, neta: int = 24):
        if min(n1, n2, neta) < 1:
            raise ValueError(f"grid shape must be positive, got {(n1, n2, neta)}")
        self.shape = (int(n1), int(n2), int(neta))
        self._dx1 = 2.0 * np.pi / n1
        self._dx2 = 2.0 * np.pi / n2
        self._deta = 0.5 * np.pi / neta
        xi1 = (np.arange(n1) + 0.5) * self._dx1
        xi2 = (np.arange(n2) + 0.5) * self._dx2
        eta = (np.arange(neta) + 0.5) * self._deta
        x1, x2, et = np.meshgrid(xi1, xi2, eta, indexing="ij")
        nodes = np.stack(
            [
                np.cos(et) * np.cos(x1),
                np.cos(et) * np.sin(x1),
                np.sin(et) * np.cos(x2),
                np.sin(et) * np.sin(x2),
            ],
            axis=-1,
        )
        self.nodes = nodes.reshape(-1, 4)
        cell = self._dx1 * self._dx2 * self._deta
        self.weights = (np.cos(et) * np.sin(et)).reshape(-1) * cell

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]

    def grid_values(self, flat_values: np.ndarray) -> np.ndarray:
        """Reshape per-node data (N, ...) back onto the (n1, n2, neta, ...) block."""
        return np.asarray(flat_values).reshape(self.shape + flat_values.shape[1:])

    def nearest_index(self, q: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Indices of the grid node nearest to q in Hopf coordinate space."""
        q = np.asarray(q, dtype=float)
        xi1 = np.mod(np.arctan2(q[..., 1], q[..., 0]), 2.0 * np.pi)
        xi2 = np.mod(np.arctan2(q[..., 3], q[..., 2]), 2.0 * np.pi)
        eta = np.arctan2(
            np.hypot(q[..., 2], q[..., 3]), np.hypot(q[..., 0], q[..., 1])
        )
        n1, n2, neta = self.shape
        i = np.mod(np.round(xi1 / self._dx1 - 0.5).astype(int), n1)
        j = np.mod(np.round(xi2 / self._dx2 - 0.5).astype(int), n2)
        k = np.clip(np.round(eta / self._deta - 0.5).astype(int), 0, neta - 1)
        return i, j, k

    def axis_wraps(self, axis: int) -> bool:
        """True for the periodic xi1/xi2 axes, False for eta."""
        return axis in (0, 1)


_default_grid: HopfGrid | None = None


def as_grid(resolution) -> HopfGrid:
    """Coerce None, an (n1, n2, neta) triple, or a HopfGrid to a HopfGrid.

    The default grid is built once and shared; treat its arrays as read-only.
    """
    global _default_grid
    if resolution is None:
        if _default_grid is None:
            _default_grid = HopfGrid(*DEFAULT_SHAPE)
        return _default_grid
    if isinstance(resolution, HopfGrid):
        return resolution
    return HopfGrid(*resolution)

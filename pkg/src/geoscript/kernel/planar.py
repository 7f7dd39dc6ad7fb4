"""In-plane 2D coordinates for planar 3D point sets."""

from __future__ import annotations

import numpy as np

COPLANAR_TOL = 1e-9


def newell_normal(points: np.ndarray) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    n = np.zeros(3)
    for i in range(len(p)):
        n += np.cross(p[i], p[(i + 1) % len(p)])
    return n


def plane_view_basis(points) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Map coplanar 3D points to 2D, isometrically.

    The first in-plane axis follows the first edge; the second is
    ``normal x first``.  Returns ``(coords2d, origin, basis)`` where
    ``basis`` rows are the two in-plane unit vectors.
    """
    p = np.asarray(points, dtype=float)
    if p.ndim != 2 or p.shape[1] != 3 or len(p) < 3:
        raise ValueError("plane view needs at least three 3D points")
    origin = p[0]
    e1 = p[1] - origin
    if np.linalg.norm(e1) == 0:
        raise ValueError("plane view needs distinct first two points")
    e1 = e1 / np.linalg.norm(e1)
    n = newell_normal(p)
    if np.linalg.norm(n) == 0:
        raise ValueError("points are collinear; no plane to view")
    n = n / np.linalg.norm(n)
    off = np.abs((p - origin) @ n)
    if off.max() > COPLANAR_TOL * max(1.0, float(np.ptp(p, axis=0).max())):
        raise ValueError(f"points are not coplanar (max offset {off.max():.3g})")
    e2 = np.cross(n, e1)
    basis = np.stack([e1, e2])
    return (p - origin) @ basis.T, origin, basis


def shoelace_area(coords2d) -> float:
    q = np.asarray(coords2d, dtype=float)
    x, y = q[:, 0], q[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))

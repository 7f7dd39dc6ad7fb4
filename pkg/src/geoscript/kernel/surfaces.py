"""Surfaces of revolution and parametric-surface tessellation."""

from __future__ import annotations

import numpy as np

from ..values import ParamCurve, ParamSurface
from .geometry import Mesh, face_area

WELD_TOL = 1e-9
MIN_FACE_AREA = 1e-18


def revolve_curve(curve: ParamCurve, angle: float, axis: str = "x") -> ParamSurface:
    """Sweep a planar curve about the x or y axis through ``angle`` radians."""
    if not 0 < angle <= 2 * np.pi + 1e-12:
        raise ValueError(f"revolution angle must be in (0, 2π], got {angle}")
    if axis not in ("x", "y"):
        raise ValueError(f"revolution axis must be x or y, got {axis!r}")

    def fn(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        xy = curve(u.ravel()).reshape(u.shape + (-1,))
        x, y = xy[..., 0], xy[..., 1]
        if axis == "x":
            return x, y * np.cos(v), y * np.sin(v)
        return x * np.cos(v), y, x * np.sin(v)

    return ParamSurface(fn, (curve.lo, curve.hi), (0.0, float(angle)))


def _grid(surface: ParamSurface, nu: int, nv: int):
    u = np.linspace(*surface.u_range, nu + 1)
    v = np.linspace(*surface.v_range, nv + 1)
    U, V = np.meshgrid(u, v, indexing="ij")
    with np.errstate(all="ignore"):
        X, Y, Z = surface.fn(U, V)
    P = np.stack(np.broadcast_arrays(X, Y, Z), axis=-1).astype(float)
    return U, V, P


def _lines_coincide(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.all(np.isfinite(a)) and np.all(np.isfinite(b)) and np.max(np.abs(a - b)) <= WELD_TOL)


def tessellate_surface(surface: ParamSurface, nu: int = 64, nv: int = 64) -> Mesh:
    """Quad mesh over a uniform ``nu`` x ``nv`` parameter grid.

    Seams are welded when the first and last iso-lines coincide; quads
    touching a non-finite vertex or with (near) zero area are dropped.
    """
    if nu < 2 or nv < 2:
        raise ValueError("tessellation needs nu, nv >= 2")
    U, V, P = _grid(surface, nu, nv)
    index = np.arange((nu + 1) * (nv + 1)).reshape(nu + 1, nv + 1)
    if _lines_coincide(P[0], P[-1]):
        index[-1, :] = index[0, :]
    if _lines_coincide(P[:, 0], P[:, -1]):
        index[:, -1] = index[:, 0]
    flat = P.reshape(-1, 3)
    finite = np.all(np.isfinite(flat), axis=1)
    used = np.zeros(len(flat), dtype=bool)
    used[np.unique(index)] = True
    used &= finite
    remap = -np.ones(len(flat), dtype=int)
    remap[used] = np.arange(int(used.sum()))

    faces: list[tuple[int, ...]] = []
    for i in range(nu):
        for j in range(nv):
            corner = (index[i, j], index[i + 1, j], index[i + 1, j + 1], index[i, j + 1])
            if not all(finite[c] for c in corner):
                continue
            quad = tuple(int(remap[c]) for c in corner)
            if face_area(flat[list(corner)]) < MIN_FACE_AREA:
                continue
            faces.append(quad)
    uv = np.stack([U.ravel(), V.ravel()], axis=1)[used]
    return Mesh(flat[used], faces, uv)

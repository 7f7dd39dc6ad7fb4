"""Turning a swept sequence of points into locus polylines."""

from __future__ import annotations

from typing import Any, Sequence

import numpy as np

from ..values import Locus, Point2, Point3
from .geometry import Polyline, split_polylines

CLOSE_TOL = 1e-9


def _row(value: Any, dim: int) -> np.ndarray:
    if isinstance(value, (Point2, Point3)):
        c = value.coords()
        if len(c) == dim:
            return c
    return np.full(dim, np.nan)


def trace_locus(values: Sequence[Any], jump: float) -> Locus:
    """Polylines through the finite samples, broken at gaps and at jumps above ``jump``.

    A single run whose ends coincide is returned closed.
    """
    dim = 3 if any(isinstance(v, Point3) for v in values) else 2
    pts = np.array([_row(v, dim) for v in values]) if len(values) else np.empty((0, dim))
    closes = len(pts) > 2 and np.all(np.isfinite(pts[[0, -1]])) and np.linalg.norm(pts[0] - pts[-1]) <= CLOSE_TOL
    polylines = split_polylines(pts, jump)
    if closes and len(polylines) == 1:
        pl = polylines[0]
        verts = pl.vertices
        if np.linalg.norm(verts[0] - verts[-1]) <= CLOSE_TOL:
            verts = verts[:-1]
        polylines = [Polyline(verts, closed=True)]
    return Locus(polylines)

"""Uniform sampling of univariate function graphs for 2D rendering."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .geometry import Window2, clip_polyline, split_polylines


def sample_function_graph(
    f: Callable[[np.ndarray], np.ndarray],
    window: Window2,
    n: int = 512,
    domain: tuple[float, float] = (-np.inf, np.inf),
) -> list[np.ndarray]:
    """Polylines of ``y = f(x)`` over ``domain`` intersected with the window's x-range."""
    if n < 2:
        raise ValueError("graph sampling needs n >= 2")
    lo = max(float(domain[0]), window.xmin)
    hi = min(float(domain[1]), window.xmax)
    if not lo < hi:
        return []
    xs = np.linspace(lo, hi, n)
    with np.errstate(all="ignore"):
        ys = np.broadcast_to(np.asarray(f(xs), dtype=float), xs.shape)
    out: list[np.ndarray] = []
    for piece in split_polylines(np.column_stack([xs, ys])):
        out.extend(clip_polyline(piece.vertices, window))
    return out

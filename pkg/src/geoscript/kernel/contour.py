"""Level curves of a bivariate function by marching squares."""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..values import ContourSet
from .geometry import Polyline, Window2, drop_repeats

ZERO_NUDGE = 1e-12
CROSS_TOL = 1e-9
MAX_BISECTIONS = 60
CLOSE_TOL = 1e-9

# corner bits: bottom-left 1, bottom-right 2, top-right 4, top-left 8
# edges: 0 bottom, 1 right, 2 top, 3 left
_SEGMENTS = {
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)], 6: [(0, 2)], 7: [(3, 2)],
    8: [(2, 3)], 9: [(2, 0)], 11: [(2, 1)], 12: [(1, 3)], 13: [(1, 0)], 14: [(0, 3)],
}
# saddles keyed by (case, center positive)
_SADDLES = {
    (5, True): [(0, 1), (2, 3)],
    (5, False): [(3, 0), (1, 2)],
    (10, True): [(3, 0), (1, 2)],
    (10, False): [(0, 1), (2, 3)],
}


def _eval(g, x, y) -> np.ndarray:
    with np.errstate(all="ignore"):
        out = g(x, y)
    return np.broadcast_to(np.asarray(out, dtype=float), np.shape(x)).copy()


def refine_crossings(g: Callable, k: float, p0: np.ndarray, p1: np.ndarray) -> np.ndarray:
    """Vectorized bisection on edges ``p0[i]``-``p1[i]`` whose endpoints bracket ``g = k``.

    Starts from inverse linear interpolation and stops per edge once
    ``|g - k| <= 1e-9`` or after 60 halvings.
    """
    p0 = np.asarray(p0, dtype=float).reshape(-1, 2)
    p1 = np.asarray(p1, dtype=float).reshape(-1, 2)
    f0 = _eval(g, p0[:, 0], p0[:, 1]) - k
    f1 = _eval(g, p1[:, 0], p1[:, 1]) - k
    lo = np.zeros(len(p0))
    hi = np.ones(len(p0))
    pos0 = f0 > 0
    with np.errstate(all="ignore"):
        s = np.where(f0 != f1, f0 / (f0 - f1), 0.5)
    s = np.clip(np.nan_to_num(s, nan=0.5), 0.0, 1.0)
    best = s.copy()
    best_f = np.full(len(p0), np.inf)
    done = np.abs(f0) <= CROSS_TOL
    best[done] = 0.0
    best_f[done] = np.abs(f0[done])
    end_ok = ~done & (np.abs(f1) <= CROSS_TOL)
    best[end_ok] = 1.0
    best_f[end_ok] = np.abs(f1[end_ok])
    done |= end_ok
    for _ in range(MAX_BISECTIONS + 1):
        if done.all():
            break
        pts = p0 + s[:, None] * (p1 - p0)
        fs = _eval(g, pts[:, 0], pts[:, 1]) - k
        better = ~done & (np.abs(fs) < best_f)
        best[better] = s[better]
        best_f[better] = np.abs(fs[better])
        done |= np.abs(fs) <= CROSS_TOL
        same_side = (fs > 0) == pos0
        lo = np.where(same_side, s, lo)
        hi = np.where(same_side, hi, s)
        s = np.where(done, s, 0.5 * (lo + hi))
    return p0 + best[:, None] * (p1 - p0)


def refine_crossing(g: Callable, k: float, a, b) -> np.ndarray:
    """Scalar convenience wrapper around :func:`refine_crossings`."""
    return refine_crossings(g, k, np.asarray(a)[None], np.asarray(b)[None])[0]


def _edge_key(i: int, j: int, edge: int) -> tuple[int, int, int]:
    # horizontal edges (kind 0) are keyed by their left corner, vertical (1) by the lower one
    if edge == 0:
        return (0, i, j)
    if edge == 1:
        return (1, i + 1, j)
    if edge == 2:
        return (0, i, j + 1)
    return (1, i, j)


def _chain(segments: list[tuple]) -> list[tuple[list, bool]]:
    adj: dict[tuple, list[tuple]] = {}
    for a, b in segments:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen: set[tuple] = set()
    chains = []
    for a, _ in segments:
        if a in seen:
            continue
        # walk back to an open end if there is one
        start, prev = a, None
        while True:
            nxt = [n for n in adj[start] if n != prev]
            if len(adj[start]) < 2 or not nxt:
                break
            prev, start = start, nxt[0]
            if start == a:
                break
        path = [start]
        seen.add(start)
        prev, cur = None, start
        closed = False
        while True:
            nxt = [n for n in adj[cur] if n != prev]
            if not nxt:
                break
            n = nxt[0]
            if n == start and len(path) > 2:
                closed = True
                break
            if n in seen:
                break
            path.append(n)
            seen.add(n)
            prev, cur = cur, n
        chains.append((path, closed))
    return chains


def marching_squares(g: Callable, k: float, window: Window2, nx: int = 200, ny: int = 200) -> ContourSet:
    """Polylines approximating ``{g = k}`` over ``window`` on an ``nx`` x ``ny`` cell grid."""
    if nx < 2 or ny < 2:
        raise ValueError("contour grid needs nx, ny >= 2")
    xs = np.linspace(window.xmin, window.xmax, nx + 1)
    ys = np.linspace(window.ymin, window.ymax, ny + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    F = _eval(g, X, Y) - k
    finite = np.isfinite(F)
    Fs = np.where(F == 0, ZERO_NUDGE, F)
    P = Fs > 0

    bl, br, tr, tl = P[:-1, :-1], P[1:, :-1], P[1:, 1:], P[:-1, 1:]
    case = bl * 1 + br * 2 + tr * 4 + tl * 8
    ok = finite[:-1, :-1] & finite[1:, :-1] & finite[1:, 1:] & finite[:-1, 1:]
    active = ok & (case != 0) & (case != 15)

    segments: list[tuple] = []
    # row-major over cells: rows are y, columns are x
    for j, i in sorted(zip(*np.nonzero(active.T))):
        c = int(case[i, j])
        if c in (5, 10):
            cx = 0.5 * (xs[i] + xs[i + 1])
            cy = 0.5 * (ys[j] + ys[j + 1])
            fc = float(_eval(g, np.array([cx]), np.array([cy]))[0]) - k
            pairs = _SADDLES[(c, fc >= 0)]  # exact zero counts as positive
        else:
            pairs = _SEGMENTS[c]
        for e0, e1 in pairs:
            segments.append((_edge_key(i, j, e0), _edge_key(i, j, e1)))
    if not segments:
        return ContourSet([], float(k), window)

    keys = sorted({key for seg in segments for key in seg})
    a = np.array([(xs[i], ys[j]) for _, i, j in keys])
    b = np.array([(xs[i + 1], ys[j]) if kind == 0 else (xs[i], ys[j + 1]) for kind, i, j in keys])
    points = dict(zip(keys, refine_crossings(g, k, a, b)))

    polylines = []
    for path, closed in _chain(segments):
        pts = drop_repeats(np.array([points[key] for key in path]))
        if not closed and len(pts) > 2 and np.linalg.norm(pts[0] - pts[-1]) <= CLOSE_TOL:
            pts, closed = pts[:-1], True
        if closed and len(pts) > 1 and np.linalg.norm(pts[0] - pts[-1]) < 1e-12:
            pts = pts[:-1]
        if len(pts) >= 2:
            polylines.append(Polyline(pts, closed=closed and len(pts) >= 3))
    return ContourSet(polylines, float(k), window)

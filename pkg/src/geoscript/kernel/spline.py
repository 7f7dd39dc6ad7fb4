"""Natural cubic interpolating splines with chord-length knots."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _solve_tridiagonal(lower, diag, upper, rhs):
    """Thomas algorithm; ``rhs`` may hold several right-hand sides as columns."""
    n = len(diag)
    c = np.zeros(n)
    d = np.zeros((n,) + rhs.shape[1:])
    c[0] = upper[0] / diag[0] if n > 1 else 0.0
    d[0] = rhs[0] / diag[0]
    for i in range(1, n):
        m = diag[i] - lower[i] * c[i - 1]
        if i < n - 1:
            c[i] = upper[i] / m
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / m
    x = np.zeros_like(d)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


def chord_length_knots(points: np.ndarray) -> np.ndarray:
    d = np.linalg.norm(np.diff(points, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(d)])
    return s / s[-1]


@dataclass(eq=False)
class CubicSpline:
    """Piecewise cubic ``p(t)`` on ``knots``; ``moments`` are second derivatives at knots."""

    knots: np.ndarray
    values: np.ndarray  # (n, dim)
    moments: np.ndarray  # (n, dim)

    @property
    def segments(self) -> int:
        return len(self.knots) - 1

    def _locate(self, t):
        t = np.clip(np.asarray(t, dtype=float), self.knots[0], self.knots[-1])
        idx = np.searchsorted(self.knots, t, side="right") - 1
        idx = np.clip(idx, 0, self.segments - 1)
        return t, idx

    def __call__(self, t) -> np.ndarray:
        t, i = self._locate(t)
        h = (self.knots[i + 1] - self.knots[i])[:, None]
        a = (self.knots[i + 1] - t)[:, None]
        b = (t - self.knots[i])[:, None]
        m0, m1 = self.moments[i], self.moments[i + 1]
        y0, y1 = self.values[i], self.values[i + 1]
        return (
            m0 * a**3 / (6 * h)
            + m1 * b**3 / (6 * h)
            + (y0 / h - m0 * h / 6) * a
            + (y1 / h - m1 * h / 6) * b
        )

    def second_derivative(self, t) -> np.ndarray:
        t, i = self._locate(t)
        h = (self.knots[i + 1] - self.knots[i])[:, None]
        a = (self.knots[i + 1] - t)[:, None]
        b = (t - self.knots[i])[:, None]
        return (self.moments[i] * a + self.moments[i + 1] * b) / h


def spline_fit(points) -> CubicSpline:
    """Natural cubic spline through ``points`` parameterized on [0, 1] by chord length."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) < 3:
        raise ValueError("spline needs at least 3 points")
    gaps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    if np.any(gaps == 0):
        raise ValueError("spline points must not repeat consecutively")
    knots = chord_length_knots(pts)
    n = len(pts)
    h = np.diff(knots)
    moments = np.zeros_like(pts)
    # interior equations; the natural ends fix the outer moments at zero
    lower = np.concatenate([[0.0], h[1:-1]])
    diag = 2.0 * (h[:-1] + h[1:])
    upper = np.concatenate([h[1:-1], [0.0]])
    slopes = np.diff(pts, axis=0) / h[:, None]
    rhs = 6.0 * (slopes[1:] - slopes[:-1])
    moments[1 : n - 1] = _solve_tridiagonal(lower, diag, upper, rhs)
    return CubicSpline(knots, pts, moments)

"""Discrete geometry shared by the kernel and the exporters."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MIN_VERTEX_GAP = 1e-12


@dataclass(frozen=True)
class Window2:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError(f"degenerate window {self}")

    @property
    def diagonal(self) -> float:
        return float(np.hypot(self.xmax - self.xmin, self.ymax - self.ymin))

    @classmethod
    def parse(cls, text: str) -> "Window2":
        parts = [float(p) for p in text.split(":")]
        if len(parts) != 4:
            raise ValueError(f"window needs xmin:xmax:ymin:ymax, got {text!r}")
        return cls(*parts)


DEFAULT_WINDOW = Window2(-5.0, 5.0, -5.0, 5.0)


@dataclass(eq=False)
class Polyline:
    vertices: np.ndarray  # (n, 2) or (n, 3)
    closed: bool = False

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def closed_vertices(self) -> np.ndarray:
        """Vertices with the first repeated at the end when closed."""
        if self.closed:
            return np.vstack([self.vertices, self.vertices[:1]])
        return self.vertices


def drop_repeats(points: np.ndarray, tol: float = MIN_VERTEX_GAP) -> np.ndarray:
    """Remove consecutive vertices closer than ``tol``."""
    points = np.asarray(points, dtype=float)
    if len(points) < 2:
        return points
    keep = [0]
    for i in range(1, len(points)):
        if np.linalg.norm(points[i] - points[keep[-1]]) >= tol:
            keep.append(i)
    return points[keep]


def split_polylines(points: np.ndarray, jump: float | None = None) -> list[Polyline]:
    """Split a sample sequence at non-finite rows and at jumps longer than ``jump``."""
    points = np.asarray(points, dtype=float)
    out: list[Polyline] = []
    run: list[np.ndarray] = []

    def flush():
        if len(run) >= 2:
            pts = drop_repeats(np.array(run))
            if len(pts) >= 2:
                out.append(Polyline(pts))
        run.clear()

    for p in points:
        if not np.all(np.isfinite(p)):
            flush()
            continue
        if run and jump is not None and np.linalg.norm(p - run[-1]) > jump:
            flush()
        run.append(p)
    flush()
    return out


@dataclass(eq=False)
class Mesh:
    vertices: np.ndarray  # (n, 3)
    faces: list[tuple[int, ...]]  # 0-based quads or triangles
    uv: np.ndarray | None = None

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)


def face_area(vertices: np.ndarray) -> float:
    """Area of a planar-ish polygon via the Newell normal."""
    v = np.asarray(vertices, dtype=float)
    n = np.zeros(3)
    for i in range(len(v)):
        n += np.cross(v[i], v[(i + 1) % len(v)])
    return 0.5 * float(np.linalg.norm(n))


@dataclass(frozen=True, eq=False)
class RigidTransform:
    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.rotation.T + self.translation

    def compose(self, inner: "RigidTransform") -> "RigidTransform":
        """``self ∘ inner``: apply ``inner`` first."""
        return RigidTransform(self.rotation @ inner.rotation, self.rotation @ inner.translation + self.translation)

    @classmethod
    def about_axis(cls, p0, p1, angle: float) -> "RigidTransform":
        """Rotation by ``angle`` about the line through ``p0`` and ``p1`` (right-hand rule)."""
        p0 = np.asarray(p0, dtype=float)
        k = np.asarray(p1, dtype=float) - p0
        k = k / np.linalg.norm(k)
        kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
        r = np.eye(3) + np.sin(angle) * kx + (1 - np.cos(angle)) * (kx @ kx)
        return cls(r, p0 - r @ p0)


def clip_segment(p, q, window: Window2):
    """Liang-Barsky clip of segment ``pq``; returns the clipped pair or ``None``."""
    x0, y0 = p
    dx, dy = q[0] - x0, q[1] - y0
    t0, t1 = 0.0, 1.0
    for pk, qk in ((-dx, x0 - window.xmin), (dx, window.xmax - x0), (-dy, y0 - window.ymin), (dy, window.ymax - y0)):
        if pk == 0:
            if qk < 0:
                return None
            continue
        r = qk / pk
        if pk < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
        if t0 > t1:
            return None
    a = np.array([x0 + t0 * dx, y0 + t0 * dy])
    b = np.array([x0 + t1 * dx, y0 + t1 * dy])
    return a, b


def clip_polyline(points: np.ndarray, window: Window2) -> list[np.ndarray]:
    """Clip a 2D polyline to ``window``, splitting where it leaves."""
    pieces: list[list[np.ndarray]] = []
    current: list[np.ndarray] = []
    for i in range(len(points) - 1):
        seg = clip_segment(points[i], points[i + 1], window)
        if seg is None:
            if current:
                pieces.append(current)
                current = []
            continue
        a, b = seg
        if current and np.array_equal(current[-1], a):
            current.append(b)
        else:
            if current:
                pieces.append(current)
            current = [a, b]
        if not np.array_equal(b, points[i + 1]):
            pieces.append(current)
            current = []
    if current:
        pieces.append(current)
    out = []
    for piece in pieces:
        pts = drop_repeats(np.array(piece))
        if len(pts) >= 2:
            out.append(pts)
    return out

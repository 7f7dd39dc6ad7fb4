"""Runtime values held by construction-graph nodes.

Scalars are ``numpy.float64`` or arrays of them; NaN and infinities stand for
"undefined" and simply propagate.  Every 2D point is complex-capable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .kernel.geometry import Polyline, Window2


class EvalError(ValueError):
    """Evaluation failed for a reason other than a defined undefined-case."""


class UnknownCommandError(EvalError):
    pass


class Undefined:
    """Undefined non-scalar value (e.g. point on an empty contour set)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Undefined"


UNDEFINED = Undefined()


@dataclass(frozen=True)
class Number:
    v: float


@dataclass(frozen=True)
class Slider:
    v: float
    min: float
    max: float
    increment: float

    def snap(self, value: float) -> float:
        steps = np.round((value - self.min) / self.increment)
        snapped = self.min + steps * self.increment
        return float(min(max(snapped, self.min), self.max))

    def with_value(self, value: float) -> "Slider":
        return Slider(self.snap(value), self.min, self.max, self.increment)


@dataclass(frozen=True, eq=False)
class Point2:
    x: Any
    y: Any

    def as_complex(self):
        return np.asarray(self.x) + 1j * np.asarray(self.y)

    def coords(self) -> np.ndarray:
        return np.array([float(self.x), float(self.y)])

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y)))

    def __eq__(self, other):
        return isinstance(other, Point2) and np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y)


@dataclass(frozen=True, eq=False)
class Point3:
    x: Any
    y: Any
    z: Any

    def coords(self) -> np.ndarray:
        return np.array([float(self.x), float(self.y), float(self.z)])

    def is_finite(self) -> bool:
        return bool(all(np.all(np.isfinite(c)) for c in (self.x, self.y, self.z)))

    def __eq__(self, other):
        return isinstance(other, Point3) and all(
            np.array_equal(a, b) for a, b in zip((self.x, self.y, self.z), (other.x, other.y, other.z))
        )


@dataclass(eq=False)
class Function:
    """User or restricted function; applying it re-evaluates the body.

    ``env`` captures values bound when the function was built, e.g. the
    sequence variable in ``Sequência(m x, m, -5, 5, 1)``.
    """

    params: tuple[str, ...]
    body: Any  # syntax.Expr
    env: dict
    evaluator: Any = field(repr=False)
    name: str | None = None

    @property
    def arity(self) -> int:
        return len(self.params)

    def __call__(self, *args):
        if len(args) != len(self.params):
            raise EvalError(
                f"function {self.name or '<anonymous>'} takes {len(self.params)} argument(s), got {len(args)}"
            )
        env = dict(self.env)
        env.update(zip(self.params, args))
        return self.evaluator.eval(self.body, env)

    def domain(self) -> list[tuple[float, float]]:
        """Per-parameter ``(lo, hi)`` intervals; unrestricted is ``(-inf, inf)``."""
        return self.evaluator.function_domain(self)


@dataclass(eq=False)
class ParamCurve:
    """Parametric curve; ``fn`` maps an array of parameters to an ``(n, dim)`` array."""

    fn: Callable[[np.ndarray], np.ndarray]
    lo: float
    hi: float
    dim: int
    segments: int | None = None  # piece count for spline curves

    def __call__(self, t) -> np.ndarray:
        return self.fn(np.atleast_1d(np.asarray(t, dtype=float)))

    def at(self, t: float) -> np.ndarray:
        return self(t)[0]

    def sample(self, n: int) -> np.ndarray:
        return self(np.linspace(self.lo, self.hi, n))


@dataclass(eq=False)
class ParamSurface:
    """``fn(U, V) -> (X, Y, Z)`` on broadcastable arrays over a parameter rectangle."""

    fn: Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]
    u_range: tuple[float, float]
    v_range: tuple[float, float]


@dataclass(frozen=True)
class Plane:
    """The plane ``z = a x + b y + c``."""

    a: float
    b: float
    c: float

    @property
    def is_horizontal(self) -> bool:
        return self.a == 0 and self.b == 0


@dataclass(eq=False)
class GraphSurface:
    """Graph ``z = g(x, y)``; ``rect`` restricts the domain when given."""

    g: Callable[[np.ndarray, np.ndarray], np.ndarray]
    rect: tuple[tuple[float, float], tuple[float, float]] | None = None


@dataclass(frozen=True, eq=False)
class Segment:
    a: Point2 | Point3
    b: Point2 | Point3


@dataclass(frozen=True, eq=False)
class Line:
    """2D line through ``point`` with direction ``direction`` (both ndarray)."""

    point: np.ndarray
    direction: np.ndarray


@dataclass(frozen=True, eq=False)
class Circle:
    center: Point2
    radius: float


@dataclass(frozen=True, eq=False)
class Polygon:
    vertices: tuple  # of Point2 or Point3

    @property
    def dim(self) -> int:
        return 3 if isinstance(self.vertices[0], Point3) else 2

    def coords(self) -> np.ndarray:
        return np.array([v.coords() for v in self.vertices])


@dataclass(frozen=True, eq=False)
class PolylineVal:
    """Open polygonal line through given points."""

    vertices: tuple

    def coords(self) -> np.ndarray:
        return np.array([v.coords() for v in self.vertices])


@dataclass(eq=False)
class ListVal:
    items: list

    def __len__(self) -> int:
        return len(self.items)


def _arc_tables(polylines: list[Polyline]) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Closed vertex arrays and their cumulative lengths, for point-on-path queries."""
    verts = [pl.closed_vertices() for pl in polylines]
    cum = [np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(v, axis=0), axis=1))]) for v in verts]
    return verts, cum


@dataclass(eq=False)
class ContourSet:
    polylines: list[Polyline]
    k: float
    window: Window2
    _arc: tuple | None = field(default=None, repr=False)

    def arc_tables(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        if self._arc is None:
            self._arc = _arc_tables(self.polylines)
        return self._arc


@dataclass(eq=False)
class Locus:
    polylines: list[Polyline]
    _arc: tuple | None = field(default=None, repr=False)

    def arc_tables(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        if self._arc is None:
            self._arc = _arc_tables(self.polylines)
        return self._arc


@dataclass(frozen=True)
class Axis:
    """Named coordinate axis (EixoOx, EixoOy, EixoOz)."""

    name: str  # "x", "y" or "z"


def kind_name(value: Any) -> str:
    if isinstance(value, (float, int, np.floating, np.ndarray)):
        return "Number"
    return type(value).__name__

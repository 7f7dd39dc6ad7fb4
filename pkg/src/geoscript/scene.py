"""Turning graph values into drawable scenes, one per view."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .evaluator import is_scalar
from .kernel.geometry import Mesh, Polyline, Window2, clip_polyline, clip_segment, split_polylines
from .kernel.sampling import sample_function_graph
from .kernel.surfaces import tessellate_surface
from .kernel.unfold import Cube, Net
from .settings import Settings
from .values import (
    Circle,
    ContourSet,
    Function,
    GraphSurface,
    Line,
    ListVal,
    Locus,
    ParamCurve,
    ParamSurface,
    Plane,
    Point2,
    Point3,
    PolylineVal,
    Polygon,
    Segment,
)

# default stroke colors, cycled by object id
PALETTE = (
    (0.0, 0.0, 0.0),
    (0.12, 0.47, 0.71),
    (0.84, 0.15, 0.16),
    (0.17, 0.63, 0.17),
    (0.58, 0.4, 0.74),
    (1.0, 0.5, 0.05),
)
CIRCLE_SAMPLES = 512
STROKE_WIDTH = 2.0
CUBE_FACES = ((0, 1, 2, 3), (0, 1, 5, 4), (1, 2, 6, 5), (2, 3, 7, 6), (0, 3, 7, 4), (4, 5, 6, 7))


def clamp_rgb(rgb) -> tuple[float, float, float]:
    return tuple(float(min(max(c, 0.0), 1.0)) if np.isfinite(c) else 0.0 for c in rgb)


@dataclass
class DrawItem:
    name: str
    kind: str  # "path" or "point"
    vertices: np.ndarray
    closed: bool = False
    rgb: tuple[float, float, float] = (0.0, 0.0, 0.0)
    width: float = STROKE_WIDTH
    fill: bool = False


@dataclass
class Scene2D:
    view: str
    window: Window2
    items: list[DrawItem] = field(default_factory=list)


@dataclass
class Scene3D:
    meshes: list[tuple[str, Mesh]] = field(default_factory=list)
    polylines: list[tuple[str, Polyline]] = field(default_factory=list)
    points: list[tuple[str, np.ndarray]] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not (self.meshes or self.polylines or self.points)


# -- 2D ------------------------------------------------------------------------


def _clip_closed(pts: np.ndarray, window: Window2) -> list[tuple[np.ndarray, bool]]:
    inside = (
        (pts[:, 0] >= window.xmin) & (pts[:, 0] <= window.xmax) & (pts[:, 1] >= window.ymin) & (pts[:, 1] <= window.ymax)
    )
    if inside.all():
        return [(pts, True)]
    return [(p, False) for p in clip_polyline(np.vstack([pts, pts[:1]]), window)]


def _line_extent(line: Line, window: Window2) -> tuple[np.ndarray, np.ndarray]:
    d = np.asarray(line.direction, dtype=float)
    d = d / np.linalg.norm(d)
    center = np.array([(window.xmin + window.xmax) / 2, (window.ymin + window.ymax) / 2])
    p = np.asarray(line.point, dtype=float)
    reach = window.diagonal + np.linalg.norm(p - center)
    return p - reach * d, p + reach * d


def planar_paths(value: Any, window: Window2, settings: Settings) -> list[tuple[str, np.ndarray, bool]]:
    """``(kind, vertices, closed)`` triples for a planar value, clipped to ``window``."""
    out: list[tuple[str, np.ndarray, bool]] = []
    if isinstance(value, Point2):
        if value.is_finite() and np.ndim(value.x) == 0:
            c = value.coords()
            if window.xmin <= c[0] <= window.xmax and window.ymin <= c[1] <= window.ymax:
                out.append(("point", c[None, :], False))
    elif isinstance(value, Segment) and isinstance(value.a, Point2):
        if value.a.is_finite() and value.b.is_finite():
            seg = clip_segment(value.a.coords(), value.b.coords(), window)
            if seg is not None and not np.array_equal(seg[0], seg[1]):
                out.append(("path", np.array(seg), False))
    elif isinstance(value, Line):
        seg = clip_segment(*_line_extent(value, window), window)
        if seg is not None:
            out.append(("path", np.array(seg), False))
    elif isinstance(value, Circle):
        if value.center.is_finite() and np.isfinite(value.radius) and value.radius > 0:
            th = 2 * np.pi * np.arange(CIRCLE_SAMPLES) / CIRCLE_SAMPLES
            c = value.center.coords()
            pts = np.column_stack([c[0] + value.radius * np.cos(th), c[1] + value.radius * np.sin(th)])
            out.extend(("path", p, closed) for p, closed in _clip_closed(pts, window))
    elif isinstance(value, Polygon) and value.dim == 2:
        pts = value.coords()
        if np.all(np.isfinite(pts)):
            out.extend(("polygon" if closed else "path", p, closed) for p, closed in _clip_closed(pts, window))
    elif isinstance(value, PolylineVal) and value.vertices and isinstance(value.vertices[0], Point2):
        for pl in split_polylines(value.coords()):
            out.extend(("path", p, False) for p in clip_polyline(pl.vertices, window))
    elif isinstance(value, Function) and value.arity == 1:
        for p in sample_function_graph(value, window, settings.samples, value.domain()[0]):
            out.append(("path", p, False))
    elif isinstance(value, ParamCurve) and value.dim == 2:
        for pl in split_polylines(value.sample(settings.samples)):
            out.extend(("path", p, False) for p in clip_polyline(pl.vertices, window))
    elif isinstance(value, (ContourSet, Locus)):
        for pl in value.polylines:
            if pl.dim != 2:
                continue
            if pl.closed:
                out.extend(("path", p, closed) for p, closed in _clip_closed(pl.vertices, window))
            else:
                out.extend(("path", p, False) for p in clip_polyline(pl.vertices, window))
    elif isinstance(value, ListVal):
        for item in value.items:
            out.extend(planar_paths(item, window, settings))
    return out


# -- 3D ------------------------------------------------------------------------


def _rect(domain, window: Window2):
    (u0, u1), (v0, v1) = domain
    return (max(u0, window.xmin), min(u1, window.xmax)), (max(v0, window.ymin), min(v1, window.ymax))


def _graph_mesh(g, rect, mesh: tuple[int, int]) -> Mesh | None:
    (u0, u1), (v0, v1) = rect
    if not (u0 < u1 and v0 < v1):
        return None

    def fn(u, v):
        with np.errstate(all="ignore"):
            z = np.broadcast_to(np.asarray(g(u, v), dtype=float), np.broadcast(u, v).shape)
        return u, v, z

    return tessellate_surface(ParamSurface(fn, (u0, u1), (v0, v1)), *mesh)


def spatial_parts(value: Any, settings: Settings) -> tuple[list[Mesh], list[Polyline], list[np.ndarray]]:
    meshes: list[Mesh] = []
    lines: list[Polyline] = []
    points: list[np.ndarray] = []
    window = settings.window("3d")
    if isinstance(value, Point3):
        if value.is_finite():
            points.append(value.coords())
    elif isinstance(value, Point2):
        if value.is_finite() and np.ndim(value.x) == 0:
            points.append(np.append(value.coords(), 0.0))
    elif isinstance(value, Cube):
        meshes.append(Mesh(value.coords(), list(CUBE_FACES)))
    elif isinstance(value, Net):
        quads = value.quads()
        meshes.append(Mesh(np.vstack(quads), [tuple(range(4 * i, 4 * i + 4)) for i in range(len(quads))]))
    elif isinstance(value, Polygon):
        pts = value.coords()
        if pts.shape[1] == 2:
            pts = np.column_stack([pts, np.zeros(len(pts))])
        if np.all(np.isfinite(pts)):
            meshes.append(Mesh(pts, [tuple(range(len(pts)))]))
    elif isinstance(value, (PolylineVal, Segment)):
        verts = value.vertices if isinstance(value, PolylineVal) else (value.a, value.b)
        pts = np.array([np.append(v.coords(), 0.0) if isinstance(v, Point2) else v.coords() for v in verts])
        lines.extend(split_polylines(pts))
    elif isinstance(value, ParamSurface):
        meshes.append(tessellate_surface(value, *settings.mesh))
    elif isinstance(value, GraphSurface):
        rect = value.rect or ((-np.inf, np.inf), (-np.inf, np.inf))
        m = _graph_mesh(value.g, _rect(rect, window), settings.mesh)
        if m is not None:
            meshes.append(m)
    elif isinstance(value, Function) and value.arity == 2:
        m = _graph_mesh(value, _rect(value.domain(), window), settings.mesh)
        if m is not None:
            meshes.append(m)
    elif isinstance(value, Plane):
        xy = np.array([(window.xmin, window.ymin), (window.xmax, window.ymin), (window.xmax, window.ymax), (window.xmin, window.ymax)])
        meshes.append(Mesh(np.column_stack([xy, value.a * xy[:, 0] + value.b * xy[:, 1] + value.c]), [(0, 1, 2, 3)]))
    elif isinstance(value, ParamCurve):
        pts = value.sample(settings.samples)
        if value.dim == 2:
            pts = np.column_stack([pts, np.zeros(len(pts))])
        lines.extend(split_polylines(pts))
    elif isinstance(value, (ContourSet, Locus)):
        for pl in value.polylines:
            pts = pl.vertices if pl.dim == 3 else np.column_stack([pl.vertices, np.zeros(len(pl))])
            lines.append(Polyline(pts, pl.closed))
    elif isinstance(value, (Circle, Function)):
        for kind, pts, closed in planar_paths(value, settings.window_2d("3d"), settings):
            lines.append(Polyline(np.column_stack([pts, np.zeros(len(pts))]), closed))
    elif isinstance(value, ListVal):
        for item in value.items:
            m, l, p = spatial_parts(item, settings)
            meshes += m
            lines += l
            points += p
    return meshes, lines, points


# -- assembly ------------------------------------------------------------------


def node_rgb(node) -> tuple[float, float, float]:
    if node.style.rgb is not None:
        return clamp_rgb(node.style.rgb)
    return PALETTE[node.id % len(PALETTE)]


def present_views(graph) -> list[str]:
    views = {n.view for n in graph.nodes.values()}
    return [v for v in ("2d", "2d2", "3d") if v in views]


def build_scene_2d(graph, view: str) -> Scene2D:
    window = graph.settings.window(view)
    scene = Scene2D(view, window)
    for node in sorted(graph.nodes.values(), key=lambda n: n.id):
        if node.view != view or not node.style.visible or is_scalar(node.value):
            continue
        rgb = node_rgb(node)
        for kind, pts, closed in planar_paths(node.value, window, graph.settings):
            if kind == "point":
                scene.items.append(DrawItem(node.name, "point", pts, rgb=rgb))
            else:
                scene.items.append(DrawItem(node.name, "path", pts, closed, rgb, node.style.width, kind == "polygon"))
    return scene


def build_scene_3d(graph) -> Scene3D:
    scene = Scene3D()
    for node in sorted(graph.nodes.values(), key=lambda n: n.id):
        if node.view != "3d" or not node.style.visible:
            continue
        meshes, lines, points = spatial_parts(node.value, graph.settings)
        scene.meshes += [(node.name, m) for m in meshes]
        scene.polylines += [(node.name, l) for l in lines]
        scene.points += [(node.name, p) for p in points]
    return scene

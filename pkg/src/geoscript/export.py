"""Byte-stable SVG, OBJ and CSV writers."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np

from .kernel.geometry import Mesh, Polyline, split_polylines
from .kernel.sampling import sample_function_graph
from .kernel.unfold import Cube, Net
from .scene import Scene2D, Scene3D, clamp_rgb, planar_paths, spatial_parts
from .settings import Settings
from .values import (
    Circle,
    ContourSet,
    EvalError,
    Function,
    ListVal,
    Locus,
    ParamCurve,
    Point2,
    Point3,
    PolylineVal,
    Polygon,
    Segment,
    kind_name,
)

POINT_RADIUS = 3.0
MIN_PIXELS = 16


def fmt(v: float, digits: int) -> str:
    s = format(float(v), f".{digits}g")
    return "0" if s == "-0" else s


def _write(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- SVG -----------------------------------------------------------------------


def to_pixels(pts: np.ndarray, scene: Scene2D, size: tuple[int, int]) -> np.ndarray:
    w, h = size
    win = scene.window
    px = (pts[:, 0] - win.xmin) / (win.xmax - win.xmin) * w
    py = (win.ymax - pts[:, 1]) / (win.ymax - win.ymin) * h
    return np.column_stack([px, py])


def _rgb(rgb) -> str:
    r, g, b = clamp_rgb(rgb)
    return f"rgb({fmt(100 * r, 6)}%,{fmt(100 * g, 6)}%,{fmt(100 * b, 6)}%)"


def svg_text(scene: Scene2D, size: tuple[int, int] = (800, 800)) -> str:
    w, h = size
    if w < MIN_PIXELS or h < MIN_PIXELS:
        raise ValueError(f"SVG size must be at least {MIN_PIXELS}x{MIN_PIXELS}, got {w}x{h}")
    lines = [
        '<?xml version="1.0"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
    ]
    for item in scene.items:
        px = to_pixels(item.vertices, scene, size)
        color = _rgb(item.rgb)
        if item.kind == "point":
            x, y = px[0]
            lines.append(f'<circle cx="{fmt(x, 6)}" cy="{fmt(y, 6)}" r="{fmt(POINT_RADIUS, 6)}" fill="{color}"><title>{item.name}</title></circle>')
            continue
        d = "M" + " L".join(f"{fmt(x, 6)} {fmt(y, 6)}" for x, y in px)
        if item.closed:
            d += " Z"
        fill = f'fill="{color}" fill-opacity="0.2"' if item.fill else 'fill="none"'
        lines.append(
            f'<path d="{d}" {fill} stroke="{color}" stroke-width="{fmt(item.width, 6)}"><title>{item.name}</title></path>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_svg(scene: Scene2D, size: tuple[int, int], path) -> None:
    _write(path, svg_text(scene, size))


# -- OBJ -----------------------------------------------------------------------


def obj_text(scene: Scene3D) -> str:
    """Meshes only: the OBJ subset written here has no point or line records."""
    if not scene.meshes:
        raise ValueError("3D scene has no surfaces to write")
    v_lines: list[str] = []
    f_lines: list[str] = []
    base = 0
    for _, mesh in scene.meshes:
        for x, y, z in mesh.vertices:
            v_lines.append(f"v {fmt(x, 9)} {fmt(y, 9)} {fmt(z, 9)}")
        for face in mesh.faces:
            f_lines.append("f " + " ".join(str(base + i + 1) for i in face))
        base += len(mesh.vertices)
    return "\n".join(v_lines + f_lines) + "\n"


def export_obj(scene: Scene3D, path) -> None:
    _write(path, obj_text(scene))


# -- CSV -----------------------------------------------------------------------


def samples_of(value: Any, settings: Settings | None = None) -> list[np.ndarray]:
    """Vertex arrays (one per component) describing ``value`` for CSV export."""
    settings = settings or Settings()
    if isinstance(value, Polyline):
        return [value.vertices]
    if isinstance(value, (Point2, Point3)):
        return [value.coords()[None, :]]
    if isinstance(value, (ContourSet, Locus)):
        return [pl.vertices for pl in value.polylines]
    if isinstance(value, (Polygon, PolylineVal)):
        return [value.coords()]
    if isinstance(value, Segment):
        return [np.array([value.a.coords(), value.b.coords()])]
    if isinstance(value, ParamCurve):
        return [pl.vertices for pl in split_polylines(value.sample(settings.samples))]
    if isinstance(value, Circle):
        return [p for _, p, _ in planar_paths(value, settings.window("2d"), settings)]
    if isinstance(value, Function) and value.arity == 1:
        return sample_function_graph(value, settings.window("2d"), settings.samples, value.domain()[0])
    if isinstance(value, Net):
        return value.quads()
    if isinstance(value, Cube):
        return [value.coords()]
    if isinstance(value, ListVal):
        if value.items and all(isinstance(i, (Point2, Point3)) for i in value.items):
            return [np.array([i.coords() for i in value.items])]
        out = []
        for item in value.items:
            out.extend(samples_of(item, settings))
        return out
    meshes, _, _ = spatial_parts(value, settings)
    if meshes:
        return [m.vertices for m in meshes]
    raise EvalError(f"{kind_name(value)} has no samples to export")


def csv_text(components: list[np.ndarray]) -> str:
    dims = {np.asarray(c).shape[1] for c in components if len(c)}
    dim = max(dims) if dims else 2
    header = "component,index,x,y" + (",z" if dim == 3 else "")
    rows = [header]
    for k, comp in enumerate(components):
        for i, p in enumerate(np.asarray(comp, dtype=float)):
            coords = list(p) + [0.0] * (dim - len(p))
            rows.append(f"{k},{i}," + ",".join(fmt(c, 12) for c in coords))
    return "\n".join(rows) + "\n"


def export_csv(samples: Any, path, settings: Settings | None = None) -> None:
    components = samples if isinstance(samples, list) and all(isinstance(s, np.ndarray) for s in samples) else samples_of(samples, settings)
    _write(path, csv_text(components))


def read_csv(path) -> list[np.ndarray]:
    """Parse a file written by :func:`export_csv` back into component arrays."""
    text = Path(path).read_text(encoding="utf-8").splitlines()
    comps: dict[int, list[list[float]]] = {}
    for line in text[1:]:
        fields = line.split(",")
        comps.setdefault(int(fields[0]), []).append([float(v) for v in fields[2:]])
    return [np.array(comps[k]) for k in sorted(comps)]


def write_mesh_obj(mesh: Mesh, path) -> None:
    export_obj(Scene3D(meshes=[("mesh", mesh)]), path)


__all__ = [
    "export_svg",
    "export_obj",
    "export_csv",
    "samples_of",
    "read_csv",
    "svg_text",
    "obj_text",
    "csv_text",
    "fmt",
    "write_mesh_obj",
]

from __future__ import annotations

import re

import numpy as np
import pytest

from conftest import build
from geoscript.export import (
    csv_text,
    export_csv,
    export_obj,
    export_svg,
    obj_text,
    read_csv,
    samples_of,
    svg_text,
    to_pixels,
)
from geoscript.kernel.geometry import Mesh, Polyline, Window2
from geoscript.kernel.surfaces import tessellate_surface
from geoscript.kernel.unfold import build_cube, build_net
from geoscript.scene import DrawItem, Scene2D, Scene3D, build_scene_2d, build_scene_3d, clamp_rgb
from geoscript.values import ContourSet, ParamSurface

UNIT = Window2(0.0, 1.0, 0.0, 1.0)


# -- SVG ---------------------------------------------------------------------------


def test_corner_mapping_flips_y():
    scene = Scene2D("2d", UNIT)
    px = to_pixels(np.array([[0.0, 0.0], [1.0, 1.0]]), scene, (100, 100))
    assert np.array_equal(px, [[0, 100], [100, 0]])


def test_color_clamp():
    assert clamp_rgb((1.7, -0.2, 0.5)) == (1.0, 0.0, 0.5)
    scene = Scene2D("2d", UNIT, [DrawItem("p", "point", np.array([[0.5, 0.5]]), rgb=(1.7, -0.2, 0.5))])
    assert 'fill="rgb(100%,0%,50%)"' in svg_text(scene, (100, 100))


def _scene():
    items = [
        DrawItem("a", "path", np.array([[0.1, 0.1], [0.5, 0.9], [0.9, 0.2]]), rgb=(0.2, 0.4, 0.6)),
        DrawItem("b", "path", np.array([[0.2, 0.2], [0.8, 0.2], [0.5, 0.7]]), closed=True, fill=True),
        DrawItem("P", "point", np.array([[0.3, 0.3]])),
    ]
    return Scene2D("2d", UNIT, items)


def test_svg_structure_and_precision():
    text = svg_text(_scene(), (100, 100))
    assert text.startswith('<?xml version="1.0"?>\n<svg ')
    assert 'version="1.1"' in text and 'viewBox="0 0 100 100"' in text
    assert text.count("<path ") == 2 and text.count("<circle ") == 1
    numbers = re.findall(r"-?\d+\.\d+", text)
    assert all(len(n.replace("-", "").replace(".", "").lstrip("0")) <= 6 for n in numbers)


def test_svg_path_vertex_count_matches():
    pts = np.column_stack([np.linspace(0, 1, 37), np.linspace(0, 1, 37) ** 2])
    text = svg_text(Scene2D("2d", UNIT, [DrawItem("c", "path", pts)]), (200, 200))
    d = re.search(r'd="([^"]+)"', text).group(1)
    assert d.count("M") + d.count("L") == 37


def test_svg_is_byte_stable(tmp_path):
    export_svg(_scene(), (100, 100), tmp_path / "a.svg")
    export_svg(_scene(), (100, 100), tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_svg_rejects_tiny_canvas():
    with pytest.raises(ValueError):
        svg_text(_scene(), (8, 100))


def test_draw_order_is_construction_order():
    g = build("A=(1,1)\nc=Circunferência((0,0), (2,0))\nB=(2,2)\nf(x)=x/2")
    scene = build_scene_2d(g, "2d")
    assert [i.name for i in scene.items] == ["A", "c", "B", "f"]
    assert all(0 <= ch <= 1 for i in scene.items for ch in i.rgb)


def test_scalars_are_not_drawn():
    g = build("a=3\nm=Seletor(0,1,1)\nA=(1,1)")
    assert [i.name for i in build_scene_2d(g, "2d").items] == ["A"]


# -- OBJ ---------------------------------------------------------------------------


def _obj_records(text):
    lines = text.splitlines()
    return [l for l in lines if l.startswith("v ")], [l for l in lines if l.startswith("f ")], lines


def test_obj_patch_counts():
    patch = ParamSurface(lambda u, v: (u, v, u * v), (0.0, 1.0), (0.0, 1.0))
    v, f, lines = _obj_records(obj_text(Scene3D(meshes=[("s", tessellate_surface(patch, 2, 2))])))
    assert len(v) == 9 and len(f) == 4 and len(lines) == 13
    assert lines.index(f[0]) > lines.index(v[-1])
    indices = [int(i) for rec in f for i in rec.split()[1:]]
    assert min(indices) >= 1 and max(indices) <= 9
    assert all(len(rec.split()) == 5 for rec in f)


def test_obj_indices_offset_across_meshes():
    m = Mesh(np.eye(3), [(0, 1, 2)])
    _, f, _ = _obj_records(obj_text(Scene3D(meshes=[("a", m), ("b", m)])))
    assert f == ["f 1 2 3", "f 4 5 6"]


def test_folded_net_obj_vertices_are_cube_vertices():
    cube = build_cube([0, 0, 0], [1, 0, 0])
    quads = build_net(cube, 0.0).quads()
    mesh = Mesh(np.vstack(quads), [tuple(range(4 * i, 4 * i + 4)) for i in range(6)])
    v, f, _ = _obj_records(obj_text(Scene3D(meshes=[("n", mesh)])))
    assert len(v) == 24 and len(f) == 6
    coords = {tuple(float(c) for c in rec.split()[1:]) for rec in v}
    assert coords == {tuple(p) for p in cube.coords()}


def test_obj_needs_geometry():
    with pytest.raises(ValueError):
        obj_text(Scene3D())


def test_3d_scene_from_graph():
    g = build("A=(0,0,0)\nB=(1,0,0)\nCb=Cubo(A, B)\nh(x,y)=Função(x+y, x, 0, 1, y, 0, 1)")
    scene = build_scene_3d(g)
    assert [n for n, _ in scene.meshes] == ["Cb", "h"]
    assert len(scene.points) == 2
    assert all(np.all(np.isfinite(m.vertices)) for _, m in scene.meshes)


# -- CSV ---------------------------------------------------------------------------


def test_csv_polyline_rows():
    text = csv_text(samples_of(Polyline(np.array([[0, 0], [1, 1], [2, 0]], dtype=float))))
    assert text.splitlines() == ["component,index,x,y", "0,0,0,0", "0,1,1,1", "0,2,2,0"]


def test_csv_contour_components():
    cs = ContourSet(
        [Polyline(np.array([[0, 0], [1, 0]], dtype=float)), Polyline(np.array([[0, 1], [1, 1]], dtype=float))],
        0.0,
        UNIT,
    )
    rows = csv_text(samples_of(cs)).splitlines()[1:]
    assert sorted({r.split(",")[0] for r in rows}) == ["0", "1"]


def test_csv_3d_header():
    assert csv_text([np.array([[1.0, 2.0, 3.0]])]).splitlines()[0] == "component,index,x,y,z"


def test_csv_round_trip(tmp_path):
    rng = np.random.default_rng(11)
    comps = [rng.normal(size=(17, 2)) * 100, rng.normal(size=(5, 2))]
    export_csv(comps, tmp_path / "p.csv")
    back = read_csv(tmp_path / "p.csv")
    assert all(np.abs(a - b).max() <= 1e-10 * max(1, np.abs(a).max()) for a, b in zip(comps, back))


def test_csv_of_graph_objects():
    g = build("c=Circunferência((0,0), (1,0))\nA=(1,2)\nL={(0,0), (1,1), (2,0)}")
    assert samples_of(g.value("A"))[0].shape == (1, 2)
    assert samples_of(g.value("L"))[0].shape == (3, 2)
    assert np.allclose(np.linalg.norm(samples_of(g.value("c"))[0], axis=1), 1.0)

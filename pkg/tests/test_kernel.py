from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings as hsettings, strategies as st
from scipy.interpolate import CubicSpline as ScipySpline

from geoscript.kernel.complexmath import cadd, cdiv, cmul, creciprocal, csub, joukowski
from geoscript.kernel.contour import marching_squares, refine_crossing
from geoscript.kernel.geometry import Polyline, RigidTransform, Window2, clip_segment, split_polylines
from geoscript.kernel.locus import trace_locus
from geoscript.kernel.planar import plane_view_basis, shoelace_area
from geoscript.kernel.sampling import sample_function_graph
from geoscript.kernel.spline import _solve_tridiagonal, spline_fit
from geoscript.kernel.surfaces import revolve_curve, tessellate_surface
from geoscript.kernel.unfold import (
    EDGE_NAMES,
    FACE_NAMES,
    NetError,
    build_cube,
    build_hinge_tree,
    build_net,
    unfold_cube_transforms,
)
from geoscript.values import ParamCurve, ParamSurface, Point2

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
SQUARE = Window2(-2.0, 2.0, -2.0, 2.0)


# -- spline ------------------------------------------------------------------------


def _distinct_points(draw_pts):
    pts = np.array(draw_pts, dtype=float)
    return pts if np.all(np.linalg.norm(np.diff(pts, axis=0), axis=1) > 1e-3) else None


point_lists = st.lists(st.tuples(coord, coord), min_size=3, max_size=9)


@hsettings(max_examples=150, deadline=None)
@given(point_lists)
def test_spline_matches_independent_natural_spline(raw):
    pts = _distinct_points(raw)
    assume(pts is not None)
    chords = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    knots = np.concatenate([[0.0], np.cumsum(chords)]) / chords.sum()
    assume(np.all(np.diff(knots) > 1e-6))
    oracle = ScipySpline(knots, pts, bc_type="natural")
    s = spline_fit(pts)
    t = np.linspace(0, 1, 301)
    scale = max(1.0, np.abs(pts).max())
    assert np.abs(s(t) - oracle(t)).max() <= 1e-7 * scale
    assert np.abs(s(knots) - pts).max() <= 1e-9 * scale
    assert np.abs(s.second_derivative(np.array([0.0, 1.0]))).max() <= 1e-6


def test_spline_collinear_three_points():
    s = spline_fit([(0, 0), (1, 2), (3, 6)])
    p = s(np.linspace(0, 1, 1000))
    assert np.abs(p[:, 1] - 2 * p[:, 0]).max() <= 1e-9


def test_spline_reversal_symmetry():
    pts = np.array([(0, 0), (1, 2), (2.5, 1), (4, 3), (5, -1)], dtype=float)
    fwd, back = spline_fit(pts), spline_fit(pts[::-1])
    t = np.linspace(0, 1, 257)
    assert np.abs(fwd(t) - back(1 - t)).max() <= 1e-9


def test_spline_rejects_bad_input():
    with pytest.raises(ValueError):
        spline_fit([(0, 0), (1, 1)])
    with pytest.raises(ValueError):
        spline_fit([(0, 0), (0, 0), (1, 1)])


def test_tridiagonal_solver_matches_dense_solve():
    rng = np.random.default_rng(7)
    n = 9
    lower, upper = rng.uniform(0, 1, n), rng.uniform(0, 1, n)
    diag = 4 + rng.uniform(0, 1, n)
    rhs = rng.normal(size=(n, 2))
    dense = np.diag(diag) + np.diag(lower[1:], -1) + np.diag(upper[:-1], 1)
    assert np.allclose(_solve_tridiagonal(lower, diag, upper, rhs), np.linalg.solve(dense, rhs), atol=1e-13)


# -- revolution and tessellation -----------------------------------------------------


def _curve(fn, lo=0.0, hi=1.0):
    return ParamCurve(fn, lo, hi, 2)


def test_revolution_slices():
    c = _curve(lambda u: np.column_stack([u, 1 + u**2]))
    s = revolve_curve(c, 2 * np.pi, "x")
    u = np.linspace(0, 1, 11)
    x, y, z = s.fn(u, np.zeros_like(u))
    assert np.array_equal(np.column_stack([x, y]), c(u)) and np.all(z == 0)
    for v in np.linspace(0, 2 * np.pi, 13):
        x, y, z = s.fn(u, np.full_like(u, v))
        assert np.allclose(np.hypot(y, z), 1 + u**2, atol=1e-12, rtol=0)


def test_half_cylinder():
    s = revolve_curve(_curve(lambda u: np.column_stack([u, np.ones_like(u)])), np.pi, "x")
    u, v = np.meshgrid(np.linspace(0, 1, 9), np.linspace(0, np.pi, 9))
    _, y, z = s.fn(u, v)
    assert np.abs(np.hypot(y, z) - 1).max() <= 1e-15
    assert s.v_range == (0.0, np.pi)


def test_revolution_about_y():
    s = revolve_curve(_curve(lambda u: np.column_stack([1 + u, u])), 2 * np.pi, "y")
    u = np.linspace(0, 1, 5)
    x, y, z = s.fn(u, np.full_like(u, 1.0))
    assert np.allclose(y, u) and np.allclose(np.hypot(x, z), 1 + u)


def _plane_patch():
    return ParamSurface(lambda u, v: (u, v, 0 * u), (0.0, 1.0), (0.0, 1.0))


def test_tessellation_counts():
    mesh = tessellate_surface(_plane_patch(), 2, 2)
    assert len(mesh.vertices) == 9 and len(mesh.faces) == 4


@hsettings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.integers(2, 12))
def test_tessellation_count_invariant(nu, nv):
    mesh = tessellate_surface(_plane_patch(), nu, nv)
    assert len(mesh.vertices) == (nu + 1) * (nv + 1)
    assert len(mesh.faces) == nu * nv
    assert all(0 <= i < len(mesh.vertices) for f in mesh.faces for i in f)


def test_torus_welds_into_closed_surface():
    torus = ParamSurface(
        lambda u, v: ((2 + np.cos(u)) * np.cos(v), (2 + np.cos(u)) * np.sin(v), np.sin(u)),
        (0.0, 2 * np.pi),
        (0.0, 2 * np.pi),
    )
    nu, nv = 16, 24
    mesh = tessellate_surface(torus, nu, nv)
    assert len(mesh.vertices) == nu * nv and len(mesh.faces) == nu * nv
    edges = {tuple(sorted((f[i], f[(i + 1) % 4]))) for f in mesh.faces for i in range(4)}
    assert len(mesh.vertices) - len(edges) + len(mesh.faces) == 0


def test_undefined_strip_is_culled():
    def fn(u, v):
        z = np.where(u > 0.5, np.nan, 0 * u)
        return u, v, z

    mesh = tessellate_surface(ParamSurface(fn, (0.0, 1.0), (0.0, 1.0)), 4, 4)
    assert len(mesh.faces) == 8
    assert np.all(np.isfinite(mesh.vertices))


def test_tessellation_rejects_tiny_grid():
    with pytest.raises(ValueError):
        tessellate_surface(_plane_patch(), 1, 4)


# -- contours ----------------------------------------------------------------------


def circle_g(x, y):
    return x * x + y * y


def test_circle_contour():
    cs = marching_squares(circle_g, 1.0, SQUARE, 200, 200)
    assert len(cs.polylines) == 1 and cs.polylines[0].closed
    assert np.abs(np.linalg.norm(cs.polylines[0].vertices, axis=1) - 1).max() <= 1e-6


def test_contour_below_range_is_empty():
    assert marching_squares(circle_g, -1.0, SQUARE, 50, 50).polylines == []


def test_saddle_gives_the_two_axes():
    cs = marching_squares(lambda x, y: x * y, 0.0, Window2(-1.05, 1.0, -1.05, 1.0), 21, 21)
    assert len(cs.polylines) == 2
    v = np.vstack([pl.vertices for pl in cs.polylines])
    assert np.all(np.minimum(np.abs(v[:, 0]), np.abs(v[:, 1])) <= 1e-9)
    # both axes are fully covered
    assert np.ptp(v[np.abs(v[:, 1]) <= 1e-9, 0]) >= 2.0 and np.ptp(v[np.abs(v[:, 0]) <= 1e-9, 1]) >= 2.0


def test_contour_vertices_are_distinct():
    cs = marching_squares(lambda x, y: np.sin(x) ** 2 + np.cos(y) ** 2, 0.5, Window2(-np.pi, np.pi, -np.pi, np.pi), 80, 80)
    for pl in cs.polylines:
        assert np.linalg.norm(np.diff(pl.vertices, axis=0), axis=1).min() >= 1e-12


def test_nonfinite_cells_are_skipped():
    cs = marching_squares(lambda x, y: np.where(x > 0, np.nan, x * x + y * y), 1.0, SQUARE, 40, 40)
    assert cs.polylines and all(np.all(pl.vertices[:, 0] <= 0.1 + 1e-9) for pl in cs.polylines)


@pytest.mark.parametrize(
    "g, k",
    [
        (circle_g, 1.0),
        (lambda x, y: np.sin(x) ** 2 + np.cos(y) ** 2, 0.25),
        (lambda x, y: x**3 - 3 * x * y**2, 0.5),
    ],
)
def test_refinement_error_does_not_grow_with_resolution(g, k):
    errors = []
    for n in (25, 50, 100, 200):
        cs = marching_squares(g, k, SQUARE, n, n)
        errors.append(max(float(np.abs(g(p.vertices[:, 0], p.vertices[:, 1]) - k).max()) for p in cs.polylines))
    for prev, cur in zip(errors, errors[1:]):
        assert cur <= max(prev, 1e-9)


def test_refine_crossing_linear_and_cubic():
    assert np.abs(refine_crossing(lambda x, y: x, 0.0, (-1, 0), (1, 0))).max() <= 1e-9
    p = refine_crossing(lambda x, y: x**3, 0.0, (-1, 0), (1, 0.0))
    assert abs(p[0]) ** 3 <= 1e-9


def test_refine_crossing_keeps_satisfying_endpoint():
    assert np.array_equal(refine_crossing(lambda x, y: x, 0.0, (0.0, 0.5), (1.0, 0.5)), [0.0, 0.5])


def test_contour_is_pure():
    a = marching_squares(circle_g, 1.0, SQUARE, 60, 60)
    b = marching_squares(circle_g, 1.0, SQUARE, 60, 60)
    assert all(np.array_equal(p.vertices, q.vertices) for p, q in zip(a.polylines, b.polylines))


# -- unfolding ---------------------------------------------------------------------

CUBE = build_cube([0, 0, 0], [1, 0, 0])


def _lengths(q):
    return np.array([np.linalg.norm(q[(i + 1) % 4] - q[i]) for i in range(4)] + [np.linalg.norm(q[2] - q[0]), np.linalg.norm(q[3] - q[1])])


def test_folded_transforms_are_identity():
    tf = unfold_cube_transforms(CUBE, build_hinge_tree(), 0.0)
    for f in FACE_NAMES:
        assert np.array_equal(tf[f].apply(CUBE.face(f)), CUBE.face(f))


def test_flat_transforms_lie_in_the_base_plane():
    tf = unfold_cube_transforms(CUBE, build_hinge_tree(), 1.0)
    assert max(np.abs(tf[f].apply(CUBE.face(f))[:, 2]).max() for f in FACE_NAMES) <= 1e-9


@hsettings(max_examples=80, deadline=None)
@given(st.floats(0, 1), st.lists(st.sampled_from(EDGE_NAMES), max_size=7, unique=True))
def test_unfolding_is_isometric_and_hinged(t, cuts):
    try:
        tree = build_hinge_tree("ABCD", cuts)
    except NetError:
        return
    tf = unfold_cube_transforms(CUBE, tree, t)
    for f in FACE_NAMES:
        r = tf[f].rotation
        assert np.abs(r @ r.T - np.eye(3)).max() <= 1e-12 and abs(np.linalg.det(r) - 1) <= 1e-12
        assert np.abs(_lengths(tf[f].apply(CUBE.face(f))) - _lengths(CUBE.face(f))).max() <= 1e-9
    for face, (parent, edge) in tree.parent.items():
        ends = np.array([CUBE.vertices[edge[0]], CUBE.vertices[edge[1]]])
        assert np.abs(tf[face].apply(ends) - tf[parent].apply(ends)).max() <= 1e-12


@pytest.mark.parametrize(
    "cuts",
    [
        (),
        ("BC", "CD", "CG", "DH"),
        ("AB", "AE", "BC", "BF"),
    ],
)
def test_flat_nets_do_not_overlap(cuts):
    quads = build_net(CUBE, 1.0, "ABCD", cuts).quads()
    centers = np.array([q[:, :2].mean(axis=0) for q in quads])
    gaps = [np.abs(a - b).max() for a, b in itertools.combinations(centers, 2)]
    assert min(gaps) >= 1 - 1e-9


def test_disconnecting_cuts_raise():
    with pytest.raises(NetError):
        build_hinge_tree("ABCD", ("AB", "BC", "CD", "DA"))


def test_rigid_transform_about_axis():
    r = RigidTransform.about_axis([0, 0, 0], [0, 0, 1], np.pi / 2)
    assert np.allclose(r.apply(np.array([[1.0, 0, 0]])), [[0, 1, 0]], atol=1e-15)


# -- complex -----------------------------------------------------------------------


def test_complex_examples():
    assert tuple(map(float, cmul((1, 1), (1, -1)))) == (2.0, 0.0)
    assert tuple(map(float, joukowski((1, 0)))) == (2.0, 0.0)
    assert tuple(map(float, joukowski((0, 1)))) == (0.0, 0.0)
    for th in (0.0, np.pi / 3, np.pi / 2):
        re, im = joukowski((np.cos(th), np.sin(th)))
        assert abs(re - 2 * np.cos(th)) <= 1e-15 and abs(im) <= 1e-15


def test_division_by_exact_zero_is_undefined():
    assert all(np.isnan(v) for v in cdiv((1, 1), (0, 0)))
    assert all(np.isnan(v) for v in creciprocal((0.0, 0.0)))


@hsettings(max_examples=200, deadline=None)
@given(coord, coord, coord, coord)
def test_complex_field_laws(a, b, c, d):
    w, z = (a, b), (c, d)
    assert np.allclose(cadd(w, z), cadd(z, w)) and np.allclose(cmul(w, z), cmul(z, w))
    assert np.allclose(csub(cadd(w, z), z), w, atol=1e-12)
    assume(math.hypot(c, d) > 1e-3)
    assert np.allclose(cdiv(cmul(w, z), z), w, atol=1e-9)
    assert np.allclose(cmul(z, creciprocal(z)), (1, 0), atol=1e-12)


def test_complex_matches_python_complex():
    rng = np.random.default_rng(3)
    for _ in range(50):
        w, z = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        assert complex(*cdiv((w.real, w.imag), (z.real, z.imag))) == pytest.approx(w / z, abs=1e-14)
        assert complex(*cmul((w.real, w.imag), (z.real, z.imag))) == pytest.approx(w * z, abs=1e-14)


# -- planar views ----------------------------------------------------------------------


def test_rhombus_view():
    flat, _, basis = plane_view_basis([(0, 0, 0), (1, 0, 1), (1, 1, 2), (0, 1, 1)])
    sides = [np.linalg.norm(flat[(i + 1) % 4] - flat[i]) for i in range(4)]
    assert np.abs(np.array(sides) - math.sqrt(2)).max() <= 1e-12
    assert abs(shoelace_area(flat) - math.sqrt(3)) <= 1e-12
    assert np.allclose(basis @ basis.T, np.eye(2), atol=1e-15)


def test_horizontal_view_is_rigid():
    pts = np.array([(0, 0, 2), (3, 0, 2), (3, 1, 2), (1, 4, 2)], dtype=float)
    flat, _, _ = plane_view_basis(pts)
    d2 = np.linalg.norm(flat[:, None] - flat[None], axis=2)
    d3 = np.linalg.norm(pts[:, None, :2] - pts[None, :, :2], axis=2)
    assert np.abs(d2 - d3).max() <= 1e-12


@hsettings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=3, max_size=7), st.floats(0, 2 * np.pi), st.floats(0, np.pi), coord)
def test_plane_view_is_an_isometry(raw, yaw, pitch, shift):
    uv = np.array(raw)
    assume(np.linalg.norm(uv[1] - uv[0]) > 1e-3)
    e1, e2 = uv[1] - uv[0], uv[2] - uv[0]
    assume(abs(e1[0] * e2[1] - e1[1] * e2[0]) > 1e-2)
    frame = RigidTransform.about_axis([0, 0, 0], [np.cos(yaw), np.sin(yaw), 0], pitch)
    pts = frame.apply(np.column_stack([uv, np.zeros(len(uv))])) + shift
    try:
        flat, _, _ = plane_view_basis(pts)
    except ValueError:
        assume(False)
    d2 = np.linalg.norm(flat[:, None] - flat[None], axis=2)
    d3 = np.linalg.norm(pts[:, None] - pts[None], axis=2)
    assert np.abs(d2 - d3).max() <= 1e-12 * max(1.0, d3.max())


def test_non_coplanar_rejected():
    with pytest.raises(ValueError, match="coplanar"):
        plane_view_basis([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 1)])


# -- graph sampling --------------------------------------------------------------------


def test_semicircle_sampled_on_its_domain():
    with np.errstate(invalid="ignore"):
        pieces = sample_function_graph(lambda x: 3 + np.sqrt(1 - x**2), Window2(-2, 2, 0, 5), 401)
    xs = np.concatenate([p[:, 0] for p in pieces])
    assert xs.min() >= -1 and xs.max() <= 1


def test_identity_with_two_samples():
    [piece] = sample_function_graph(lambda x: x, SQUARE, 2, (-1, 1))
    assert np.array_equal(piece, [[-1, -1], [1, 1]])


def test_half_line_clamped_to_window():
    [piece] = sample_function_graph(lambda x: x, SQUARE, 50, (0, np.inf))
    assert piece[0, 0] == 0 and piece[-1, 0] == 2


def test_empty_visible_domain():
    assert sample_function_graph(lambda x: x, SQUARE, 50, (3, 4)) == []


# -- locus tracing and polylines -----------------------------------------------------


def _ring(n, r=1.0):
    th = 2 * np.pi * np.arange(n + 1) / n
    return [Point2(np.float64(r * np.cos(a)), np.float64(r * np.sin(a))) for a in th]


def test_locus_of_closed_sweep_is_closed():
    loc = trace_locus(_ring(64), 1.0)
    [pl] = loc.polylines
    assert pl.closed and len(pl.vertices) == 64


def test_locus_splits_on_undefined_and_jumps():
    pts = _ring(64)
    pts[10] = Point2(np.float64(np.nan), np.float64(np.nan))
    assert len(trace_locus(pts, 1.0).polylines) == 2
    jumpy = [Point2(np.float64(x), np.float64(0.0)) for x in (0, 0.1, 0.2, 5.0, 5.1, 5.2)]
    assert len(trace_locus(jumpy, 1.0).polylines) == 2


def test_split_polylines_drops_repeats():
    [pl] = split_polylines(np.array([[0, 0], [0, 0], [1, 0], [1, 1e-14], [2, 0]], dtype=float))
    assert len(pl.vertices) == 3 and np.linalg.norm(np.diff(pl.vertices, axis=0), axis=1).min() >= 1e-12


def test_polyline_closed_vertices():
    pl = Polyline(np.array([[0, 0], [1, 0], [1, 1]], dtype=float), closed=True)
    assert np.array_equal(pl.closed_vertices()[-1], [0, 0])


def test_clip_segment_to_window():
    seg = clip_segment(np.array([-4.0, 0.0]), np.array([4.0, 0.0]), SQUARE)
    assert np.allclose(seg, [[-2, 0], [2, 0]])
    assert clip_segment(np.array([3.0, 3.0]), np.array([4.0, 4.0]), SQUARE) is None


def test_window_invariant():
    with pytest.raises(ValueError):
        Window2(1, 1, 0, 1)
    assert Window2.parse("-1:1:-2:2").diagonal == pytest.approx(math.hypot(2, 4))

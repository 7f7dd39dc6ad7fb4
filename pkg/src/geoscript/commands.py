"""Semantics of the builtin commands.

Every command receives the evaluator, its unevaluated :class:`Call` and the
current binding environment, because several commands bind variables
(Sequência, Soma, Curva, Função, SuperfícieLateral) or take bare face and
edge names (Planificação, PontoFace).
"""

from __future__ import annotations

from typing import Any, Callable

import numpy as np

from .analysis import implicit_function_var
from .kernel.contour import marching_squares
from .kernel.geometry import Polyline
from .kernel.planar import plane_view_basis, shoelace_area
from .kernel.spline import spline_fit
from .kernel.surfaces import revolve_curve
from .kernel.unfold import Cube, Net, NetError, build_cube, build_net, net_attach
from .syntax import Call, Expr, Ident
from .values import (
    UNDEFINED,
    Axis,
    Circle,
    ContourSet,
    EvalError,
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
    Slider,
    kind_name,
)

Impl = Callable[[Any, Call, dict], Any]
_COMMANDS: dict[str, Impl] = {}


def command(*keys: str):
    def register(fn: Impl) -> Impl:
        for k in keys:
            _COMMANDS[k] = fn
        return fn

    return register


def dispatch(key: str, ev, call: Call, env: dict):
    impl = _COMMANDS.get(key)
    if impl is None:
        raise EvalError(f"{call.name} is a style command and cannot appear inside an expression")
    return impl(ev, call, env)


def _arity(call: Call, *allowed: int) -> int:
    n = len(call.args)
    if n not in allowed:
        want = " or ".join(str(a) for a in allowed)
        raise EvalError(f"{call.name} takes {want} arguments, got {n}")
    return n


def _scalar_value(v):
    from .evaluator import is_scalar

    return is_scalar(v)


def _point2(x, y) -> Point2:
    from .evaluator import point2

    return point2(x, y)


def coords(p) -> np.ndarray:
    if isinstance(p, Point2):
        return np.array([float(p.x), float(p.y)])
    if isinstance(p, Point3):
        return np.array([float(p.x), float(p.y), float(p.z)])
    raise EvalError(f"expected a point, got {kind_name(p)}")


def _as_point(xy: np.ndarray):
    return _point2(xy[0], xy[1]) if len(xy) == 2 else Point3(*(np.float64(c) for c in xy))


def _points_arg(ev, call: Call, env: dict, minimum: int) -> list:
    vals = [ev.eval(a, env) for a in call.args]
    if len(vals) == 1 and isinstance(vals[0], ListVal):
        vals = list(vals[0].items)
    if len(vals) < minimum:
        raise EvalError(f"{call.name} needs at least {minimum} points, got {len(vals)}")
    for v in vals:
        if not isinstance(v, (Point2, Point3)):
            raise EvalError(f"{call.name} expects points, got {kind_name(v)}")
    if len({type(v) for v in vals}) > 1:
        raise EvalError(f"{call.name} cannot mix 2D and 3D points")
    return vals


def _ident(expr: Expr, what: str) -> str:
    if not isinstance(expr, Ident):
        raise EvalError(f"expected a {what} name")
    return expr.name


# -- scalar functions ---------------------------------------------------------

_SCALAR_FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "ln": np.log,
    "abs": np.abs,
    "sqrt": np.sqrt,
    "cbrt": np.cbrt,
}


def scalar_function(key: str, v):
    from .evaluator import scalar

    if v is UNDEFINED:
        return np.float64(np.nan)
    if key == "abs" and isinstance(v, Point2):
        return scalar(np.hypot(v.x, v.y))
    if not _scalar_value(v):
        raise EvalError(f"{key} expects a number, got {kind_name(v)}")
    with np.errstate(all="ignore"):
        return scalar(_SCALAR_FUNCS[key](np.asarray(v, dtype=float)))


def _make_scalar(key: str) -> Impl:
    def impl(ev, call: Call, env: dict):
        _arity(call, 1)
        return scalar_function(key, ev.eval(call.args[0], env))

    return impl


for _k in _SCALAR_FUNCS:
    _COMMANDS[_k] = _make_scalar(_k)


def _make_accessor(axis: int) -> Impl:
    def impl(ev, call: Call, env: dict):
        _arity(call, 1)
        p = ev.eval(call.args[0], env)
        if isinstance(p, Point2):
            return (p.x, p.y, np.float64(0.0))[axis]
        if isinstance(p, Point3):
            return (p.x, p.y, p.z)[axis]
        return np.float64(np.nan)

    return impl


for _i, _k in enumerate("xyz"):
    _COMMANDS[_k] = _make_accessor(_i)


# -- sliders, functions, lists ----------------------------------------------------


@command("slider")
def cmd_slider(ev, call: Call, env: dict) -> Slider:
    if not 3 <= len(call.args) <= 9:
        raise EvalError(f"{call.name} takes 3 to 9 arguments, got {len(call.args)}")
    lo, hi, inc = (ev.eval_float(a, env) for a in call.args[:3])
    if not lo < hi:
        raise EvalError(f"slider needs min < max, got [{lo}, {hi}]")
    if not inc > 0:
        raise EvalError(f"slider increment must be positive, got {inc}")
    return Slider(lo, lo, hi, inc)


@command("function")
def cmd_function(ev, call: Call, env: dict):
    from .evaluator import scalar

    n = _arity(call, 3, 7)
    args = call.args
    if n == 3:
        var = implicit_function_var(args[0], ev.graph.objects)
        if var is None:
            raise EvalError("cannot tell which variable Função restricts")
        ranges = [(var, ev.eval_endpoint(args[1], env), ev.eval_endpoint(args[2], env))]
    else:
        ranges = [
            (_ident(args[1], "variable"), ev.eval_endpoint(args[2], env), ev.eval_endpoint(args[3], env)),
            (_ident(args[4], "variable"), ev.eval_endpoint(args[5], env), ev.eval_endpoint(args[6], env)),
        ]
    for var, lo, hi in ranges:
        if lo > hi:
            raise EvalError(f"empty domain for {var}: [{lo}, {hi}]")
    if not all(var in env for var, _, _ in ranges):
        return Function(tuple(v for v, _, _ in ranges), call, dict(env), ev)
    value = ev.eval(args[0], env)
    if not _scalar_value(value):
        raise EvalError(f"Função expects a numeric expression, got {kind_name(value)}")
    inside = np.ones(np.shape(value), dtype=bool)
    for var, lo, hi in ranges:
        t = np.asarray(env[var], dtype=float)
        inside = inside & (t >= lo) & (t <= hi)
    return scalar(np.where(inside, value, np.nan))


@command("sequence")
def cmd_sequence(ev, call: Call, env: dict) -> ListVal:
    n = _arity(call, 4, 5)
    var = _ident(call.args[1], "sequence variable")
    start = ev.eval_float(call.args[2], env)
    stop = ev.eval_float(call.args[3], env)
    step = ev.eval_float(call.args[4], env) if n == 5 else 1.0
    if step == 0:
        raise EvalError("sequence step must not be zero")
    count = int(np.floor((stop - start) / step + 1e-12)) + 1
    if count < 1:
        raise EvalError(f"sequence from {start} to {stop} never reached with step {step}")
    items = []
    for k in range(count):
        local = dict(env)
        local[var] = np.float64(start + k * step)
        items.append(ev.eval_value(call.args[0], local))
    return ListVal(items)


@command("sum")
def cmd_sum(ev, call: Call, env: dict):
    _arity(call, 4)
    var = _ident(call.args[1], "sum index")
    start = int(ev.eval_float(call.args[2], env))
    stop = int(ev.eval_float(call.args[3], env))
    total = None
    for k in range(start, stop + 1):
        local = dict(env)
        local[var] = np.float64(k)
        term = ev.eval(call.args[0], local)
        total = term if total is None else ev.binop("+", total, term)
    return np.float64(0.0) if total is None else total


@command("element")
def cmd_element(ev, call: Call, env: dict):
    _arity(call, 2)
    seq = ev.eval(call.args[0], env)
    if not isinstance(seq, ListVal):
        raise EvalError(f"Elemento expects a list, got {kind_name(seq)}")
    idx = ev.eval_float(call.args[1], env)
    if not np.isfinite(idx):
        return UNDEFINED
    k = int(idx)
    if 1 <= k <= len(seq):
        return seq.items[k - 1]
    return UNDEFINED


@command("length")
def cmd_length(ev, call: Call, env: dict):
    _arity(call, 1)
    v = ev.eval(call.args[0], env)
    if isinstance(v, ListVal):
        return np.float64(len(v))
    if isinstance(v, Segment):
        return np.float64(np.linalg.norm(coords(v.b) - coords(v.a)))
    raise EvalError(f"Comprimento expects a list or segment, got {kind_name(v)}")


# -- elementary constructions ---------------------------------------------------


@command("midpoint")
def cmd_midpoint(ev, call: Call, env: dict):
    n = _arity(call, 1, 2)
    if n == 1:
        seg = ev.eval(call.args[0], env)
        if not isinstance(seg, Segment):
            raise EvalError(f"PontoMédio of one object needs a segment, got {kind_name(seg)}")
        a, b = seg.a, seg.b
    else:
        a, b = (ev.eval(x, env) for x in call.args)
    return _as_point(0.5 * (coords(a) + coords(b)))


@command("segment")
def cmd_segment(ev, call: Call, env: dict) -> Segment:
    _arity(call, 2)
    a, b = _points_arg(ev, call, env, 2)
    return Segment(a, b)


@command("polygon")
def cmd_polygon(ev, call: Call, env: dict) -> Polygon:
    return Polygon(tuple(_points_arg(ev, call, env, 3)))


@command("polyline")
def cmd_polyline(ev, call: Call, env: dict) -> PolylineVal:
    return PolylineVal(tuple(_points_arg(ev, call, env, 2)))


@command("circle")
def cmd_circle(ev, call: Call, env: dict) -> Circle:
    _arity(call, 2)
    center = ev.eval(call.args[0], env)
    other = ev.eval(call.args[1], env)
    if not isinstance(center, Point2):
        raise EvalError(f"circle center must be a 2D point, got {kind_name(center)}")
    if isinstance(other, Point2):
        radius = float(np.hypot(float(other.x) - float(center.x), float(other.y) - float(center.y)))
    elif _scalar_value(other):
        radius = float(other)
        if radius < 0:
            raise EvalError("circle radius must be non-negative")
    else:
        raise EvalError(f"circle needs a point or a radius, got {kind_name(other)}")
    return Circle(center, radius)


def _line_of(v) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(v, Line):
        return v.point, v.direction
    if isinstance(v, Segment):
        a, b = coords(v.a), coords(v.b)
        if len(a) != 2:
            raise EvalError("only 2D segments define a mirror line")
        return a, b - a
    if isinstance(v, Axis) and v.name in ("x", "y"):
        return np.zeros(2), np.array([1.0, 0.0]) if v.name == "x" else np.array([0.0, 1.0])
    raise EvalError(f"expected a line, got {kind_name(v)}")


def _rot90(d: np.ndarray) -> np.ndarray:
    return np.array([-d[1], d[0]])


@command("perpbisector")
def cmd_perpbisector(ev, call: Call, env: dict) -> Line:
    n = _arity(call, 1, 2)
    if n == 1:
        seg = ev.eval(call.args[0], env)
        if not isinstance(seg, Segment):
            raise EvalError(f"Mediatriz of one object needs a segment, got {kind_name(seg)}")
        a, b = coords(seg.a), coords(seg.b)
    else:
        a, b = (coords(ev.eval(x, env)) for x in call.args)
    if len(a) != 2 or len(b) != 2:
        raise EvalError("Mediatriz needs 2D points")
    if np.array_equal(a, b):
        raise EvalError("Mediatriz needs two distinct points")
    return Line(0.5 * (a + b), _rot90(b - a))


@command("perpendicular")
def cmd_perpendicular(ev, call: Call, env: dict) -> Line:
    _arity(call, 2)
    p = coords(ev.eval(call.args[0], env))
    _, d = _line_of(ev.eval(call.args[1], env))
    if len(p) != 2:
        raise EvalError("Perpendicular needs a 2D point")
    return Line(p, _rot90(d))


def _reflector(point: np.ndarray, direction: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    u = direction / np.linalg.norm(direction)

    def reflect(pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        v = pts - point
        along = (v @ u)[..., None] * u
        return point + 2 * along - v

    return reflect


def _reflect_value(v, r: Callable[[np.ndarray], np.ndarray]):
    if isinstance(v, Point2):
        return _as_point(r(coords(v)))
    if isinstance(v, Segment):
        return Segment(_reflect_value(v.a, r), _reflect_value(v.b, r))
    if isinstance(v, Polygon):
        return Polygon(tuple(_reflect_value(p, r) for p in v.vertices))
    if isinstance(v, PolylineVal):
        return PolylineVal(tuple(_reflect_value(p, r) for p in v.vertices))
    if isinstance(v, Circle):
        return Circle(_reflect_value(v.center, r), v.radius)
    if isinstance(v, Line):
        p = r(v.point)
        return Line(p, r(v.point + v.direction) - p)
    if isinstance(v, ParamCurve) and v.dim == 2:
        fn = v.fn
        return ParamCurve(lambda t: r(fn(t)), v.lo, v.hi, 2, v.segments)
    if isinstance(v, ListVal):
        return ListVal([_reflect_value(item, r) for item in v.items])
    raise EvalError(f"cannot reflect {kind_name(v)}")


@command("reflect")
def cmd_reflect(ev, call: Call, env: dict):
    _arity(call, 2)
    obj = ev.eval(call.args[0], env)
    p, d = _line_of(ev.eval(call.args[1], env))
    if np.linalg.norm(d) == 0:
        raise EvalError("mirror line has no direction")
    return _reflect_value(obj, _reflector(np.asarray(p, dtype=float), np.asarray(d, dtype=float)))


# -- curves and surfaces -------------------------------------------------------


@command("curve")
def cmd_curve(ev, call: Call, env: dict) -> ParamCurve:
    n = _arity(call, 4, 5, 6)
    args = call.args
    var = _ident(args[-3], "curve parameter")
    lo = ev.eval_float(args[-2], env)
    hi = ev.eval_float(args[-1], env)
    if lo > hi:
        raise EvalError(f"curve range is empty: [{lo}, {hi}]")
    comps = args[:-3]
    captured = dict(env)

    def fn(t: np.ndarray) -> np.ndarray:
        local = dict(captured)
        local[var] = t
        if len(comps) == 1:
            p = ev.eval(comps[0], local)
            if not isinstance(p, (Point2, Point3)):
                raise EvalError(f"Curva expects a point expression, got {kind_name(p)}")
            parts = [p.x, p.y] + ([p.z] if isinstance(p, Point3) else [])
        else:
            parts = [ev.eval(c, local) for c in comps]
        for c in parts:
            if not _scalar_value(c):
                raise EvalError(f"curve components must be numbers, got {kind_name(c)}")
        return np.stack([np.broadcast_to(np.asarray(c, dtype=float), t.shape) for c in parts], axis=-1)

    dim = fn(np.array([lo])).shape[1]
    if n > 4 and dim != len(comps):
        raise EvalError("curve components must be numbers")
    return ParamCurve(fn, lo, hi, dim)


@command("spline")
def cmd_spline(ev, call: Call, env: dict) -> ParamCurve:
    n = _arity(call, 1, 2)
    if n == 2:
        order = ev.eval_float(call.args[1], env)
        if order != 3:
            raise EvalError(f"only cubic splines (order 3) are supported, got order {order:g}")
    pts = ev.eval(call.args[0], env)
    if not isinstance(pts, ListVal):
        raise EvalError(f"Spline expects a list of points, got {kind_name(pts)}")
    data = np.array([coords(p) for p in pts.items]) if pts.items else np.zeros((0, 2))
    try:
        sp = spline_fit(data)
    except ValueError as exc:
        raise EvalError(str(exc)) from None
    return ParamCurve(sp, 0.0, 1.0, data.shape[1], sp.segments)


@command("surface")
def cmd_surface(ev, call: Call, env: dict) -> ParamSurface:
    n = _arity(call, 3, 9)
    args = call.args
    if n == 3:
        curve = ev.eval(args[0], env)
        angle = ev.eval_float(args[1], env)
        axis = ev.eval(args[2], env)
        if not (isinstance(curve, ParamCurve) and curve.dim == 2):
            raise EvalError(f"revolution needs a planar curve, got {kind_name(curve)}")
        if not (isinstance(axis, Axis) and axis.name in ("x", "y")):
            raise EvalError("revolution axis must be EixoOx or EixoOy")
        try:
            return revolve_curve(curve, angle, axis.name)
        except ValueError as exc:
            raise EvalError(str(exc)) from None
    u, v = _ident(args[3], "parameter"), _ident(args[6], "parameter")
    u_range = (ev.eval_float(args[4], env), ev.eval_float(args[5], env))
    v_range = (ev.eval_float(args[7], env), ev.eval_float(args[8], env))
    if u_range[0] > u_range[1] or v_range[0] > v_range[1]:
        raise EvalError("surface parameter ranges must satisfy lo <= hi")
    captured = dict(env)

    def fn(U, V):
        local = dict(captured)
        local[u], local[v] = U, V
        out = []
        for c in args[:3]:
            val = ev.eval(c, local)
            if not _scalar_value(val):
                raise EvalError(f"surface components must be numbers, got {kind_name(val)}")
            out.append(np.broadcast_to(np.asarray(val, dtype=float), np.broadcast(U, V).shape))
        return tuple(out)

    fn(np.array([u_range[0]]), np.array([v_range[0]]))  # surface errors at definition time
    return ParamSurface(fn, u_range, v_range)


# -- level curves, paths and loci ----------------------------------------------


def surface_height(v) -> Callable | None:
    if isinstance(v, GraphSurface):
        if v.rect is None:
            return v.g
        (x0, x1), (y0, y1) = v.rect
        g = v.g
        return lambda x, y: np.where((x >= x0) & (x <= x1) & (y >= y0) & (y <= y1), g(x, y), np.nan)
    if isinstance(v, Function) and v.arity == 2:
        return v
    return None


@command("intersectpath")
def cmd_intersect(ev, call: Call, env: dict) -> ContourSet:
    _arity(call, 2)
    a, b = (ev.eval(x, env) for x in call.args)
    plane, surf = (a, b) if isinstance(a, Plane) else (b, a)
    g = surface_height(surf)
    if not isinstance(plane, Plane) or not plane.is_horizontal or g is None:
        raise EvalError(
            f"unsupported intersection of {kind_name(a)} and {kind_name(b)}: only a horizontal plane z=k "
            "with a graph surface z=g(x,y) is supported"
        )
    settings = ev.graph.settings
    window = settings.window_2d(ev.graph.current_view)
    nx, ny = settings.grid
    return marching_squares(g, plane.c, window, nx, ny)


def _arc_position(polylines: list[np.ndarray], cums: list[np.ndarray] | None, t: float):
    """Point at fraction ``t`` of the total arc length; ``cums`` are cumulative lengths per polyline."""
    if not polylines:
        return UNDEFINED
    if cums is None:
        cums = [np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(p, axis=0), axis=1))]) for p in polylines]
    totals = np.array([c[-1] for c in cums])
    total = totals.sum()
    if total == 0:
        return _as_point(polylines[0][0])
    target = min(max(t, 0.0), 1.0) * total
    starts = np.concatenate([[0.0], np.cumsum(totals)])
    k = int(min(np.searchsorted(starts, target, side="right") - 1, len(polylines) - 1))
    local = target - starts[k]
    cum = cums[k]
    j = int(min(np.searchsorted(cum, local, side="right") - 1, len(cum) - 2))
    span = cum[j + 1] - cum[j]
    s = 0.0 if span == 0 else (local - cum[j]) / span
    p = polylines[k]
    return _as_point(p[j] + min(max(s, 0.0), 1.0) * (p[j + 1] - p[j]))


def point_on_path(path, t: float):
    """Point at normalized parameter ``t`` in [0, 1] along ``path``."""
    if isinstance(path, Circle):
        c = path.center
        return _point2(float(c.x) + path.radius * np.cos(2 * np.pi * t), float(c.y) + path.radius * np.sin(2 * np.pi * t))
    if isinstance(path, ParamCurve):
        return _as_point(path.at(path.lo + t * (path.hi - path.lo)))
    if isinstance(path, Segment):
        a, b = coords(path.a), coords(path.b)
        return _as_point(a + t * (b - a))
    if isinstance(path, (ContourSet, Locus)):
        return _arc_position(*path.arc_tables(), t)
    if isinstance(path, Polygon):
        return _arc_position([Polyline(path.coords(), closed=True).closed_vertices()], None, t)
    raise EvalError(f"cannot place a point on {kind_name(path)}")


def is_path(v) -> bool:
    return isinstance(v, (Circle, ParamCurve, Segment, ContourSet, Locus, Polygon))


@command("point")
def cmd_point(ev, call: Call, env: dict):
    n = _arity(call, 1, 2)
    path = ev.eval(call.args[0], env)
    if isinstance(path, (Point2, Point3)) and n == 1:
        return path
    if path is UNDEFINED:
        return UNDEFINED
    t = ev.eval_float(call.args[1], env) if n == 2 else 0.0
    return point_on_path(path, t)


@command("locus")
def cmd_locus(ev, call: Call, env: dict) -> Locus:
    _arity(call, 2)
    driver = _ident(call.args[1], "driver")
    return ev.graph.sample_locus(call.args[0], driver, env)


# -- cube and net ----------------------------------------------------------------


def _point3(v) -> np.ndarray:
    c = coords(v)
    return np.append(c, 0.0) if len(c) == 2 else c


@command("cube")
def cmd_cube(ev, call: Call, env: dict) -> Cube:
    _arity(call, 2)
    a, b = (_point3(ev.eval(x, env)) for x in call.args)
    try:
        return build_cube(a, b)
    except NetError as exc:
        raise EvalError(str(exc)) from None


@command("net")
def cmd_net(ev, call: Call, env: dict) -> Net:
    if len(call.args) < 2:
        raise EvalError(f"{call.name} needs a cube and a fold parameter")
    cube = ev.eval(call.args[0], env)
    if not isinstance(cube, Cube):
        raise EvalError(f"{call.name} expects a cube, got {kind_name(cube)}")
    t = ev.eval_float(call.args[1], env)
    names = [_ident(a, "face or edge") for a in call.args[2:]]
    base = names[0] if names else "faceABCD"
    try:
        return build_net(cube, t, base, names[1:])
    except NetError as exc:
        raise EvalError(str(exc)) from None


@command("netpoint")
def cmd_netpoint(ev, call: Call, env: dict) -> Point3:
    _arity(call, 4)
    net = ev.eval(call.args[0], env)
    if not isinstance(net, Net):
        raise EvalError(f"PontoFace expects a net, got {kind_name(net)}")
    face = _ident(call.args[1], "face")
    s1, s2 = ev.eval_float(call.args[2], env), ev.eval_float(call.args[3], env)
    try:
        return _as_point(net_attach(net, face, s1, s2))
    except NetError as exc:
        raise EvalError(str(exc)) from None


# -- planar views and measures ---------------------------------------------------


def _polygon_points(v) -> np.ndarray:
    if isinstance(v, Polygon):
        return v.coords()
    if isinstance(v, ListVal):
        return np.array([coords(p) for p in v.items])
    raise EvalError(f"expected a polygon, got {kind_name(v)}")


@command("planeview")
def cmd_planeview(ev, call: Call, env: dict) -> Polygon:
    _arity(call, 1)
    v = ev.eval(call.args[0], env)
    if isinstance(v, Plane):
        w = ev.graph.settings.window("3d")
        xy = np.array([(w.xmin, w.ymin), (w.xmax, w.ymin), (w.xmax, w.ymax), (w.xmin, w.ymax)])
        pts = np.column_stack([xy, v.a * xy[:, 0] + v.b * xy[:, 1] + v.c])
    else:
        pts = _polygon_points(v)
        if pts.shape[1] == 2:
            return Polygon(tuple(_as_point(p) for p in pts))
    try:
        flat, _, _ = plane_view_basis(pts)
    except ValueError as exc:
        raise EvalError(str(exc)) from None
    return Polygon(tuple(_as_point(p) for p in flat))


@command("area")
def cmd_area(ev, call: Call, env: dict):
    _arity(call, 1)
    v = ev.eval(call.args[0], env)
    if isinstance(v, Circle):
        return np.float64(np.pi * v.radius**2)
    pts = _polygon_points(v)
    if pts.shape[1] == 3:
        try:
            pts = plane_view_basis(pts)[0]
        except ValueError as exc:
            raise EvalError(str(exc)) from None
    return np.float64(shoelace_area(pts))


@command("perimeter")
def cmd_perimeter(ev, call: Call, env: dict):
    _arity(call, 1)
    v = ev.eval(call.args[0], env)
    if isinstance(v, Circle):
        return np.float64(2 * np.pi * v.radius)
    pts = _polygon_points(v)
    return np.float64(np.linalg.norm(np.diff(np.vstack([pts, pts[:1]]), axis=0), axis=1).sum())


@command("distance")
def cmd_distance(ev, call: Call, env: dict):
    _arity(call, 2)
    a, b = (_point3(ev.eval(x, env)) for x in call.args)
    return np.float64(np.linalg.norm(a - b))


def builtin_keys() -> frozenset[str]:
    return frozenset(_COMMANDS)


__all__ = ["dispatch", "scalar_function", "point_on_path", "is_path", "coords", "surface_height"]

"""Named objects, their dependency DAG and incremental recomputation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from .aliases import STYLE_COMMANDS, resolve
from .analysis import CONSTANTS, IMPLICIT_VARS, free_names
from .commands import is_path, point_on_path
from .evaluator import Evaluator, is_scalar
from .kernel.geometry import Polyline, split_polylines
from .kernel.unfold import Cube, Net
from .parser import Diagnostic, ScriptError, parse_script
from .settings import Settings
from .syntax import Assign, Bare, Call, EquationDef, Expr, FunctionDef, Ident, Script, Statement, ViewDirective
from .values import (
    UNDEFINED,
    EvalError,
    Function,
    GraphSurface,
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
)

LOCUS_JUMP_FRACTION = 0.1
_UPPER = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class GraphError(EvalError):
    """Definition rejected: unknown name, cycle, or failed evaluation."""


@dataclass
class StyleSpec:
    channels: tuple[Expr, Expr, Expr] | None = None
    dynamic: bool = False
    rgb: tuple[float, float, float] | None = None
    visible: bool = True
    width: float = 2.0


@dataclass(eq=False)
class Node:
    id: int
    name: str
    statement: Statement
    value: Any = None
    deps: set[int] = field(default_factory=set)
    dependents: set[int] = field(default_factory=set)
    view: str = "2d"
    style: StyleSpec = field(default_factory=StyleSpec)
    error: str | None = None


def is_3d_value(v: Any) -> bool:
    if isinstance(v, (Point3, Cube, Net, ParamSurface, Plane, GraphSurface)):
        return True
    if isinstance(v, Function):
        return v.arity == 2
    if isinstance(v, (Polygon, PolylineVal)):
        return bool(v.vertices) and isinstance(v.vertices[0], Point3)
    if isinstance(v, Segment):
        return isinstance(v.a, Point3)
    if isinstance(v, ParamCurve):
        return v.dim == 3
    if isinstance(v, ListVal):
        return bool(v.items) and all(is_3d_value(i) for i in v.items)
    return False


class ConstructionGraph:
    def __init__(self, settings: Settings | None = None):
        self.settings = settings or Settings()
        self.nodes: dict[int, Node] = {}
        self.by_name: dict[str, int] = {}
        self.evaluator = Evaluator(self)
        self.eval_counts: Counter[str] = Counter()
        self.view_directive: str | None = None
        self.current_view = "2d"
        self._next_id = 0
        self._overlay: dict[str, Any] | None = None
        self._locus_cache: dict[tuple, list[dict[str, Any]]] = {}

    # -- construction
    @classmethod
    def from_script(cls, script: Script | str, settings: Settings | None = None, source_name: str = "<script>"):
        if isinstance(script, str):
            script = parse_script(script, source_name)
        graph = cls(settings)
        graph.run(script)
        return graph

    def run(self, script: Script) -> None:
        for stmt in script:
            try:
                self.define(stmt)
            except (EvalError, ValueError) as exc:
                raise ScriptError([Diagnostic(getattr(stmt, "line", 0), 1, str(exc))], script.source_name) from exc

    @property
    def objects(self) -> dict[str, int]:
        return self.by_name

    def has_object(self, name: str) -> bool:
        return name in self.by_name

    def node(self, name: str) -> Node:
        try:
            return self.nodes[self.by_name[name]]
        except KeyError:
            raise GraphError(f"unknown object {name!r}") from None

    def object_value(self, name: str) -> Any:
        if self._overlay is not None and name in self._overlay:
            return self._overlay[name]
        return self.nodes[self.by_name[name]].value

    def value(self, name: str) -> Any:
        return self.node(name).value

    def names(self) -> list[str]:
        return [n.name for n in sorted(self.nodes.values(), key=lambda n: n.id)]

    def _auto_name(self) -> str:
        """First unused capital letter, then doubled letters (AA, BB, ...), tripled, and so on."""
        reps = 1
        while True:
            for letter in _UPPER:
                if letter * reps not in self.by_name:
                    return letter * reps
            reps += 1

    def _expression(self, stmt: Statement) -> tuple[Expr, frozenset[str]]:
        if isinstance(stmt, FunctionDef):
            return stmt.body, frozenset(stmt.params)
        if isinstance(stmt, EquationDef):
            return stmt.rhs, frozenset()
        return stmt.expr, frozenset()

    def define(self, stmt: Statement) -> int | None:
        """Add or replace the object a statement defines; returns its id."""
        self._locus_cache.clear()
        if isinstance(stmt, ViewDirective):
            self.view_directive = stmt.view
            return None
        if isinstance(stmt, Bare) and isinstance(stmt.expr, Call) and resolve(stmt.expr.name) in STYLE_COMMANDS:
            self._define_style(stmt.expr)
            return None
        if isinstance(stmt, EquationDef) and stmt.var != "z":
            raise GraphError(f"only z = f(x, y) equations are supported, got {stmt.label}: {stmt.var} = ...")

        name = self._auto_name() if isinstance(stmt, Bare) else stmt.name if not isinstance(stmt, EquationDef) else stmt.label
        expr, bound = self._expression(stmt)
        free = free_names(expr, bound, self.by_name)
        if name in free.names():
            raise GraphError(f"cycle: {name} refers to itself")
        for ident in free.idents:
            if ident not in self.by_name and ident not in CONSTANTS and ident not in IMPLICIT_VARS:
                raise GraphError(f"unknown identifier {ident!r}")
        for call in free.calls:
            if call not in self.by_name:
                raise GraphError(f"unknown command {call!r}")
        deps = {self.by_name[n] for n in free.names() if n in self.by_name}

        existing = self.by_name.get(name)
        if existing is not None and deps & (self.descendants({existing}) | {existing}):
            raise GraphError(f"cycle: redefining {name} would make it depend on itself")

        view = self.view_directive or "2d"
        value = self._compute_statement(stmt, view, previous=None)
        if is_3d_value(value):
            view = "3d"

        if existing is None:
            node = Node(self._next_id, name, stmt)
            self._next_id += 1
            self.nodes[node.id] = node
            self.by_name[name] = node.id
        else:
            node = self.nodes[existing]
            for d in node.deps:
                self.nodes[d].dependents.discard(node.id)
            node.statement = stmt
        node.deps = deps
        for d in deps:
            self.nodes[d].dependents.add(node.id)
        node.value, node.view, node.error = value, view, None
        self.eval_counts[name] += 1
        if existing is not None:
            self.topo_recompute(self.descendants({node.id}))
        self._refresh_styles()
        return node.id

    def _define_style(self, call: Call) -> None:
        key = resolve(call.name)
        if len(call.args) != 4 or not isinstance(call.args[0], Ident):
            raise GraphError(f"{call.name} takes an object name and three color channels")
        target = self.node(call.args[0].name)
        target.style.channels = tuple(call.args[1:4])
        target.style.dynamic = key == "setdynamiccolor"
        self._refresh_styles()

    def _refresh_styles(self) -> None:
        for node in self.nodes.values():
            spec = node.style
            if spec.channels is None:
                continue
            rgb = []
            for ch in spec.channels:
                v = self.evaluator.eval(ch, {})
                if not is_scalar(v) or np.ndim(v) != 0:
                    raise GraphError(f"color channel of {node.name} is not a number")
                v = float(v)
                rgb.append(min(max(v, 0.0), 1.0) if np.isfinite(v) else 0.0)
            spec.rgb = (rgb[0], rgb[1], rgb[2])

    # -- evaluation
    def _compute_statement(self, stmt: Statement, view: str, previous: Any) -> Any:
        saved = self.current_view
        self.current_view = view
        try:
            ev = self.evaluator
            if isinstance(stmt, FunctionDef):
                return ev.check_function(Function(stmt.params, stmt.body, {}, ev, stmt.name))
            if isinstance(stmt, EquationDef):
                return ev.equation_object(stmt.var, stmt.rhs, {})
            value = ev.eval_value(stmt.expr, {})
            if isinstance(value, Slider) and isinstance(previous, Slider):
                value = value.with_value(previous.v)
            return value
        finally:
            self.current_view = saved

    def _recompute_node(self, node: Node) -> Any:
        try:
            return self._compute_statement(node.statement, node.view, node.value)
        except EvalError:
            return UNDEFINED

    def descendants(self, ids: Iterable[int]) -> set[int]:
        out: set[int] = set()
        stack = list(ids)
        while stack:
            for d in self.nodes[stack.pop()].dependents:
                if d not in out:
                    out.add(d)
                    stack.append(d)
        return out

    def ancestors_or_self(self, ids: Iterable[int]) -> set[int]:
        out = set(ids)
        stack = list(out)
        while stack:
            for d in self.nodes[stack.pop()].deps:
                if d not in out:
                    out.add(d)
                    stack.append(d)
        return out

    def topo_order(self, ids: Iterable[int]) -> list[int]:
        """Kahn order of ``ids`` restricted to their mutual edges; ties broken by id."""
        ids = set(ids)
        indeg = {i: len(self.nodes[i].deps & ids) for i in ids}
        ready = sorted(i for i, d in indeg.items() if d == 0)
        order = []
        while ready:
            i = ready.pop(0)
            order.append(i)
            for j in sorted(self.nodes[i].dependents & ids):
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
            ready.sort()
        return order

    def topo_recompute(self, dirty: Iterable[int]) -> list[int]:
        order = self.topo_order(dirty)
        for i in order:
            node = self.nodes[i]
            node.value = self._recompute_node(node)
            self.eval_counts[node.name] += 1
        return order

    def set_slider(self, name: str, value: float) -> set[int]:
        """Move a slider and recompute exactly its dependents; returns their ids."""
        self._locus_cache.clear()
        node = self.node(name)
        if not isinstance(node.value, Slider):
            raise GraphError(f"{name} is not a slider")
        node.value = node.value.with_value(float(value))
        affected = self.descendants({node.id})
        self.topo_recompute(affected)
        self._refresh_styles()
        return affected

    # -- loci
    def _driver_value(self, driver: Node, s: float, path: Any) -> Any:
        if isinstance(driver.value, Slider):
            sl = driver.value
            return Slider(sl.min + s * (sl.max - sl.min), sl.min, sl.max, sl.increment)
        return point_on_path(path, s)

    def _driver_path(self, driver: Node) -> Any:
        if isinstance(driver.value, Slider):
            return None
        stmt = driver.statement
        expr = getattr(stmt, "expr", None)
        if isinstance(expr, Call) and resolve(expr.name) == "point" and expr.args:
            path = self.evaluator.eval(expr.args[0], {})
            if is_path(path):
                return path
        raise GraphError(f"locus driver {driver.name} must be a slider or a point on a path")

    def sample_locus(self, dependent: Expr, driver_name: str, env: dict, n: int | None = None) -> Locus:
        """Trace ``dependent`` while the driver sweeps its path or slider range."""
        from .kernel.locus import trace_locus

        n = self.settings.locus_samples if n is None else n
        driver = self.node(driver_name)
        path = self._driver_path(driver)
        roots = {self.by_name[v] for v in free_names(dependent, frozenset(env), self.by_name).names() if v in self.by_name}
        if driver.id not in self.ancestors_or_self(roots):
            raise GraphError(f"locus dependent does not depend on {driver_name}")
        cone = tuple(self.topo_order(self.descendants({driver.id}) & self.ancestors_or_self(roots)))
        key = (driver.id, n, cone)
        snaps = self._locus_cache.get(key)
        if snaps is None:
            snaps = []
            saved = self._overlay
            try:
                for s in range(n + 1):
                    self._overlay = {driver.name: self._driver_value(driver, s / n, path)}
                    for i in cone:
                        node = self.nodes[i]
                        self._overlay[node.name] = self._recompute_node(node)
                    snaps.append(self._overlay)
            finally:
                self._overlay = saved
            self._locus_cache[key] = snaps

        def evaluate(snap: dict) -> Any:
            saved = self._overlay
            self._overlay = snap
            try:
                return self.evaluator.eval(dependent, env)
            except EvalError:
                return UNDEFINED
            finally:
                self._overlay = saved

        window = self.settings.window_2d(self.current_view)
        return trace_locus([evaluate(s) for s in snaps], LOCUS_JUMP_FRACTION * window.diagonal)


__all__ = ["ConstructionGraph", "GraphError", "Node", "StyleSpec", "is_3d_value", "Polyline", "split_polylines"]

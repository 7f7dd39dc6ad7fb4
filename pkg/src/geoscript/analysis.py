"""Free-name analysis with the binding rules of the builtin commands."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Container

from .aliases import resolve
from .syntax import Call, Equation, Expr, Ident, children

IMPLICIT_VARS = ("x", "y")
CONSTANTS = frozenset({"pi", "i", "true", "false", "inf", "EixoOx", "EixoOy", "EixoOz"})


@dataclass
class FreeNames:
    idents: list[str] = field(default_factory=list)
    calls: list[str] = field(default_factory=list)

    def add_ident(self, name: str) -> None:
        if name not in self.idents:
            self.idents.append(name)

    def add_call(self, name: str) -> None:
        if name not in self.calls:
            self.calls.append(name)

    def names(self) -> list[str]:
        return self.idents + [c for c in self.calls if c not in self.idents]


def _ident_arg(expr: Expr) -> str | None:
    return expr.name if isinstance(expr, Ident) else None


def binding(call: Call, objects: Container[str]) -> tuple[dict[int, frozenset[str]], frozenset[int]]:
    """Names bound per argument index and argument indices that are not expressions."""
    key = resolve(call.name)
    args = call.args
    n = len(args)
    bound: dict[int, frozenset[str]] = {}
    skip: set[int] = set()
    if key in ("sequence", "sum") and n >= 4:
        var = _ident_arg(args[1])
        if var:
            bound[0] = frozenset({var})
            skip.add(1)
    elif key == "curve" and n >= 4:
        var = _ident_arg(args[-3])
        if var:
            for i in range(n - 3):
                bound[i] = frozenset({var})
            skip.add(n - 3)
    elif key == "surface" and n == 9:
        v1, v2 = _ident_arg(args[3]), _ident_arg(args[6])
        names = frozenset(v for v in (v1, v2) if v)
        for i in range(3):
            bound[i] = names
        skip.update({3, 6})
    elif key == "function" and n == 7:
        v1, v2 = _ident_arg(args[1]), _ident_arg(args[4])
        bound[0] = frozenset(v for v in (v1, v2) if v)
        skip.update({1, 4})
    elif key == "function" and n == 3:
        var = implicit_function_var(args[0], objects)
        if var:
            bound[0] = frozenset({var})
    elif key == "net":
        skip.update(range(2, n))
    elif key == "netpoint":
        skip.add(1)
    return bound, frozenset(skip)


def implicit_function_var(expr: Expr, objects: Container[str], bound: frozenset[str] = frozenset()) -> str | None:
    """Variable of a 3-argument Função: ``x`` if it occurs, else the single free non-object name."""
    free = free_names(expr, bound, objects).idents
    candidates = [n for n in free if n not in objects and n not in CONSTANTS]
    if "x" in candidates:
        return "x"
    if len(candidates) == 1:
        return candidates[0]
    return None


def free_names(expr: Expr, bound: frozenset[str] | set[str] = frozenset(), objects: Container[str] = ()) -> FreeNames:
    out = FreeNames()
    _walk(expr, frozenset(bound), objects, out)
    return out


def _walk(expr: Expr, bound: frozenset[str], objects: Container[str], out: FreeNames) -> None:
    if isinstance(expr, Ident):
        if expr.name not in bound:
            out.add_ident(expr.name)
        return
    if isinstance(expr, Call):
        if expr.name not in bound and (expr.name in objects or resolve(expr.name) is None):
            out.add_call(expr.name)
        extra, skip = binding(expr, objects)
        for i, arg in enumerate(expr.args):
            if i in skip:
                continue
            _walk(arg, bound | extra.get(i, frozenset()), objects, out)
        return
    if isinstance(expr, Equation):
        _walk(expr.rhs, bound, objects, out)
        return
    for child in children(expr):
        _walk(child, bound, objects, out)


def implicit_vars(expr: Expr, bound, objects: Container[str]) -> tuple[str, ...] | None:
    """``("x",)`` or ``("x", "y")`` when ``expr`` is a function of the implicit variables."""
    free = [n for n in free_names(expr, frozenset(bound), objects).idents if n not in objects and n not in CONSTANTS]
    if not free or not set(free) <= set(IMPLICIT_VARS):
        return None
    return ("x", "y") if "y" in free else ("x",)

"""Expression and statement trees produced by the parser."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


@dataclass(frozen=True)
class Num:
    value: float
    text: str = field(default="", compare=False)


@dataclass(frozen=True)
class Ident:
    name: str


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class PointLit:
    items: tuple["Expr", ...]


@dataclass(frozen=True)
class ListLit:
    items: tuple["Expr", ...]


@dataclass(frozen=True)
class AbsBars:
    operand: "Expr"


@dataclass(frozen=True)
class Equation:
    """Inline ``var = expr`` used as a command argument, e.g. ``z=k``."""

    var: str
    rhs: "Expr"


Expr = Union[Num, Ident, Call, BinOp, Neg, PointLit, ListLit, AbsBars, Equation]


@dataclass(frozen=True)
class Assign:
    name: str
    expr: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FunctionDef:
    name: str
    params: tuple[str, ...]
    body: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class EquationDef:
    label: str
    var: str
    rhs: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Bare:
    expr: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ViewDirective:
    view: str
    line: int = field(default=0, compare=False)


Statement = Union[Assign, FunctionDef, EquationDef, Bare, ViewDirective]


@dataclass
class Script:
    statements: list[Statement]
    source_name: str = "<script>"

    def __iter__(self) -> Iterator[Statement]:
        return iter(self.statements)

    def __len__(self) -> int:
        return len(self.statements)


def children(expr: Expr) -> tuple[Expr, ...]:
    if isinstance(expr, Call):
        return expr.args
    if isinstance(expr, BinOp):
        return (expr.left, expr.right)
    if isinstance(expr, (Neg, AbsBars)):
        return (expr.operand,)
    if isinstance(expr, (PointLit, ListLit)):
        return expr.items
    if isinstance(expr, Equation):
        return (expr.rhs,)
    return ()


# -- printing ---------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3
_ATOM = 5


def _prec(expr: Expr) -> int:
    if isinstance(expr, BinOp):
        return _PREC[expr.op]
    if isinstance(expr, Neg):
        return _NEG_PREC
    return _ATOM


def _fmt_number(value: float) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def to_source(expr: Expr) -> str:
    """Render ``expr`` back to script notation with minimal parentheses."""
    if isinstance(expr, Num):
        return expr.text or _fmt_number(expr.value)
    if isinstance(expr, Ident):
        return expr.name
    if isinstance(expr, Call):
        return f"{expr.name}({', '.join(to_source(a) for a in expr.args)})"
    if isinstance(expr, PointLit):
        return f"({', '.join(to_source(a) for a in expr.items)})"
    if isinstance(expr, ListLit):
        return "{" + ", ".join(to_source(a) for a in expr.items) + "}"
    if isinstance(expr, AbsBars):
        return f"abs({to_source(expr.operand)})" if _contains_bars(expr.operand) \
            else f"|{to_source(expr.operand)}|"
    if isinstance(expr, Equation):
        return f"{expr.var} = {to_source(expr.rhs)}"
    if isinstance(expr, Neg):
        inner = to_source(expr.operand)
        if _prec(expr.operand) < _NEG_PREC or isinstance(expr.operand, Neg):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(expr, BinOp):
        p = _PREC[expr.op]
        left = to_source(expr.left)
        right = to_source(expr.right)
        if expr.op == "^":
            # right-associative; a negated base needs parentheses
            if _prec(expr.left) <= p:
                left = f"({left})"
            if _prec(expr.right) < _NEG_PREC:
                right = f"({right})"
        else:
            if _prec(expr.left) < p:
                left = f"({left})"
            if _prec(expr.right) <= p:
                right = f"({right})"
        return f"{left} {expr.op} {right}"
    raise TypeError(f"not an expression: {expr!r}")


def _contains_bars(expr: Expr) -> bool:
    return isinstance(expr, AbsBars) or any(_contains_bars(c) for c in children(expr))

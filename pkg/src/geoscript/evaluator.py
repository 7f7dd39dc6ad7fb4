"""Expression evaluation over construction-graph values.

Scalars are numpy float64 (or arrays of them when a function is sampled);
NaN is the undefined scalar and flows through arithmetic untouched.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from . import commands
from .aliases import resolve
from .analysis import CONSTANTS, implicit_vars
from .kernel.complexmath import cadd, cdiv, cmul, cpow, csub
from .syntax import AbsBars, BinOp, Call, Equation, Expr, Ident, ListLit, Neg, Num, PointLit, children
from .values import (
    UNDEFINED,
    Axis,
    EvalError,
    Function,
    GraphSurface,
    ListVal,
    ParamCurve,
    Plane,
    Point2,
    Point3,
    Slider,
    UnknownCommandError,
    kind_name,
)

# builtins whose result is a number, so an expression headed by one may become a function of x
_SCALAR_COMMANDS = frozenset({"sin", "cos", "tan", "exp", "ln", "abs", "sqrt", "cbrt", "function", "sum", "element", "x", "y", "z"})


def is_scalar(v: Any) -> bool:
    return isinstance(v, (float, int, np.floating, np.integer)) or (
        isinstance(v, np.ndarray) and v.dtype.kind in "fiu"
    )


def scalar(v) -> Any:
    """Collapse 0-d arrays to float64; leave sampled arrays alone."""
    a = np.asarray(v, dtype=float)
    return np.float64(a) if a.ndim == 0 else a


def point2(x, y) -> Point2:
    return Point2(scalar(x), scalar(y))


class Evaluator:
    def __init__(self, graph):
        self.graph = graph

    # -- names
    def lookup(self, name: str, env: dict) -> Any:
        if name in env:
            return env[name]
        if self.graph.has_object(name):
            value = self.graph.object_value(name)
            return np.float64(value.v) if isinstance(value, Slider) else value
        if name == "pi":
            return np.float64(np.pi)
        if name == "i":
            return Point2(np.float64(0.0), np.float64(1.0))
        if name == "true":
            return np.float64(1.0)
        if name == "false":
            return np.float64(0.0)
        if name in ("EixoOx", "EixoOy", "EixoOz"):
            return Axis(name[-1].lower())
        if name == "inf":
            raise EvalError("∞ is only allowed as a Função domain endpoint")
        raise EvalError(f"unknown identifier {name!r}")

    def eval_endpoint(self, expr: Expr, env: dict) -> float:
        if isinstance(expr, Ident) and expr.name == "inf":
            return np.inf
        if isinstance(expr, Neg) and isinstance(expr.operand, Ident) and expr.operand.name == "inf":
            return -np.inf
        return self.eval_float(expr, env)

    def eval_float(self, expr: Expr, env: dict) -> float:
        v = self.eval(expr, env)
        if not is_scalar(v) or np.ndim(v) != 0:
            raise EvalError(f"expected a number, got {kind_name(v)}")
        return float(v)

    # -- evaluation
    def eval_value(self, expr: Expr, env: dict) -> Any:
        """Evaluate in value position: a bare expression in x (and y) becomes a function."""
        if not (isinstance(expr, Call) and resolve(expr.name) not in _SCALAR_COMMANDS | {None}) and not isinstance(
            expr, (PointLit, ListLit, Equation)
        ):
            params = implicit_vars(expr, set(env), self.graph.objects)
            if params is not None:
                return Function(params, expr, dict(env), self)
        if isinstance(expr, ListLit):
            return ListVal([self.eval_value(item, env) for item in expr.items])
        return self.eval(expr, env)

    def eval(self, expr: Expr, env: dict | None = None) -> Any:
        env = {} if env is None else env
        if isinstance(expr, Num):
            return np.float64(expr.value)
        if isinstance(expr, Ident):
            return self.lookup(expr.name, env)
        if isinstance(expr, BinOp):
            return self.binop(expr.op, self.eval(expr.left, env), self.eval(expr.right, env))
        if isinstance(expr, Neg):
            return self.negate(self.eval(expr.operand, env))
        if isinstance(expr, PointLit):
            return self.point(expr, env)
        if isinstance(expr, ListLit):
            return ListVal([self.eval_value(item, env) for item in expr.items])
        if isinstance(expr, AbsBars):
            return commands.scalar_function("abs", self.eval(expr.operand, env))
        if isinstance(expr, Equation):
            return self.equation_object(expr.var, expr.rhs, env)
        if isinstance(expr, Call):
            return self.call(expr, env)
        raise EvalError(f"cannot evaluate {expr!r}")

    def point(self, expr: PointLit, env: dict):
        comps = [self.eval(item, env) for item in expr.items]
        if any(c is UNDEFINED for c in comps):
            return UNDEFINED
        for c in comps:
            if not is_scalar(c):
                raise EvalError(f"point coordinates must be numbers, got {kind_name(c)}")
        if len(comps) == 2:
            return point2(*comps)
        return Point3(*(scalar(c) for c in comps))

    def call(self, expr: Call, env: dict) -> Any:
        name = expr.name
        target = env.get(name)
        if target is None and self.graph.has_object(name):
            target = self.graph.object_value(name)
        if target is not None:
            if isinstance(target, Function):
                return target(*(self.eval(a, env) for a in expr.args))
            if isinstance(target, ParamCurve) and len(expr.args) == 1:
                pts = target(self.eval_float(expr.args[0], env))[0]
                return point2(*pts) if target.dim == 2 else Point3(*pts)
            if resolve(name) is None:
                raise EvalError(f"{name} is a {kind_name(target)}, not a function")
        key = resolve(name)
        if key is None:
            raise UnknownCommandError(f"unknown command {name!r}")
        return commands.dispatch(key, self, expr, env)

    # -- arithmetic
    def negate(self, v):
        if v is UNDEFINED:
            return UNDEFINED
        if is_scalar(v):
            return -v
        if isinstance(v, Point2):
            return point2(-v.x, -v.y)
        if isinstance(v, Point3):
            return Point3(-v.x, -v.y, -v.z)
        raise EvalError(f"cannot negate {kind_name(v)}")

    def binop(self, op: str, a, b):
        if a is UNDEFINED or b is UNDEFINED:
            return UNDEFINED
        with np.errstate(all="ignore"):
            if is_scalar(a) and is_scalar(b):
                return scalar(_SCALAR_OPS[op](np.asarray(a, dtype=float), np.asarray(b, dtype=float)))
            if isinstance(a, (Point2,)) or isinstance(b, Point2):
                if (is_scalar(a) or isinstance(a, Point2)) and (is_scalar(b) or isinstance(b, Point2)):
                    za = (a.x, a.y) if isinstance(a, Point2) else (a, 0.0)
                    zb = (b.x, b.y) if isinstance(b, Point2) else (b, 0.0)
                    if op == "^":
                        if not is_scalar(b):
                            raise EvalError("complex exponents are not supported")
                        return point2(*cpow(za, b))
                    return point2(*_COMPLEX_OPS[op](za, zb))
            if isinstance(a, Point3) or isinstance(b, Point3):
                if isinstance(a, Point3) and isinstance(b, Point3) and op in "+-":
                    f = _SCALAR_OPS[op]
                    return Point3(scalar(f(a.x, b.x)), scalar(f(a.y, b.y)), scalar(f(a.z, b.z)))
                if op == "*" and is_scalar(a) and isinstance(b, Point3):
                    return Point3(scalar(a * b.x), scalar(a * b.y), scalar(a * b.z))
                if op in "*/" and isinstance(a, Point3) and is_scalar(b):
                    f = _SCALAR_OPS[op]
                    return Point3(scalar(f(a.x, b)), scalar(f(a.y, b)), scalar(f(a.z, b)))
        raise EvalError(f"cannot apply '{op}' to {kind_name(a)} and {kind_name(b)}")

    # -- functions
    def check_function(self, fn: Function) -> Function:
        """Reject a malformed Função restriction when the function is defined."""
        body = fn.body
        if isinstance(body, Call) and resolve(body.name) == "function":
            if len(body.args) not in (3, 7):
                raise EvalError(f"Função takes 3 or 7 arguments, got {len(body.args)}")
            for lo, hi in self.function_domain(fn):
                if lo > hi:
                    raise EvalError(f"empty Função domain [{lo}, {hi}]")
        return fn

    def function_domain(self, fn: Function) -> list[tuple[float, float]]:
        unbounded = [(-np.inf, np.inf)] * fn.arity
        body = fn.body
        if not (isinstance(body, Call) and resolve(body.name) == "function"):
            return unbounded
        args = body.args
        if len(args) == 3 and fn.arity == 1:
            return [(self.eval_endpoint(args[1], fn.env), self.eval_endpoint(args[2], fn.env))]
        if len(args) == 7:
            ranges = {}
            for var_arg, lo, hi in ((args[1], args[2], args[3]), (args[4], args[5], args[6])):
                if isinstance(var_arg, Ident):
                    ranges[var_arg.name] = (self.eval_endpoint(lo, fn.env), self.eval_endpoint(hi, fn.env))
            return [ranges.get(p, (-np.inf, np.inf)) for p in fn.params]
        return unbounded

    # -- equation objects
    def equation_object(self, var: str, rhs: Expr, env: dict):
        if var != "z":
            raise EvalError(f"only z = f(x, y) equations are supported, got {var} = ...")
        form = self.affine(rhs, env, {}, True)
        if form is not None:
            return Plane(*(float(c) for c in form))
        captured = dict(env)

        def g(x, y):
            local = dict(captured)
            local["x"], local["y"] = x, y
            v = self.eval(rhs, local)
            if not is_scalar(v):
                raise EvalError(f"surface height must be a number, got {kind_name(v)}")
            return v

        return GraphSurface(g)

    def _mentions(self, expr: Expr, names: set[str]) -> bool:
        if isinstance(expr, Ident):
            return expr.name in names
        return any(self._mentions(c, names) for c in children(expr))

    def affine(self, expr: Expr, env: dict, subst: dict, xy_free: bool):
        """``(a, b, c)`` if ``expr`` is syntactically ``a x + b y + c``, else ``None``.

        User functions are inlined; a Função restriction is looked through.
        """
        variables = {n for n, f in subst.items() if f[0] != 0 or f[1] != 0}
        if xy_free:
            variables |= {v for v in ("x", "y") if v not in env and v not in subst}
        if not self._mentions(expr, variables):
            consts = {n: np.float64(f[2]) for n, f in subst.items()}
            try:
                v = self.eval(expr, {**env, **consts})
            except EvalError:
                return None
            if is_scalar(v) and np.ndim(v) == 0 and np.isfinite(v):
                return (0.0, 0.0, float(v))
            return None
        if isinstance(expr, Ident):
            if expr.name in subst:
                return subst[expr.name]
            return {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0)}[expr.name]
        if isinstance(expr, Neg):
            f = self.affine(expr.operand, env, subst, xy_free)
            return None if f is None else tuple(-c for c in f)
        if isinstance(expr, BinOp):
            lf = self.affine(expr.left, env, subst, xy_free)
            rf = self.affine(expr.right, env, subst, xy_free)
            if lf is None or rf is None:
                return None
            lconst = lf[0] == 0 and lf[1] == 0
            rconst = rf[0] == 0 and rf[1] == 0
            if expr.op == "+":
                return tuple(p + q for p, q in zip(lf, rf))
            if expr.op == "-":
                return tuple(p - q for p, q in zip(lf, rf))
            if expr.op == "*" and lconst:
                return tuple(lf[2] * q for q in rf)
            if expr.op == "*" and rconst:
                return tuple(p * rf[2] for p in lf)
            if expr.op == "/" and rconst and rf[2] != 0:
                return tuple(p / rf[2] for p in lf)
            return None
        if isinstance(expr, Call):
            key = resolve(expr.name)
            target = env.get(expr.name)
            if target is None and self.graph.has_object(expr.name):
                target = self.graph.object_value(expr.name)
            if isinstance(target, Function):
                forms = [self.affine(a, env, subst, xy_free) for a in expr.args]
                if any(f is None for f in forms) or len(forms) != target.arity:
                    return None
                return self.affine(target.body, target.env, dict(zip(target.params, forms)), False)
            if target is None and key == "function" and expr.args:
                return self.affine(expr.args[0], env, subst, xy_free)
        return None


_SCALAR_OPS = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.divide,
    "^": np.power,
}
_COMPLEX_OPS = {"+": cadd, "-": csub, "*": cmul, "/": cdiv}

__all__ = ["Evaluator", "is_scalar", "scalar", "point2", "CONSTANTS"]

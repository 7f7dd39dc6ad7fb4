"""Recursive-descent parser for construction scripts.

Precedence, tightest first: ``^`` (right-associative), unary minus, ``*`` /
``/`` / implicit product, ``+`` / ``-``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .lexer import (
    COMMENT,
    DIRECTIVE,
    IDENT,
    NUMBER,
    OPERATOR,
    PUNCT,
    SPECIAL_IDENTS,
    LexError,
    Token,
    tokenize,
)
from .syntax import (
    AbsBars,
    Assign,
    Bare,
    BinOp,
    Call,
    Equation,
    EquationDef,
    Expr,
    FunctionDef,
    Ident,
    ListLit,
    Neg,
    Num,
    PointLit,
    Script,
    Statement,
    ViewDirective,
)

__all__ = [
    "Diagnostic",
    "ParseError",
    "ScriptError",
    "parse_expr",
    "parse_statement",
    "parse_script",
]

EQUATION_VARS = ("x", "y", "z")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def format(self, filename: str = "<script>") -> str:
        return f"{filename}:{self.line}:{self.col}: {self.message}"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.diagnostic = Diagnostic(line, col, message)


class ScriptError(ValueError):
    """Raised by :func:`parse_script` with every line diagnostic collected."""

    def __init__(self, diagnostics: list[Diagnostic], source_name: str = "<script>"):
        self.diagnostics = diagnostics
        self.source_name = source_name
        super().__init__("\n".join(d.format(source_name) for d in diagnostics))


def _ident_name(lexeme: str) -> str:
    return SPECIAL_IDENTS.get(lexeme, lexeme)


class _Parser:
    def __init__(self, tokens: list[Token], end: tuple[int, int]):
        self.toks = [t for t in tokens if t.kind != COMMENT]
        self.pos = 0
        self.end = end
        self.in_bars = False

    # -- token helpers
    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def at(self, text: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind in (OPERATOR, PUNCT) and tok.text == text

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok if tok is not None else self.peek()
        if tok is None:
            return ParseError(f"{message} at end of line", *self.end)
        return ParseError(message, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            tok = self.peek()
            found = "end of line" if tok is None else repr(tok.lexeme)
            raise self.error(f"expected {text!r}, found {found}")
        return self.advance()

    # -- expressions
    def expr(self) -> Expr:
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            left = BinOp(op, left, self.term())
        return left

    def _starts_implicit_factor(self) -> bool:
        """True when the next token begins a factor that juxtaposes the previous one."""
        prev = self.toks[self.pos - 1] if self.pos > 0 else None
        nxt = self.peek()
        if prev is None or nxt is None:
            return False
        prev_is_value = (
            prev.kind == NUMBER
            or (prev.kind == IDENT)
            or (prev.kind == PUNCT and prev.text == ")")
            or (prev.kind == PUNCT and prev.text == "|" and not self.in_bars)
        )
        if not prev_is_value:
            return False
        if nxt.kind == IDENT:
            return True
        if nxt.kind == PUNCT and nxt.text == "|":
            return not self.in_bars
        if nxt.kind == PUNCT and nxt.text == "(":
            # ident followed by "(" is always a call, handled in primary()
            return prev.kind != IDENT or prev.lexeme in SPECIAL_IDENTS
        return False

    def term(self) -> Expr:
        left = self.unary()
        while True:
            if self.at("*") or self.at("/"):
                op = self.advance().text
                left = BinOp(op, left, self.unary())
            elif self._starts_implicit_factor():
                left = BinOp("*", left, self.unary())
            else:
                return left

    def unary(self) -> Expr:
        if self.at("-"):
            self.advance()
            return Neg(self.unary())
        if self.at("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.at("^"):
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def args(self, close: str) -> tuple[Expr, ...]:
        items: list[Expr] = []
        if self.at(close):
            self.advance()
            return ()
        while True:
            items.append(self.argument())
            if self.at(","):
                self.advance()
                continue
            self.expect(close)
            return tuple(items)

    def argument(self) -> Expr:
        start = self.peek()
        value = self.expr()
        if self.at("="):
            if not (isinstance(value, Ident) and value.name in EQUATION_VARS):
                raise self.error("left side of an inline equation must be x, y or z", start)
            self.advance()
            return Equation(value.name, self.expr())
        return value

    def primary(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise self.error("expected an expression")
        if tok.kind == NUMBER:
            self.advance()
            return Num(float(tok.lexeme), tok.lexeme)
        if tok.kind == IDENT:
            self.advance()
            name = _ident_name(tok.lexeme)
            if self.at("(") and tok.lexeme not in SPECIAL_IDENTS:
                self.advance()
                saved, self.in_bars = self.in_bars, False
                args = self.args(")")
                self.in_bars = saved
                return Call(name, args)
            if self.at("[") and tok.lexeme not in SPECIAL_IDENTS:
                self.advance()
                saved, self.in_bars = self.in_bars, False
                args = self.args("]")
                self.in_bars = saved
                return Call(name, args)
            return Ident(name)
        if tok.kind == PUNCT and tok.text == "(":
            self.advance()
            saved, self.in_bars = self.in_bars, False
            items = [self.expr()]
            while self.at(","):
                self.advance()
                items.append(self.expr())
            self.expect(")")
            self.in_bars = saved
            if len(items) == 1:
                return items[0]
            if len(items) > 3:
                raise self.error("a point literal has 2 or 3 coordinates", tok)
            return PointLit(tuple(items))
        if tok.kind == PUNCT and tok.text == "{":
            self.advance()
            saved, self.in_bars = self.in_bars, False
            items = self.args("}")
            self.in_bars = saved
            return ListLit(items)
        if tok.kind == PUNCT and tok.text == "|" and not self.in_bars:
            self.advance()
            self.in_bars = True
            inner = self.expr()
            if not self.at("|"):
                raise self.error("unclosed absolute-value bar", tok)
            self.advance()
            self.in_bars = False
            return AbsBars(inner)
        raise self.error(f"unexpected {tok.lexeme!r}", tok)

    def finish(self) -> None:
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek().lexeme!r}")


def _end_position(tokens: list[Token], line: int) -> tuple[int, int]:
    if not tokens:
        return (line, 1)
    last = tokens[-1]
    return (last.line, last.col + len(last.lexeme))


def parse_expr(source: str) -> Expr:
    """Parse a single expression (no statement forms)."""
    tokens = tokenize(source)
    p = _Parser(tokens, _end_position(tokens, 1))
    e = p.expr()
    p.finish()
    return e


def _is_funcdef_head(toks: list[Token], defined: frozenset[str] | set[str]) -> tuple[str, tuple[str, ...]] | None:
    """Match ``name(p1, ..., pk) =`` where each pk is a fresh bare identifier."""
    if len(toks) < 5 or toks[0].kind != IDENT or toks[1].text != "(" or toks[1].kind != PUNCT:
        return None
    params: list[str] = []
    i = 2
    while True:
        if i >= len(toks) or toks[i].kind != IDENT:
            return None
        name = _ident_name(toks[i].lexeme)
        if name in defined:
            return None
        params.append(name)
        i += 1
        if i < len(toks) and toks[i].kind == PUNCT and toks[i].text == ",":
            i += 1
            continue
        break
    if i + 1 >= len(toks) or toks[i].text != ")" or toks[i + 1].text != "=" or toks[i + 1].kind != OPERATOR:
        return None
    return _ident_name(toks[0].lexeme), tuple(params)


def parse_statement(tokens: list[Token], defined: Iterable[str] = ()) -> Statement:
    """Classify and parse one logical line of tokens.

    ``defined`` lists object names already introduced earlier in the script;
    ``f(a) = ...`` is only a function definition when no parameter is one.
    """
    defined = frozenset(defined)
    toks = [t for t in tokens if t.kind != COMMENT]
    line = toks[0].line if toks else (tokens[0].line if tokens else 0)
    end = _end_position(tokens, line)
    if not toks:
        raise ParseError("empty statement", *end)

    if toks[0].kind == DIRECTIVE:
        if len(toks) > 1:
            raise ParseError("unexpected tokens after directive", toks[1].line, toks[1].col)
        return ViewDirective(toks[0].lexeme.split()[1], line=line)

    # label: var = expr   |   label: expr
    if len(toks) >= 2 and toks[0].kind == IDENT and toks[1].kind == OPERATOR and toks[1].text == ":":
        label = _ident_name(toks[0].lexeme)
        if (
            len(toks) >= 4
            and toks[2].kind == IDENT
            and toks[2].lexeme in EQUATION_VARS
            and toks[3].kind == OPERATOR
            and toks[3].text == "="
        ):
            p = _Parser(toks[4:], end)
            rhs = p.expr()
            p.finish()
            return EquationDef(label, toks[2].lexeme, rhs, line=line)
        p = _Parser(toks[2:], end)
        rhs = p.expr()
        p.finish()
        return Assign(label, rhs, line=line)

    head = _is_funcdef_head(toks, defined)
    if head is not None:
        name, params = head
        if len(set(params)) != len(params):
            dup = next(q for q in params if params.count(q) > 1)
            raise ParseError(f"duplicate parameter {dup!r} in definition of {name}", toks[0].line, toks[0].col)
        i = 2 * len(params) + 3  # name ( p , p ) =
        p = _Parser(toks[i:], end)
        body = p.expr()
        p.finish()
        return FunctionDef(name, params, body, line=line)

    if len(toks) >= 2 and toks[0].kind == IDENT and toks[1].kind == OPERATOR and toks[1].text == "=":
        p = _Parser(toks[2:], end)
        rhs = p.expr()
        p.finish()
        return Assign(_ident_name(toks[0].lexeme), rhs, line=line)

    p = _Parser(toks, end)
    e = p.expr()
    p.finish()
    return Bare(e, line=line)


def _statement_name(stmt: Statement) -> str | None:
    if isinstance(stmt, (Assign, FunctionDef)):
        return stmt.name
    if isinstance(stmt, EquationDef):
        return stmt.label
    return None


def parse_script(source: str, source_name: str = "<script>") -> Script:
    """Parse a whole script; raises :class:`ScriptError` listing every bad line."""
    statements: list[Statement] = []
    diagnostics: list[Diagnostic] = []
    defined: set[str] = set()
    for lineno, text in enumerate(source.splitlines(), start=1):
        try:
            tokens = tokenize(text, line=lineno)
        except LexError as exc:
            diagnostics.append(Diagnostic(exc.line, exc.col, exc.message))
            continue
        if all(t.kind == COMMENT for t in tokens):
            continue
        try:
            stmt = parse_statement(tokens, defined)
        except ParseError as exc:
            diagnostics.append(exc.diagnostic)
            continue
        name = _statement_name(stmt)
        if name is not None:
            defined.add(name)
        statements.append(stmt)
    if diagnostics:
        raise ScriptError(diagnostics, source_name)
    return Script(statements, source_name)

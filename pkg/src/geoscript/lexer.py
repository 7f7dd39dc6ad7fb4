"""Tokenizer for construction scripts.

Numbers never carry an exponent: ``1.4e`` is the number ``1.4`` followed by
the identifier ``e``.  ``π`` and ``∞`` are always single-character
identifiers, so ``2nπ`` splits into ``2``, ``n`` and ``π``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = ["Token", "LexError", "tokenize", "SPECIAL_IDENTS"]

NUMBER = "number"
IDENT = "identifier"
OPERATOR = "operator"
PUNCT = "punctuation"
DIRECTIVE = "directive"
COMMENT = "comment"

# symbols lexed as one-character identifiers that never join a longer name
SPECIAL_IDENTS = {"π": "pi", "∞": "inf"}

_OPERATORS = {"+", "-", "*", "/", "^", "=", ":"}
_PUNCT = {"(", ")", "[", "]", "{", "}", ",", "|"}
# typographic variants seen in pasted commands
_CHAR_ALIASES = {"−": "-", "·": "*", "×": "*"}

_NUMBER_RE = re.compile(r"\d+(?:\.\d+)?|\.\d+")
_DIRECTIVE_RE = re.compile(r"#view[ \t]+(2d2|2d|3d)[ \t]*$")


class LexError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int
    col: int

    @property
    def text(self) -> str:
        """Lexeme with typographic aliases folded to their ASCII operator."""
        return _CHAR_ALIASES.get(self.lexeme, self.lexeme)

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.lexeme!r}, {self.line}:{self.col})"


def _is_letter(ch: str) -> bool:
    return ch.isalpha() and ch not in SPECIAL_IDENTS


def _scan_identifier(src: str, i: int) -> int:
    n = len(src)
    j = i + 1
    while j < n and (_is_letter(src[j]) or src[j].isdigit()):
        j += 1
    # one optional subscript segment: z_3, Lugar_Geométrico
    if j + 1 < n and src[j] == "_" and (_is_letter(src[j + 1]) or src[j + 1].isdigit()):
        j += 2
        while j < n and (_is_letter(src[j]) or src[j].isdigit()):
            j += 1
    return j


def tokenize(source: str, line: int = 1) -> list[Token]:
    """Split ``source`` into tokens with 1-based line/column positions.

    Comments (``#`` to end of line) become ``comment`` tokens and
    ``#view 2d|2d2|3d`` becomes a ``directive`` token, so every
    non-whitespace character is accounted for.
    """
    tokens: list[Token] = []
    col_base = 0
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        col = i - col_base + 1
        if ch == "\n":
            line += 1
            col_base = i + 1
            i += 1
            continue
        if ch in " \t\r\ufeff":
            i += 1
            continue
        if ch == "#":
            end = source.find("\n", i)
            end = n if end < 0 else end
            text = source[i:end].rstrip("\r")
            kind = DIRECTIVE if _DIRECTIVE_RE.match(text) else COMMENT
            tokens.append(Token(kind, text, line, col))
            i += len(text)
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            m = _NUMBER_RE.match(source, i)
            tokens.append(Token(NUMBER, m.group(), line, col))
            i = m.end()
            continue
        if ch in SPECIAL_IDENTS:
            tokens.append(Token(IDENT, ch, line, col))
            i += 1
            continue
        if _is_letter(ch):
            j = _scan_identifier(source, i)
            tokens.append(Token(IDENT, source[i:j], line, col))
            i = j
            continue
        folded = _CHAR_ALIASES.get(ch, ch)
        if folded in _OPERATORS:
            tokens.append(Token(OPERATOR, ch, line, col))
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(PUNCT, ch, line, col))
            i += 1
            continue
        raise LexError(f"illegal character {ch!r}", line, col)
    return tokens

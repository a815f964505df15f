"""Source locations and tokens for MiniQt programs."""

from __future__ import annotations

import enum
from dataclasses import dataclass


@dataclass(frozen=True)
class SourceLocation:
    file: str
    line: int
    column: int

    def __post_init__(self):
        assert self.file, "source location needs a file name"
        assert self.line >= 1 and self.column >= 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class TokenKind(enum.Enum):
    IDENT = "identifier"
    INT = "integer-literal"
    STRING = "string-literal"
    KEYWORD = "keyword"
    PUNCT = "punctuation"
    OP = "operator"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    loc: SourceLocation

    def __repr__(self) -> str:
        return f"Token({self.kind.name}, {self.text!r}, {self.loc})"


KEYWORDS = frozenset(
    {
        "int",
        "bool",
        "void",
        "class",
        "template",
        "if",
        "else",
        "while",
        "for",
        "return",
        "assert",
        "true",
        "false",
        "this",
    }
)

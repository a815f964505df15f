"""Hand-written scanner for MiniQt source text."""

from __future__ import annotations

from .errors import LexError
from .source import KEYWORDS, SourceLocation, Token, TokenKind

# Longest match first; '<' and '>' double as comparison operators and
# template/include brackets, disambiguated by the parser.
_OPERATORS = [
    "&&", "||", "==", "!=", "<=", ">=", "++", "--", "->",
    "+", "-", "*", "/", "%", "!", "<", ">", "=", ".",
]

_PUNCT = "(){}[];,#"

_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


def decode_string(raw: str) -> str:
    """Turn a raw string-literal token text (quotes included) into its value."""
    body = raw[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        if body[i] == "\\":
            out.append(_ESCAPES[body[i + 1]])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)


def tokenize(source: str, file: str) -> list[Token]:
    """Scan `source` into tokens, tracking 1-based line/column positions."""
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def loc() -> SourceLocation:
        return SourceLocation(file, line, col)

    def advance(count: int) -> None:
        nonlocal i, line, col
        for _ in range(count):
            if source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                advance(1)
            continue
        if source.startswith("/*", i):
            start = loc()
            advance(2)
            while i < n and not source.startswith("*/", i):
                advance(1)
            if i >= n:
                raise LexError("unterminated comment", start)
            advance(2)
            continue
        if ch.isdigit():
            start = loc()
            j = i
            while j < n and source[j].isdigit():
                j += 1
            text = source[i:j]
            advance(j - i)
            tokens.append(Token(TokenKind.INT, text, start))
            continue
        if ch.isalpha() or ch == "_":
            start = loc()
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            advance(j - i)
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENT
            tokens.append(Token(kind, text, start))
            continue
        if ch == '"':
            start = loc()
            j = i + 1
            while True:
                if j >= n or source[j] == "\n":
                    raise LexError("unterminated string literal", start)
                if source[j] == "\\":
                    if j + 1 >= n:
                        raise LexError("unterminated string literal", start)
                    if source[j + 1] not in 'nt"\\':
                        raise LexError(f"unknown escape '\\{source[j + 1]}'", start)
                    j += 2
                    continue
                if source[j] == '"':
                    j += 1
                    break
                j += 1
            text = source[i:j]  # raw, quotes included; decode_string strips them
            advance(j - i)
            tokens.append(Token(TokenKind.STRING, text, start))
            continue
        matched = False
        for op in _OPERATORS:
            if source.startswith(op, i):
                start = loc()
                advance(len(op))
                tokens.append(Token(TokenKind.OP, op, start))
                matched = True
                break
        if matched:
            continue
        if ch in _PUNCT:
            start = loc()
            advance(1)
            tokens.append(Token(TokenKind.PUNCT, ch, start))
            continue
        raise LexError(f"illegal character {ch!r}", loc())

    return tokens

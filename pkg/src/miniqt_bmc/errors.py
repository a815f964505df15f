"""Exception types raised across the verification pipeline."""

from __future__ import annotations

from .source import SourceLocation


class MiniQtError(Exception):
    """Base class for every diagnosable front-to-back failure."""

    def __init__(self, message: str, loc: SourceLocation | None = None):
        super().__init__(f"{loc}: {message}" if loc is not None else message)
        self.message = message
        self.loc = loc


class LexError(MiniQtError):
    pass


class ParseError(MiniQtError):
    def __init__(self, loc: SourceLocation | None, expected: str, found: str):
        super().__init__(f"expected {expected}, found {found}", loc)
        self.expected = expected
        self.found = found


class TypeCheckError(MiniQtError):
    pass


class UndefinedSymbol(TypeCheckError):
    def __init__(self, loc: SourceLocation | None, name: str):
        super().__init__(f"undefined symbol '{name}'", loc)
        self.name = name


class IncludeNotFound(MiniQtError):
    def __init__(self, name: str, search_dirs: list[str]):
        dirs = ", ".join(str(d) for d in search_dirs) or "<empty include path>"
        super().__init__(f"no model file for <{name}> in include path [{dirs}]")
        self.name = name
        self.search_dirs = list(search_dirs)


class SortError(MiniQtError):
    """Ill-sorted term construction; indicates an upstream bug."""


class NondetUnderflow(MiniQtError):
    """The concrete interpreter ran out of supplied nondet values."""


class NoViolatedClaim(MiniQtError):
    """A satisfying model violated no claim; impossible unless encode is buggy."""


class ZeroTotal(MiniQtError):
    """Rates requested over an empty benchmark suite."""

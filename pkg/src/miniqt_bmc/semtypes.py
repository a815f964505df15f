"""Semantic types assigned by the checker."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SemType:
    def __str__(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class IntType(SemType):
    width: int = 32

    def __str__(self) -> str:
        return "int" if self.width == 32 else f"int{self.width}"


@dataclass(frozen=True)
class BoolType(SemType):
    def __str__(self) -> str:
        return "bool"


@dataclass(frozen=True)
class VoidType(SemType):
    def __str__(self) -> str:
        return "void"


@dataclass(frozen=True)
class StringType(SemType):
    """Opaque string-literal atoms: assertion messages and file names only."""

    def __str__(self) -> str:
        return "string-literal"


@dataclass(frozen=True)
class ClassType(SemType):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ArrayType(SemType):
    elem: SemType
    capacity: int

    def __post_init__(self):
        assert self.capacity >= 1

    def __str__(self) -> str:
        return f"{self.elem}[{self.capacity}]"


BOOL = BoolType()
VOID = VoidType()
STRING = StringType()


def is_scalar(ty: SemType) -> bool:
    return isinstance(ty, (IntType, BoolType))

"""Include resolution: merge operational-model files found on the include path."""

from __future__ import annotations

import os

from . import ast_nodes as ast
from .config import VerifierConfig
from .errors import IncludeNotFound
from .lexer import tokenize
from .parser import parse


def find_model_file(name: str, include_paths) -> str | None:
    """First match for <name> across the include path, searched in order."""
    for directory in include_paths:
        for candidate in (name, name + ".mqt"):
            path = os.path.join(directory, candidate)
            if os.path.isfile(path):
                return path
    return None


def resolve_includes(program: ast.Program, config: VerifierConfig) -> ast.Program:
    """Load each #include'd model file from the include path once and prepend
    its declarations to the program.

    Nested includes inside model files are followed; repeated includes of the
    same name are idempotent.
    """
    if not program.includes:
        return program
    loaded: set[str] = set()
    model_classes: list[ast.ClassDecl] = []
    model_functions: list[ast.FuncDecl] = []

    def load(include: ast.Include) -> None:
        if include.name in loaded:
            return
        path = find_model_file(include.name, config.include_paths)
        if path is None:
            raise IncludeNotFound(include.name, list(config.include_paths))
        loaded.add(include.name)
        with open(path, "r", encoding="utf-8") as fh:
            source = fh.read()
        model = parse(tokenize(source, path), path)
        for nested in model.includes:
            load(nested)
        model_classes.extend(model.classes)
        model_functions.extend(model.functions)

    for include in program.includes:
        load(include)
    return ast.Program(
        program.loc,
        [],
        model_classes + program.classes,
        model_functions + program.functions,
    )

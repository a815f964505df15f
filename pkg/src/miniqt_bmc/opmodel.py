"""Operational-model catalog loading and validation.

Model files are ordinary MiniQt sources picked up through the include
path; the catalog file maps include names to files and pins down the
assertion messages each contract method must carry.  `validate_models`
re-checks all of that: every model parses and type-checks on its own
(templates force-instantiated at int), and every required assertion is
present with its exact message.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from . import ast_nodes as ast
from .config import VerifierConfig
from .errors import MiniQtError
from .lexer import tokenize
from .parser import parse
from .source import SourceLocation
from .typecheck import TypedAst, typecheck


@dataclass
class ModelCatalog:
    path: str
    directory: str
    models: dict[str, str] = field(default_factory=dict)  # include name -> file
    required: list[tuple[str, str]] = field(default_factory=list)

    def model_path(self, name: str) -> str:
        return os.path.join(self.directory, self.models[name])


def load_catalog(path: str) -> ModelCatalog:
    """Parse the catalog: `name = file` lines plus `require <method> "<msg>"`."""
    catalog = ModelCatalog(path, os.path.dirname(os.path.abspath(path)))
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("require "):
                rest = line[len("require "):].strip()
                method, _, message = rest.partition(" ")
                message = message.strip()
                if not (message.startswith('"') and message.endswith('"')):
                    raise MiniQtError(
                        f"{path}:{lineno}: require message must be quoted"
                    )
                catalog.required.append((method, message[1:-1]))
                continue
            name, sep, filename = line.partition("=")
            if not sep:
                raise MiniQtError(f"{path}:{lineno}: expected `name = file`")
            catalog.models[name.strip()] = filename.strip()
    return catalog


def _check_model_file(path: str, config: VerifierConfig) -> TypedAst | None:
    """Parse and typecheck one model file standalone; None plus diagnostics
    handled by the caller on failure."""
    with open(path, "r", encoding="utf-8") as fh:
        source = fh.read()
    program = parse(tokenize(source, path), path)
    return _typecheck_models(program, config)


def _typecheck_models(program: ast.Program, config: VerifierConfig) -> TypedAst:
    """Typecheck model declarations with templates forced to their int
    instantiation; a synthetic main provides the required entry point."""
    loc = SourceLocation("<driver>", 1, 1)
    stmts: list[ast.Stmt] = []
    for serial, cls in enumerate(program.classes):
        ref = ast.TypeRef(loc, cls.name,
                          ast.TypeRef(loc, "int") if cls.type_param else None)
        stmts.append(ast.VarDeclStmt(loc, ref, f"__inst{serial}", None))
    stmts.append(ast.ReturnStmt(loc, ast.IntLit(loc, 0)))
    driver = ast.FuncDecl(loc, ast.TypeRef(loc, "int"), "main", [],
                          ast.Block(loc, stmts))
    merged = ast.Program(program.loc, [], program.classes,
                         program.functions + [driver])
    return typecheck(merged, config)


def validate_models(catalog: ModelCatalog,
                    config: VerifierConfig | None = None) -> list[str]:
    """Check the whole catalog; an empty list means every model is healthy."""
    config = config or VerifierConfig()
    diagnostics: list[str] = []
    parsed: list[ast.ClassDecl] = []
    for name, filename in catalog.models.items():
        path = catalog.model_path(name)
        if not os.path.isfile(path):
            diagnostics.append(f"{name}: model file {path} does not exist")
            continue
        try:
            typed = _check_model_file(path, config)
        except MiniQtError as err:
            diagnostics.append(f"{name}: {err}")
            continue
        parsed.extend(typed.program.classes)

    if diagnostics:
        return diagnostics

    # Required assertions are resolved against the merged, monomorphized view.
    classes = {cls.name: cls for cls in parsed}
    for mangled, message in catalog.required:
        try:
            owner, rest = mangled.split("::", 1)
            method_name, arity_text = rest.rsplit("/", 1)
            arity = int(arity_text)
        except ValueError:
            diagnostics.append(f"malformed required method name '{mangled}'")
            continue
        cls = classes.get(owner)
        if cls is None:
            diagnostics.append(f"missing-required-assertion {mangled}: "
                               f"no model class '{owner}'")
            continue
        method = next(
            (m for m in cls.methods
             if m.name == method_name and len(m.params) == arity and not m.is_ctor),
            None,
        )
        if method is None:
            diagnostics.append(f"missing-required-assertion {mangled}: "
                               "method not found")
            continue
        messages = [
            node.message
            for node in ast.iter_nodes(method.body)
            if isinstance(node, ast.VerifierAssertStmt)
        ]
        if message not in messages:
            diagnostics.append(
                f"missing-required-assertion {mangled}: expected "
                f'"{message}", found {messages or "none"}'
            )
    return diagnostics

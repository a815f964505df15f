"""miniqt-bmc: a bounded model checker for MiniQt programs.

Pipeline: lex/parse, include resolution against the model path, type
checking with template monomorphization, lowering to GOTO-programs,
symbolic execution into guarded SSA, bit-vector encoding, bit-blasting,
CDCL SAT solving, and counterexample reconstruction.  Qt classes are
supplied as operational-model source files loaded through the include
path.
"""

from .bitblast import Cnf, bitblast
from .config import VerifierConfig
from .counterexample import Counterexample, eval_model
from .encode import encode
from .goto_ir import GotoProgram, format_goto_program, validate_goto
from .includes import resolve_includes
from .interp import Trace, concrete_interpret
from .lexer import tokenize
from .lower import lower_to_goto
from .opmodel import ModelCatalog, load_catalog, validate_models
from .parser import parse
from .sat import SolveResult, sat_solve
from .smtlib import emit_smtlib
from .ssa import SsaSystem, format_ssa
from .suite import SuiteReport, compute_rates, run_suite
from .symex import symex
from .terms import Term, TermBuilder
from .typecheck import TypedAst, typecheck
from .verify import (
    VerificationResult,
    format_counterexample,
    verify_file,
    verify_source,
)

__all__ = [
    "Cnf",
    "Counterexample",
    "GotoProgram",
    "ModelCatalog",
    "SolveResult",
    "SsaSystem",
    "SuiteReport",
    "Term",
    "TermBuilder",
    "Trace",
    "TypedAst",
    "VerificationResult",
    "VerifierConfig",
    "bitblast",
    "compute_rates",
    "concrete_interpret",
    "emit_smtlib",
    "encode",
    "eval_model",
    "format_counterexample",
    "format_goto_program",
    "format_ssa",
    "load_catalog",
    "lower_to_goto",
    "parse",
    "resolve_includes",
    "run_suite",
    "sat_solve",
    "symex",
    "tokenize",
    "typecheck",
    "validate_goto",
    "validate_models",
    "verify_file",
    "verify_source",
]

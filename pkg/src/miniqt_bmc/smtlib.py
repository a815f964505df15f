"""SMT-LIB2 (QF_BV) emission for the encoded formula.

Shared DAG nodes become a flat sequence of define-fun bindings, one per
internal node, so the script size stays linear and no solver-side parser
has to chew through deeply nested lets.
"""

from __future__ import annotations

from .terms import BvSort, Term, iter_dag

_OPS = {
    "not": "not",
    "and": "and",
    "or": "or",
    "implies": "=>",
    "eq": "=",
    "ite": "ite",
    "bvadd": "bvadd",
    "bvsub": "bvsub",
    "bvneg": "bvneg",
    "bvmul": "bvmul",
    "bvslt": "bvslt",
    "bvsle": "bvsle",
}


def _sort_text(sort) -> str:
    if isinstance(sort, BvSort):
        return f"(_ BitVec {sort.width})"
    return "Bool"


def emit_smtlib(term: Term) -> str:
    """Render a Boolean term as a complete QF_BV script (check-sat, get-model)."""
    lines = ["(set-logic QF_BV)"]
    names: dict[int, str] = {}
    declared: set[str] = set()
    serial = 0
    for node in iter_dag(term):
        if node.kind == "bool":
            names[id(node)] = "true" if node.payload else "false"
        elif node.kind == "bv":
            names[id(node)] = f"(_ bv{node.payload} {node.sort.width})"
        elif node.kind == "var":
            symbol = f"|{node.payload}|"
            if symbol not in declared:
                declared.add(symbol)
                lines.append(f"(declare-const {symbol} {_sort_text(node.sort)})")
            names[id(node)] = symbol
        else:
            args = " ".join(names[id(a)] for a in node.args)
            name = f"t{serial}"
            serial += 1
            lines.append(
                f"(define-fun {name} () {_sort_text(node.sort)} "
                f"({_OPS[node.kind]} {args}))"
            )
            names[id(node)] = name
    lines.append(f"(assert {names[id(term)]})")
    lines.append("(check-sat)")
    lines.append("(get-model)")
    return "\n".join(lines) + "\n"

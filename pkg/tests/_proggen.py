"""Seeded random program generator for differential testing.

Emits scalar MiniQt programs: a few declared ints, up to `n_nondet`
nondeterministic reads, nested if/else, bounded counting loops (fresh
counters the body never touches, at most 5 iterations), arithmetic with
division, and sprinkled asserts.  Loop bounds stay below the unwind
bound on purpose so BMC verdicts are comparable with exhaustive concrete
execution.
"""

from __future__ import annotations

import random


class _Gen:
    def __init__(self, rng: random.Random, n_nondet: int):
        self.rng = rng
        self.vars: list[str] = []
        self.n_nondet = n_nondet
        self.loop_serial = 0
        self.asserts = 0

    def literal(self) -> str:
        return str(self.rng.randint(-8, 7))

    def expr(self, depth: int) -> str:
        rng = self.rng
        if depth <= 0 or rng.random() < 0.4:
            if self.vars and rng.random() < 0.7:
                return rng.choice(self.vars)
            return self.literal()
        op = rng.choice(["+", "+", "-", "-", "*", "/", "%"])
        return f"({self.expr(depth - 1)} {op} {self.expr(depth - 1)})"

    def cond(self, depth: int) -> str:
        rng = self.rng
        if depth <= 0 or rng.random() < 0.6:
            op = rng.choice(["<", "<=", ">", ">=", "==", "!="])
            return f"{self.expr(1)} {op} {self.expr(1)}"
        form = rng.random()
        if form < 0.4:
            return f"({self.cond(depth - 1)}) && ({self.cond(depth - 1)})"
        if form < 0.8:
            return f"({self.cond(depth - 1)}) || ({self.cond(depth - 1)})"
        return f"!({self.cond(depth - 1)})"

    def stmts(self, budget: int, depth: int, indent: str) -> list[str]:
        rng = self.rng
        out: list[str] = []
        while budget > 0:
            budget -= 1
            pick = rng.random()
            if pick < 0.45 and self.vars:
                var = rng.choice(self.vars)
                out.append(f"{indent}{var} = {self.expr(2)};")
            elif pick < 0.65 and depth > 0:
                out.append(f"{indent}if ({self.cond(1)}) {{")
                out.extend(self.stmts(rng.randint(1, 2), depth - 1, indent + "    "))
                if rng.random() < 0.5:
                    out.append(f"{indent}}} else {{")
                    out.extend(self.stmts(rng.randint(1, 2), depth - 1,
                                          indent + "    "))
                out.append(f"{indent}}}")
            elif pick < 0.8 and depth > 0:
                counter = f"t{self.loop_serial}"
                self.loop_serial += 1
                bound = rng.randint(1, 5)
                out.append(f"{indent}for (int {counter} = 0; "
                           f"{counter} < {bound}; {counter}++) {{")
                out.extend(self.stmts(rng.randint(1, 2), depth - 1,
                                      indent + "    "))
                out.append(f"{indent}}}")
            elif pick < 0.92:
                self.asserts += 1
                out.append(f"{indent}assert({self.cond(1)});")
            elif self.vars:
                var = rng.choice(self.vars)
                out.append(f"{indent}{var} = {self.expr(1)};")
        return out


def generate_program(seed: int, n_nondet: int = 2) -> tuple[str, int]:
    rng = random.Random(seed)
    gen = _Gen(rng, n_nondet)
    lines = ["int main() {"]
    for i in range(rng.randint(1, 3)):
        name = f"v{i}"
        gen.vars.append(name)
        lines.append(f"    int {name} = {gen.literal()};")
    nondets = rng.randint(0, n_nondet)
    for i in range(nondets):
        name = f"x{i}"
        gen.vars.append(name)
        lines.append(f"    int {name} = nondet_int();")
    lines.extend(gen.stmts(rng.randint(3, 6), 2, "    "))
    if gen.asserts == 0:
        lines.append(f"    assert({gen.cond(1)});")
    lines.append("    return 0;")
    lines.append("}")
    return "\n".join(lines) + "\n", nondets


def generate_concrete_program(seed: int) -> str:
    source, _ = generate_program(seed, n_nondet=0)
    return source

#!/usr/bin/env python3
"""Generate the benchmark corpus: uniform random 3-SAT at the classic
SATLIB uf sizes (n=20/m=91, n=50/m=218), filtered to satisfiable instances
with a self-contained DPLL, written as DIMACS with the SATLIB-style
'%'/'0' trailer. Deterministic for a fixed seed; re-running reproduces the
committed corpus byte for byte.

Usage: python3 scripts/make_instances.py [outdir]
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

FAMILIES = (
    # label, n, m, count, seed
    ("uf20", 20, 91, 60, 2024),
    ("uf50", 50, 218, 30, 4024),
)


def random_3sat(n: int, m: int, rng: random.Random) -> list[tuple[int, int, int]]:
    """m distinct clauses; each picks 3 distinct variables, random polarity."""
    clauses: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int, int]] = set()
    while len(clauses) < m:
        vs = sorted(rng.sample(range(1, n + 1), 3))
        lits = tuple(v if rng.random() < 0.5 else -v for v in vs)
        if lits in seen:
            continue
        seen.add(lits)
        clauses.append(lits)
    return clauses


def dpll_satisfiable(clauses: list[tuple[int, ...]], n: int) -> bool:
    """Complete check via DPLL with unit propagation; independent of the solver."""

    def propagate(assign: dict[int, bool], active: list[tuple[int, ...]]):
        while True:
            unit = None
            next_active = []
            for clause in active:
                unassigned = []
                satisfied = False
                for lit in clause:
                    var = abs(lit)
                    val = assign.get(var)
                    if val is None:
                        unassigned.append(lit)
                    elif (lit > 0) == val:
                        satisfied = True
                        break
                if satisfied:
                    continue
                if not unassigned:
                    return None  # conflict
                if len(unassigned) == 1:
                    unit = unassigned[0]
                next_active.append(tuple(unassigned))
            if unit is None:
                return next_active
            assign[abs(unit)] = unit > 0
            active = next_active

    def branch_var(active: list[tuple[int, ...]]) -> int:
        counts: dict[int, int] = {}
        for clause in active:
            for lit in clause:
                counts[abs(lit)] = counts.get(abs(lit), 0) + 1
        return max(counts, key=lambda v: (counts[v], -v))

    def search(assign: dict[int, bool], active: list[tuple[int, ...]]) -> bool:
        active = propagate(assign, active)
        if active is None:
            return False
        if not active:
            return True
        var = branch_var(active)
        for value in (True, False):
            trial = dict(assign)
            trial[var] = value
            if search(trial, active):
                return True
        return False

    return search({}, list(clauses))


def write_dimacs(path: Path, n: int, clauses: list[tuple[int, ...]]) -> None:
    lines = [f"c generated by make_instances.py", f"p cnf {n} {len(clauses)}"]
    for clause in clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    lines.append("%")
    lines.append("0")
    path.write_text("\n".join(lines) + "\n")


def main() -> None:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "instances"
    for label, n, m, count, seed in FAMILIES:
        family_dir = outdir / label
        family_dir.mkdir(parents=True, exist_ok=True)
        rng = random.Random(seed)
        produced = 0
        attempts = 0
        while produced < count:
            attempts += 1
            clauses = random_3sat(n, m, rng)
            if not dpll_satisfiable(clauses, n):
                continue
            produced += 1
            write_dimacs(family_dir / f"{label}-{produced:03d}.cnf", n, clauses)
        print(f"{label}: wrote {produced} satisfiable instances ({attempts} sampled)")


if __name__ == "__main__":
    main()

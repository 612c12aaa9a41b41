"""Refinement policy: which second-order indicator products to add next.

The heuristic path pairs up clauses that are unsatisfied at the candidate
assignment or become unsatisfied after any single-variable flip of such a
clause's variables. When every such pair is already in the approximation, a
uniformly random clause is drawn and paired against all other clauses. When
every unordered pair in the whole formula is exhausted, refinement signals
saturation and the solver falls back to local search alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .approx import ApproxState, column_signature
from .cnf import Assignment, Formula, clause_satisfied
from .indicator import ColumnKey


class RefinementSaturated(Exception):
    """Every order-2 column (by key or by signature) is already present."""


@dataclass
class RefinementPlan:
    keys: list[ColumnKey] = field(default_factory=list)
    used_random: bool = False
    random_clause: int | None = None

    def __post_init__(self):
        if self.used_random != (self.random_clause is not None):
            raise ValueError("used_random must match presence of random_clause")


def clause_neighbors(formula: Formula, s: Assignment) -> set[int]:
    """Unsatisfied clauses at s, plus every clause unsatisfied at any
    single-variable flip of a variable occurring in an unsatisfied clause."""
    if len(s) != formula.num_vars:
        raise ValueError("assignment length mismatch")
    unsat = {
        m
        for m, clause in enumerate(formula.clauses)
        if not clause_satisfied(clause, s)
    }
    neighbors = set(unsat)
    flipped_vars: set[int] = set()
    for m in unsat:
        for var in formula.clauses[m].variables():
            if var in flipped_vars:
                continue
            flipped_vars.add(var)
            v = list(s)
            v[var] = -v[var]
            for j, clause in enumerate(formula.clauses):
                if not clause_satisfied(clause, v):
                    neighbors.add(j)
    return neighbors


def _is_new(state: ApproxState, key: ColumnKey) -> bool:
    """True if the key was never tried and its product is a genuinely new column.

    Examining a key computes (and memoizes) its product polynomial; keys whose
    signature is already indexed are marked as tried so they are never
    re-examined.
    """
    if key in state.seen_keys:
        return False
    poly = state.cache.column_poly(key)
    if column_signature(poly) in state.signature_index:
        state.seen_keys.add(key)
        return False
    return True


def _pairs_with(p: int, num_clauses: int) -> list[ColumnKey]:
    return [(min(p, j), max(p, j)) for j in range(num_clauses) if j != p]


def plan_refinement(
    formula: Formula,
    s: Assignment,
    state: ApproxState,
    rng: random.Random,
    allow_random: bool = True,
) -> RefinementPlan:
    """Choose the next batch of order-2 column keys for an unsatisfying s.

    Tries all new pairs from clause_neighbors first. If none remain, draws a
    random clause (up to M redraws, then a deterministic sweep) and pairs it
    with every other clause. Raises RefinementSaturated when no unordered
    pair anywhere is new. With allow_random=False an empty heuristic set
    yields an empty plan instead of a random one.
    """
    m_total = formula.num_clauses
    neighbors = sorted(clause_neighbors(formula, s))
    heuristic = [
        (i, j)
        for a, i in enumerate(neighbors)
        for j in neighbors[a + 1:]
        if _is_new(state, (i, j))
    ]
    if heuristic:
        return RefinementPlan(keys=heuristic)
    if not allow_random:
        return RefinementPlan()
    if m_total < 2:
        raise RefinementSaturated()
    for _ in range(m_total):
        p = rng.randrange(m_total)
        keys = [key for key in _pairs_with(p, m_total) if _is_new(state, key)]
        if keys:
            return RefinementPlan(keys=keys, used_random=True, random_clause=p)
    for p in range(m_total):
        keys = [key for key in _pairs_with(p, m_total) if _is_new(state, key)]
        if keys:
            return RefinementPlan(keys=keys, used_random=True, random_clause=p)
    raise RefinementSaturated()

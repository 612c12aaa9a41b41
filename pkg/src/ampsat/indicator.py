"""Clause-complement indicator polynomials and their pairwise products.

For a clause of width k, the indicator is the 2^k-term multilinear expansion
of (1/2^k) * prod_i (1 - c_i s_i), which takes the value 1 exactly on
assignments that leave the clause UNSATISFIED and 0 elsewhere. Products of
indicators (column keys of size 2) are 1 exactly where every referenced
clause is simultaneously unsatisfied.
"""

from __future__ import annotations

from itertools import combinations

from .cnf import Clause, Formula
from .fourier import SparsePoly

# A column of the approximation matrix, identified by the sorted tuple of
# clause indices whose indicators are multiplied together. () is the constant
# all-ones column.
ColumnKey = tuple[int, ...]

DEFAULT_MAX_ORDER = 2


def clause_indicator(clause: Clause, num_vars: int) -> SparsePoly:
    """Exact 2^k-term expansion of the unsatisfied-clause indicator."""
    k = clause.width
    base = 2.0 ** -k
    terms: dict[frozenset, float] = {}
    lits = clause.literals
    for size in range(k + 1):
        for subset in combinations(lits, size):
            coeff = base
            for lit in subset:
                coeff *= -lit.polarity
            terms[frozenset(l.var for l in subset)] = coeff
    return SparsePoly(num_vars, terms)


def validate_key(key: ColumnKey, num_clauses: int, max_order: int) -> None:
    if list(key) != sorted(set(key)):
        raise ValueError(f"column key must be sorted and distinct: {key!r}")
    if len(key) > max_order:
        raise ValueError(f"column key {key!r} exceeds max order {max_order}")
    for m in key:
        if not 0 <= m < num_clauses:
            raise ValueError(f"column key {key!r} references missing clause {m}")


class IndicatorCache:
    """Memoized construction of column polynomials for one formula.

    First-order indicators are built once; higher-order products are memoized
    by key. Entries are write-once, so concurrent readers are safe as long as
    insertions are serialized by the owning solver.
    """

    def __init__(self, formula: Formula, max_order: int = DEFAULT_MAX_ORDER):
        if max_order < 1:
            raise ValueError("max_order must be >= 1")
        self.formula = formula
        self.max_order = max_order
        self._first: list[SparsePoly | None] = [None] * formula.num_clauses
        self._products: dict[ColumnKey, SparsePoly] = {}

    def first_order(self, m: int) -> SparsePoly:
        poly = self._first[m]
        if poly is None:
            poly = clause_indicator(self.formula.clauses[m], self.formula.num_vars)
            self._first[m] = poly
        return poly

    def column_poly(self, key: ColumnKey) -> SparsePoly:
        """() -> constant 1; (m,) -> k_m; (m, n) -> k_m * k_n (memoized)."""
        validate_key(key, self.formula.num_clauses, self.max_order)
        if len(key) == 0:
            return SparsePoly.constant(self.formula.num_vars, 1.0)
        if len(key) == 1:
            return self.first_order(key[0])
        poly = self._products.get(key)
        if poly is None:
            poly = self.first_order(key[0])
            for m in key[1:]:
                poly = poly.multiply(self.first_order(m))
            self._products[key] = poly
        return poly


def column_poly(key: ColumnKey, formula: Formula, cache: IndicatorCache) -> SparsePoly:
    """Functional wrapper around IndicatorCache.column_poly."""
    if cache.formula is not formula:
        raise ValueError("cache was built for a different formula")
    return cache.column_poly(key)

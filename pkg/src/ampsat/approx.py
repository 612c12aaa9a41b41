"""Least-squares approximation of the solution-set indicator, built and
extended entirely in the coefficient domain.

The approximation is omega_tilde = sum_i a_i * column_i where column 0 is the
constant 1 and the rest are clause indicators or pairwise indicator products.
The weights solve (A^T A) a = e_0: the Gram matrix of normalized inner
products against the right-hand side that encodes "the solution set overlaps
the all-ones column and is orthogonal to every indicator column". The
right-hand side's leading entry is fixed at exactly 1; bias decimation is
scale-invariant, so its true value is immaterial.

Gram entries are Plancherel sums of coefficient products. They are evaluated
in bulk as sparse dot products over a shared term index (scipy.sparse), which
is the same sum per entry at C speed; nothing is ever enumerated over 2^n.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse

from .cnf import Formula
from .fourier import PRUNE_EPSILON, SparsePoly
from .indicator import ColumnKey, IndicatorCache

RIDGE_LADDER = (0.0, 1e-10, 1e-8, 1e-6)
SIGNATURE_DECIMALS = 10
_RESIDUAL_TOL = 1e-6

# signature_index value for products that are identically zero and therefore
# never become columns (a zero column would make the Gram matrix singular).
ZERO_COLUMN = -1

Signature = tuple


class WeightSolveError(RuntimeError):
    """The Gram system could not be solved even after ridge escalation."""


def column_signature(poly: SparsePoly) -> Signature:
    """Hashable identity of a column as a function: its rounded term list.

    Distinct keys can produce identical polynomials (duplicate clauses,
    coinciding products); columns are deduplicated on this, not on the key.
    """
    return tuple(
        sorted(
            (tuple(sorted(key)), round(coeff, SIGNATURE_DECIMALS))
            for key, coeff in poly.terms.items()
        )
    )


class ApproxState:
    """Columns, Gram matrix, solved weights, and the assembled approximation.

    Single-owner mutable: one solver run drives add_columns/solve_weights
    sequentially. keys[0] is always the empty key (constant-1 column).
    """

    def __init__(self, formula: Formula, cache: IndicatorCache | None = None):
        self.formula = formula
        self.cache = cache if cache is not None else IndicatorCache(formula)
        self.keys: list[ColumnKey] = []
        self.polys: list[SparsePoly] = []
        self.weights = np.zeros(0)
        self.omega_tilde = SparsePoly.zero(formula.num_vars)
        self.signature_index: dict[Signature, int] = {}
        self.seen_keys: set[ColumnKey] = set()
        self.ridge_lambda = 0.0
        self._term_ids: dict[frozenset, int] = {}
        self._rows: list[tuple[np.ndarray, np.ndarray]] = []
        self._gram_buf = np.zeros((0, 0))

    @property
    def num_columns(self) -> int:
        return len(self.keys)

    @property
    def gram(self) -> np.ndarray:
        """View of the live (K x K) Gram matrix."""
        k = self.num_columns
        return self._gram_buf[:k, :k]

    def dump(self) -> str:
        """Debug text dump of keys and weights for refinement-trace analysis."""
        lines = [f"columns {self.num_columns} ridge {self.ridge_lambda:g}"]
        for key, w in zip(self.keys, self.weights):
            lines.append(f"{','.join(str(m) for m in key) or '-'} {w:.12g}")
        return "\n".join(lines) + "\n"

    def _row_for(self, poly: SparsePoly) -> tuple[np.ndarray, np.ndarray]:
        ids = np.empty(len(poly.terms), dtype=np.int64)
        coeffs = np.empty(len(poly.terms), dtype=np.float64)
        term_ids = self._term_ids
        for pos, (key, coeff) in enumerate(poly.terms.items()):
            tid = term_ids.get(key)
            if tid is None:
                tid = len(term_ids)
                term_ids[key] = tid
            ids[pos] = tid
            coeffs[pos] = coeff
        return ids, coeffs

    def _csr(self, rows: Sequence[tuple[np.ndarray, np.ndarray]]) -> scipy.sparse.csr_matrix:
        width = len(self._term_ids)
        lengths = np.fromiter((len(ids) for ids, _ in rows), dtype=np.int64, count=len(rows))
        indptr = np.zeros(len(rows) + 1, dtype=np.int64)
        np.cumsum(lengths, out=indptr[1:])
        if rows:
            indices = np.concatenate([ids for ids, _ in rows])
            data = np.concatenate([coeffs for _, coeffs in rows])
        else:
            indices = np.zeros(0, dtype=np.int64)
            data = np.zeros(0, dtype=np.float64)
        return scipy.sparse.csr_matrix((data, indices, indptr), shape=(len(rows), width))

    def _ensure_capacity(self, k: int) -> None:
        cap = self._gram_buf.shape[0]
        if k <= cap:
            return
        new_cap = max(k, cap + cap // 2, 16)
        buf = np.zeros((new_cap, new_cap))
        buf[:cap, :cap] = self._gram_buf
        self._gram_buf = buf

    def _extend_gram(self, start: int) -> None:
        """Fill Gram rows/columns for columns [start, K) against everything."""
        k = self.num_columns
        self._ensure_capacity(k)
        new = self._csr(self._rows[start:])
        everything = self._csr(self._rows)
        block = (new @ everything.T).toarray()
        self._gram_buf[start:k, :start] = block[:, :start]
        self._gram_buf[:start, start:k] = block[:, :start].T
        square = block[:, start:]
        self._gram_buf[start:k, start:k] = (square + square.T) / 2.0


def init_first_order(formula: Formula, cache: IndicatorCache | None = None) -> ApproxState:
    """Constant column plus one column per distinct clause, solved and assembled."""
    state = ApproxState(formula, cache)
    keys: list[ColumnKey] = [()]
    keys.extend((m,) for m in range(formula.num_clauses))
    add_columns(state, keys)
    return state


def add_columns(state: ApproxState, new_keys: Iterable[ColumnKey]) -> int:
    """Append columns for keys not yet present (by key, then by signature).

    Identically-zero products are recorded as exhausted but never added.
    Returns the number of columns actually appended; when nonzero the Gram
    matrix is extended incrementally, weights re-solved, and omega_tilde
    rebuilt.
    """
    accepted: list[tuple[ColumnKey, SparsePoly]] = []
    for key in new_keys:
        key = tuple(key)
        if key in state.seen_keys:
            continue
        poly = state.cache.column_poly(key)
        state.seen_keys.add(key)
        sig = column_signature(poly)
        if sig in state.signature_index:
            continue
        if poly.is_zero:
            state.signature_index[sig] = ZERO_COLUMN
            continue
        state.signature_index[sig] = len(state.keys) + len(accepted)
        accepted.append((key, poly))
    if not accepted:
        return 0
    start = state.num_columns
    for key, poly in accepted:
        state.keys.append(key)
        state.polys.append(poly)
        state._rows.append(state._row_for(poly))
    state._extend_gram(start)
    solve_weights(state)
    _assemble_omega_tilde(state)
    return len(accepted)


def solve_weights(state: ApproxState) -> np.ndarray:
    """Solve (A^T A) a = e_0, escalating a ridge term if the system is singular.

    Stores the result and the ridge value used on the state and returns the
    weight vector.
    """
    k = state.num_columns
    if k == 0:
        raise WeightSolveError("no columns to solve")
    rhs = np.zeros(k)
    rhs[0] = 1.0
    gram = state.gram
    for lam in RIDGE_LADDER:
        m = gram.copy()
        if lam:
            m.flat[:: k + 1] += lam
        try:
            factor = scipy.linalg.cho_factor(m, lower=True, check_finite=False)
            a = scipy.linalg.cho_solve(factor, rhs, check_finite=False)
        except scipy.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(a)):
            continue
        residual = np.abs(m @ a - rhs).max()
        if residual <= _RESIDUAL_TOL * max(1.0, np.abs(a).max()):
            state.weights = a
            state.ridge_lambda = lam
            return a
    raise WeightSolveError(f"Gram solve failed after ridge escalation (K={k})")


def _assemble_omega_tilde(state: ApproxState) -> None:
    acc: dict[frozenset, float] = {}
    # .tolist() so downstream polynomial algebra works on plain floats
    for w, poly in zip(state.weights.tolist(), state.polys):
        if w == 0.0:
            continue
        for key, coeff in poly.terms.items():
            acc[key] = acc.get(key, 0.0) + w * coeff
    pruned = {k: v for k, v in acc.items() if abs(v) > PRUNE_EPSILON}
    state.omega_tilde = SparsePoly._raw(state.formula.num_vars, pruned)

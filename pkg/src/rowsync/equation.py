"""Solutions of the sink equation.

Given the matrix of a word u, we study row monomial L with
multiply(M_u, L) equal to the matrix with all units in one column q.
A row monomial L solves the equation exactly when every column index in
the image set of u is sent to q; rows outside the image set are free.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Sequence

from .errors import CapacityError, DomainError, PolicyError
from .rowmon import RowMonomialMatrix, column_rows, multiply, nonzero_columns

DEFAULT_SOLUTION_BUDGET = 1_000_000


def sink_matrix(n: int, q: int = 0) -> RowMonomialMatrix:
    """The rank-one matrix with every unit in column q."""
    if not 0 <= q < n:
        raise DomainError(f"column {q} outside [0, {n})")
    return RowMonomialMatrix(n=n, targets=tuple([q] * n))


@dataclass(frozen=True)
class SolutionSpec:
    """Shape of the solution family of one sink equation.

    fixed_rows are the rows every solution must send to q (the image set of
    the word); free_rows may use any column from allowed_columns.
    """

    n: int
    q: int
    fixed_rows: tuple[int, ...]
    free_rows: tuple[int, ...]
    allowed_columns: tuple[int, ...]

    @property
    def solution_count(self) -> int:
        return len(self.allowed_columns) ** len(self.free_rows)

    @property
    def minimal_solution_count(self) -> int:
        off_q = [c for c in self.allowed_columns if c != self.q]
        return len(off_q) ** len(self.free_rows)


def solution_spec(m_u: RowMonomialMatrix, q: int = 0,
                  restriction: Sequence[int] | None = None) -> SolutionSpec:
    """Describe all solutions L of the sink equation for m_u and column q.

    restriction narrows the columns free rows may use; fixed rows always go
    to q regardless.
    """
    n = m_u.n
    if not 0 <= q < n:
        raise DomainError(f"column {q} outside [0, {n})")
    if restriction is None:
        allowed = tuple(range(n))
    else:
        allowed = tuple(sorted(set(restriction)))
        for c in allowed:
            if not 0 <= c < n:
                raise DomainError(f"restricted column {c} outside [0, {n})")
    fixed = tuple(sorted(nonzero_columns(m_u)))
    free = tuple(i for i in range(n) if i not in set(fixed))
    return SolutionSpec(n=n, q=q, fixed_rows=fixed, free_rows=free, allowed_columns=allowed)


def is_solution(m_u: RowMonomialMatrix, sol: RowMonomialMatrix, q: int = 0) -> bool:
    """True iff multiply(m_u, sol) is the sink matrix for column q."""
    if m_u.n != sol.n:
        raise DomainError(f"size mismatch: {m_u.n} vs {sol.n}")
    return multiply(m_u, sol) == sink_matrix(m_u.n, q)


def minimal_solution(m_u: RowMonomialMatrix, q: int = 0,
                     free_policy: Callable[[int], int] | None = None) -> RowMonomialMatrix:
    """The least solution under leq_q: only the forced rows point at q.

    Free rows take the lowest column other than q, unless free_policy maps
    the row index to a column itself.  A policy that answers q (or an
    out-of-range column) defeats minimality and raises PolicyError.
    """
    spec = solution_spec(m_u, q)
    if spec.free_rows and spec.n == 1:
        raise DomainError("no column other than q exists for free rows")
    default_col = 0 if q != 0 else 1 if spec.n > 1 else 0
    targets = [q] * spec.n
    for row in spec.free_rows:
        col = free_policy(row) if free_policy is not None else default_col
        if not 0 <= col < spec.n:
            raise PolicyError(f"policy sent row {row} to column {col}, outside [0, {spec.n})")
        if col == q:
            raise PolicyError(f"policy sent free row {row} to column {q}, the sink column itself")
        targets[row] = col
    return RowMonomialMatrix(n=spec.n, targets=tuple(targets))


def leq_q(a: RowMonomialMatrix, b: RowMonomialMatrix, q: int = 0) -> bool:
    """Partial order on solutions: a's q-column rows are a subset of b's."""
    if a.n != b.n:
        raise DomainError(f"size mismatch: {a.n} vs {b.n}")
    return set(column_rows(a, q)) <= set(column_rows(b, q))


def enumerate_solutions(m_u: RowMonomialMatrix, q: int = 0,
                        restriction: Sequence[int] | None = None,
                        budget: int = DEFAULT_SOLUTION_BUDGET) -> Iterator[RowMonomialMatrix]:
    """All solutions, lexicographic in the free rows' column choices.

    Free rows run in increasing row order, each over the allowed columns in
    increasing order.  Raises CapacityError before yielding anything if the
    family is larger than the budget.
    """
    spec = solution_spec(m_u, q, restriction)
    if spec.solution_count > budget:
        raise CapacityError(
            f"{spec.solution_count} solutions exceed the budget of {budget}; raise budget or restrict columns"
        )
    base = [spec.q] * spec.n
    for choice in product(spec.allowed_columns, repeat=len(spec.free_rows)):
        targets = list(base)
        for row, col in zip(spec.free_rows, choice):
            targets[row] = col
        yield RowMonomialMatrix(n=spec.n, targets=tuple(targets))

"""Exact rational linear algebra over flattened matrices.

Matrices enter as row-major 0/1 vectors of length n*n.  All elimination is
fraction-free: rows stay integer through cross-multiplication and gcd
normalization, and rationals only appear in solution coefficients.  No
floating point anywhere, so ranks, span membership and expressed
coefficients are exact at every size.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError
from .rowmon import RowMonomialMatrix

Vector = tuple[int, ...]
RationalCoefficients = tuple[Fraction, ...]


def flatten(m: RowMonomialMatrix) -> Vector:
    """Row-major 0/1 vector of length n*n; carries exactly n units."""
    n = m.n
    vec = [0] * (n * n)
    for i, t in enumerate(m.targets):
        vec[i * n + t] = 1
    return tuple(vec)


def _normalize(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = [v // g for v in row]
    for v in row:
        if v:
            if v < 0:
                row = [-x for x in row]
            break
    return row


class RationalBasis:
    """Incrementally maintained exact basis of integer vectors.

    Keeps an integer echelon (rows sorted by pivot position) plus the list of
    inserted vectors that actually grew the span, in insertion order.  A
    single writer may interleave insert with dimension and membership
    queries; instances are not safe for concurrent mutation.
    """

    def __init__(self, ambient: int):
        if ambient < 1:
            raise DomainError(f"ambient dimension must be positive, got {ambient}")
        self.ambient = ambient
        self._rows: list[tuple[int, list[int]]] = []
        self._inserted: list[Vector] = []

    @property
    def dimension(self) -> int:
        return len(self._rows)

    @property
    def inserted_vectors(self) -> tuple[Vector, ...]:
        """The vectors that enlarged the span, in the order they arrived."""
        return tuple(self._inserted)

    def _residue(self, vec: Sequence[int]) -> list[int]:
        v = list(vec)
        for pivot, row in self._rows:
            c = v[pivot]
            if c:
                lead = row[pivot]
                v = [a * lead - b * c for a, b in zip(v, row)]
                v = _normalize(v)
        return v

    def insert(self, vec: Sequence[int]) -> bool:
        """Add a vector; True iff it was independent of the current span."""
        if len(vec) != self.ambient:
            raise DomainError(f"vector length {len(vec)} does not match ambient {self.ambient}")
        residue = self._residue(vec)
        pivot = next((i for i, v in enumerate(residue) if v), None)
        if pivot is None:
            return False
        insort(self._rows, (pivot, residue))
        self._inserted.append(tuple(vec))
        return True

    def contains(self, vec: Sequence[int]) -> bool:
        if len(vec) != self.ambient:
            raise DomainError(f"vector length {len(vec)} does not match ambient {self.ambient}")
        return not any(self._residue(vec))

    def serialize(self) -> list[list[int]]:
        """Ordered list of the stored flattened vectors."""
        return [list(v) for v in self._inserted]


def basis_insert(basis: RationalBasis, m: RowMonomialMatrix) -> bool:
    """Insert a matrix into a basis of flattened matrices; True iff span grew."""
    if basis.ambient != m.n * m.n:
        raise DomainError(f"basis ambient {basis.ambient} does not fit a {m.n}x{m.n} matrix")
    return basis.insert(flatten(m))


def rank_of_vectors(vectors: Iterable[Sequence[int]], ambient: int) -> int:
    basis = RationalBasis(ambient)
    for v in vectors:
        basis.insert(v)
    return basis.dimension


def matrix_rank(m: RowMonomialMatrix) -> int:
    """Exact rank of the n x n grid, by elimination over its rows."""
    return rank_of_vectors((m.row(i) for i in range(m.n)), m.n)


def span_dimension(matrices: Iterable[RowMonomialMatrix]) -> int:
    """Dimension of the span of flattened matrices; 0 for an empty family."""
    basis: RationalBasis | None = None
    for m in matrices:
        if basis is None:
            basis = RationalBasis(m.n * m.n)
        basis_insert(basis, m)
    return 0 if basis is None else basis.dimension


def express_vectors(target: Sequence[int], columns: Sequence[Sequence[int]]) -> RationalCoefficients | None:
    """Solve sum_i x_i * columns[i] = target exactly over the rationals.

    Plain Gaussian elimination on the augmented system with deterministic
    pivoting (first usable row per column).  On underdetermined systems the
    free variables are fixed to zero, so equal inputs give equal outputs.
    Returns None when the target is outside the span.
    """
    m = len(columns)
    height = len(target)
    for col in columns:
        if len(col) != height:
            raise DomainError(f"column length {len(col)} does not match target length {height}")
    if m == 0:
        return () if not any(target) else None
    rows = [[Fraction(columns[j][r]) for j in range(m)] + [Fraction(target[r])]
            for r in range(height)]
    pivots: list[tuple[int, int]] = []
    rank_so_far = 0
    for col in range(m):
        pivot_row = None
        for r in range(rank_so_far, height):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank_so_far], rows[pivot_row] = rows[pivot_row], rows[rank_so_far]
        pivot = rows[rank_so_far]
        for r in range(rank_so_far + 1, height):
            factor = rows[r][col]
            if factor:
                ratio = factor / pivot[col]
                rows[r] = [a - ratio * b for a, b in zip(rows[r], pivot)]
        pivots.append((rank_so_far, col))
        rank_so_far += 1
    for r in range(rank_so_far, height):
        if rows[r][m]:
            return None
    coeffs = [Fraction(0)] * m
    for row_idx, col in reversed(pivots):
        row = rows[row_idx]
        acc = row[m]
        for c in range(col + 1, m):
            if row[c]:
                acc -= row[c] * coeffs[c]
        coeffs[col] = acc / row[col]
    return tuple(coeffs)


def express(target: RowMonomialMatrix, matrices: Sequence[RowMonomialMatrix]) -> RationalCoefficients | None:
    """Exact coefficients writing target as a combination of the given matrices.

    None when no exact combination exists.  Free variables are zero, so the
    answer is deterministic even when the family is dependent.
    """
    for m in matrices:
        if m.n != target.n:
            raise DomainError(f"size mismatch: {m.n} vs {target.n}")
    return express_vectors(flatten(target), [flatten(m) for m in matrices])


@dataclass(frozen=True)
class SumConditionVerdict:
    """Outcome of the coefficient-sum check on an exact combination.

    For a row monomial target both the coefficient sum and every row sum of
    the combination must equal 1; for the zero matrix they must all be 0.
    """

    ok: bool
    expected: int
    coefficient_sum: Fraction
    row_sums: tuple[Fraction, ...]
    violations: tuple[str, ...]


def check_sum_conditions(coeffs: Sequence[Fraction],
                         matrices: Sequence[RowMonomialMatrix],
                         target: RowMonomialMatrix | None) -> SumConditionVerdict:
    """Check the necessary sum conditions of a combination; target None means zero.

    The caller asserts that coeffs expresses target over matrices; this only
    audits the sums.  Row sums are accumulated cell by cell rather than
    assumed, so a violation would actually surface.
    """
    if len(coeffs) != len(matrices):
        raise DomainError(f"{len(coeffs)} coefficients for {len(matrices)} matrices")
    if not matrices:
        n = target.n if target is not None else 1
    else:
        n = matrices[0].n
        for m in matrices:
            if m.n != n:
                raise DomainError(f"size mismatch: {m.n} vs {n}")
        if target is not None and target.n != n:
            raise DomainError(f"target size {target.n} does not match {n}")
    expected = 0 if target is None else 1
    coefficient_sum = sum((Fraction(c) for c in coeffs), Fraction(0))
    cells = [[Fraction(0)] * n for _ in range(n)]
    for c, m in zip(coeffs, matrices):
        fc = Fraction(c)
        for i, t in enumerate(m.targets):
            cells[i][t] += fc
    row_sums = tuple(sum(row, Fraction(0)) for row in cells)
    violations = []
    if coefficient_sum != expected:
        violations.append(f"coefficient sum {coefficient_sum} != {expected}")
    for i, s in enumerate(row_sums):
        if s != expected:
            violations.append(f"row {i} sums to {s} != {expected}")
    return SumConditionVerdict(ok=not violations, expected=expected,
                               coefficient_sum=coefficient_sum, row_sums=row_sums,
                               violations=tuple(violations))


def vij_basis(n: int, k: int) -> list[RowMonomialMatrix]:
    """Independent spanning family for matrices with units in the first k columns.

    For each row i and column j < k-1 one matrix with a unit at (i, j) and
    units at (m, k-1) for every other row m, then one matrix with all units
    in column k-1.  That is n*(k-1) + 1 matrices; their span contains every
    row monomial matrix whose targets stay below k.
    """
    if not 2 <= k <= n:
        raise DomainError(f"need 2 <= k <= n, got k = {k}, n = {n}")
    out = []
    for i in range(n):
        for j in range(k - 1):
            targets = [k - 1] * n
            targets[i] = j
            out.append(RowMonomialMatrix(n=n, targets=tuple(targets)))
    out.append(RowMonomialMatrix(n=n, targets=tuple([k - 1] * n)))
    return out


def decompose_vij(t: RowMonomialMatrix, k: int) -> RationalCoefficients:
    """Coefficients of t over vij_basis(t.n, k), in basis order.

    Writes t as the sum of the basis matrices matching its units outside
    column k-1, minus (m-1) copies of the all-last-column matrix, where m
    counts those units.  The result is re-evaluated before returning.
    """
    n = t.n
    if not 2 <= k <= n:
        raise DomainError(f"need 2 <= k <= n, got k = {k}, n = {n}")
    for i, tgt in enumerate(t.targets):
        if tgt >= k:
            raise DomainError(f"row {i} has its unit in column {tgt}, outside the first {k} columns")
    coeffs = [Fraction(0)] * (n * (k - 1) + 1)
    m_count = 0
    for i, tgt in enumerate(t.targets):
        if tgt < k - 1:
            coeffs[i * (k - 1) + tgt] = Fraction(1)
            m_count += 1
    coeffs[-1] = Fraction(-(m_count - 1))
    combo = [Fraction(0)] * (n * n)
    for c, b in zip(coeffs, vij_basis(n, k)):
        if c:
            for pos, v in enumerate(flatten(b)):
                if v:
                    combo[pos] += c
    if tuple(combo) != tuple(Fraction(v) for v in flatten(t)):
        raise DomainError("decomposition failed re-evaluation; input was not row monomial within k columns")
    return tuple(coeffs)


def all_row_monomial(n: int, columns: Sequence[int] | None = None) -> Iterable[RowMonomialMatrix]:
    """Every row monomial n x n matrix, targets drawn from the given columns.

    Lexicographic in the target sequence.  Default is all n columns, which
    yields n^n matrices; keep n small.
    """
    cols = tuple(range(n)) if columns is None else tuple(sorted(set(columns)))
    for c in cols:
        if not 0 <= c < n:
            raise DomainError(f"column {c} outside [0, {n})")
    for targets in product(cols, repeat=n):
        yield RowMonomialMatrix(n=n, targets=targets)


def two_column_span_dimension(n: int, c: int, d: int) -> int:
    """Span dimension of all matrices whose units stay inside columns {c, d}."""
    if c == d:
        raise DomainError("need two distinct columns")
    return span_dimension(all_row_monomial(n, columns=(c, d)))


def common_column_span_dimension(n: int, c: int) -> int:
    """Span dimension of matrices using column c plus at most one other column.

    One candidate reading of the bound on families sharing a nonzero column:
    every member has c among its nonzero columns and at most two nonzero
    columns in total.  Measured, not asserted.
    """
    basis = RationalBasis(n * n)
    for d in range(n):
        cols = (c,) if d == c else (c, d)
        for m in all_row_monomial(n, columns=cols):
            if c in m.targets:
                basis.insert(flatten(m))
    return basis.dimension


def sink_family_dimension(n: int) -> int:
    """Span dimension of the n single-column (all-units-in-one-column) matrices.

    The other candidate reading: one matrix per column, each of rank one.
    """
    sinks = (RowMonomialMatrix(n=n, targets=tuple([q] * n)) for q in range(n))
    return span_dimension(sinks)

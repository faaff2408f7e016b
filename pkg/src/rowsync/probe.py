"""Mechanical probes of the proof procedure on concrete automata.

Nothing in here presumes the procedure works: every step measures what
actually happens and the report carries plain verdicts.  The probe takes a
synchronizing word, walks its prefixes, assigns each prefix matrix a
distinctive cell through an exact maximum bipartite matching, builds the
corresponding solutions of the sink equation and then re-checks rank and
solution claims with exact arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .automaton import (Dfa, Word, apply_word, cerny_bound, check_word, format_word,
                        shortest_reset_length, EXACT_SEARCH_LIMIT)
from .equation import is_solution, sink_matrix
from .errors import CapacityError, DomainError
from .exactlin import RationalBasis, flatten
from .rowmon import RowMonomialMatrix, matrix_of_word, multiply, nonzero_columns

__all__ = [
    "PrefixRecord", "PrefixTrace", "prefix_trace", "maximum_matching",
    "MatchingReport", "PrefixColumnVerdict", "BoundVerdict", "ProbeReport",
    "allocation_probe", "check_prefix_column", "bound_check",
]


@dataclass(frozen=True)
class PrefixRecord:
    """One nonempty prefix: its matrix rank and the span dimension so far."""

    length: int
    word: Word
    r_size: int
    dimension: int


@dataclass(frozen=True)
class PrefixTrace:
    records: tuple[PrefixRecord, ...]

    def to_json(self, k: int) -> list[dict]:
        return [
            {"length": r.length, "word": format_word(r.word, k),
             "r_size": r.r_size, "dimension": r.dimension}
            for r in self.records
        ]


def _prefix_matrices(dfa: Dfa, word: Word) -> list[RowMonomialMatrix]:
    """Matrices of the nonempty prefixes, shortest first."""
    out = []
    targets = list(range(dfa.n))
    for a in word:
        row = dfa.delta[a]
        targets = [row[t] for t in targets]
        out.append(RowMonomialMatrix(n=dfa.n, targets=tuple(targets)))
    return out


def _sink_of(dfa: Dfa, word: Word) -> int:
    image = apply_word(dfa, range(dfa.n), word)
    if len(image) != 1:
        raise DomainError(
            f"word {format_word(word, dfa.k)!r} does not synchronize: image has {len(image)} states"
        )
    return next(iter(image))


def _resolve_sink(dfa: Dfa, word: Word, q: int | None) -> int:
    sink = _sink_of(dfa, word)
    if q is not None and q != sink:
        raise DomainError(f"word synchronizes to state {sink}, not to q = {q}")
    return sink


def prefix_trace(dfa: Dfa, word: Sequence[int]) -> PrefixTrace:
    """Rank and cumulative span dimension along the prefixes of a reset word.

    The rank of each prefix matrix never grows from one prefix to the next,
    and the span dimension never drops; both facts are recorded here and
    asserted elsewhere.
    """
    w = check_word(dfa, word)
    _sink_of(dfa, w)
    basis = RationalBasis(dfa.n * dfa.n)
    records = []
    for i, m in enumerate(_prefix_matrices(dfa, w), start=1):
        basis.insert(flatten(m))
        records.append(PrefixRecord(length=i, word=w[:i],
                                    r_size=len(nonzero_columns(m)),
                                    dimension=basis.dimension))
    return PrefixTrace(records=tuple(records))


def maximum_matching(adjacency: Sequence[Sequence[int]], right_size: int) -> list[int | None]:
    """Maximum bipartite matching, deterministic for fixed adjacency order.

    Standard Hopcroft-Karp: repeated breadth-first layering plus shortest
    augmenting paths.  Returns, for each left vertex, its matched right
    vertex or None.
    """
    left_size = len(adjacency)
    match_left: list[int | None] = [None] * left_size
    match_right: list[int | None] = [None] * right_size
    unreachable = left_size + right_size + 1
    dist = [0] * left_size

    def bfs() -> bool:
        queue: deque[int] = deque()
        for u in range(left_size):
            if match_left[u] is None:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = unreachable
        found = False
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                w = match_right[v]
                if w is None:
                    found = True
                elif dist[w] == unreachable:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adjacency[u]:
            w = match_right[v]
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_left[u] = v
                match_right[v] = u
                return True
        dist[u] = unreachable
        return False

    while bfs():
        for u in range(left_size):
            if match_left[u] is None:
                dfs(u)
    return match_left


@dataclass(frozen=True)
class MatchingReport:
    """Outcome of the prefix-to-cell assignment.

    assignments holds one entry per collected prefix, in prefix order:
    (prefix_length, row, column) when matched, None when the matching left
    that prefix without a cell.
    """

    success: bool
    prefix_count: int
    cell_count: int
    cell_columns: tuple[int, ...]
    assignments: tuple[tuple[int, int, int] | None, ...]
    unmatched_prefix_lengths: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "success": self.success,
            "prefix_count": self.prefix_count,
            "cell_count": self.cell_count,
            "cell_columns": list(self.cell_columns),
            "matched": sum(1 for a in self.assignments if a is not None),
            "assignments": [
                None if a is None else {"prefix_length": a[0], "row": a[1], "column": a[2]}
                for a in self.assignments
            ],
            "unmatched_prefix_lengths": list(self.unmatched_prefix_lengths),
        }


@dataclass(frozen=True)
class PrefixColumnVerdict:
    """Whether column q of one prefix matrix is nonzero."""

    length: int
    holds: bool


@dataclass(frozen=True)
class BoundVerdict:
    """Shortest reset length against the (n-1)^2 bound."""

    n: int
    bound: int
    length: int | None
    status: str

    def to_json(self) -> dict:
        return {"n": self.n, "bound": self.bound, "length": self.length, "status": self.status}


@dataclass(frozen=True)
class ProbeReport:
    """Everything one probe run measured.  See allocation_probe."""

    dfa: Dfa
    reset_word: Word
    q: int
    trace: PrefixTrace
    matching: MatchingReport
    solutions: tuple[RowMonomialMatrix, ...]
    solutions_ok: bool | None
    independence_rank: int | None
    independence_expected: int | None
    independence_ok: bool | None
    prefix_column_verdicts: tuple[PrefixColumnVerdict, ...]
    bound: BoundVerdict
    notes: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "automaton": {"n": self.dfa.n, "k": self.dfa.k,
                          "delta": [list(row) for row in self.dfa.delta]},
            "reset_word": format_word(self.reset_word, self.dfa.k),
            "q": self.q,
            "prefix_trace": self.trace.to_json(self.dfa.k),
            "matching": self.matching.to_json(),
            "solutions": [list(s.targets) for s in self.solutions],
            "solutions_ok": self.solutions_ok,
            "independence_rank": self.independence_rank,
            "independence_expected": self.independence_expected,
            "independence_ok": self.independence_ok,
            "corollary1_verdicts": [
                {"length": v.length, "holds": v.holds} for v in self.prefix_column_verdicts
            ],
            "corollary1_counterexamples": sum(1 for v in self.prefix_column_verdicts if not v.holds),
            "bound_verdict": self.bound.to_json(),
            "notes": list(self.notes),
        }


def _distinctive_columns(n: int, q: int) -> tuple[int, ...]:
    """Columns eligible for distinctive cells: all but q and one spare column.

    The spare column is the last one, or column 0 when q itself is last, so
    the universe always holds n-2 columns and n(n-2) cells.
    """
    spare = n - 1 if q != n - 1 else 0
    return tuple(c for c in range(n) if c != q and c != spare)


def check_prefix_column(dfa: Dfa, word: Sequence[int], q: int | None = None) -> tuple[PrefixColumnVerdict, ...]:
    """For each nonempty prefix, whether its matrix keeps column q nonzero.

    The empty prefix is excluded by convention.  Verdicts are reported, not
    asserted; a False entry is a counterexample to the prefix-column claim.
    """
    w = check_word(dfa, word)
    sink = _resolve_sink(dfa, w, q)
    out = []
    for i, m in enumerate(_prefix_matrices(dfa, w), start=1):
        out.append(PrefixColumnVerdict(length=i, holds=sink in nonzero_columns(m)))
    return tuple(out)


def bound_check(dfa: Dfa, limit: int = EXACT_SEARCH_LIMIT) -> BoundVerdict:
    """Compare the exact shortest reset length against (n-1)^2.

    exceeds-bound would contradict the conjectured bound and is the one
    finding callers must never swallow.
    """
    length = shortest_reset_length(dfa, limit)
    bound = cerny_bound(dfa.n)
    if length is None:
        status = "not-synchronizing"
    elif length <= bound:
        status = "within-bound"
    else:
        status = "exceeds-bound"
    return BoundVerdict(n=dfa.n, bound=bound, length=length, status=status)


def allocation_probe(dfa: Dfa, word: Sequence[int], q: int | None = None) -> ProbeReport:
    """Run the full allocation procedure for one synchronizing word.

    Steps: collect the prefixes whose matrix rank exceeds one (at most
    n(n-2) of them), build the prefix/cell compatibility relation (a prefix
    may own cell (r, c) when row r is free in its sink equation and c is a
    distinctive column), compute an exact maximum matching, and on full
    success construct one solution per prefix carrying its distinctive cell.
    Solutions are re-verified by multiplication and the final family,
    together with the sink matrix, gets an exact rank measurement.

    Prefixes with larger image sets are offered to the matching first; that
    ordering is a tie-break between maximum matchings, not a correctness
    requirement.  A matching shortfall is recorded as a finding, never an
    error.  q defaults to the state the word actually synchronizes to.
    """
    w = check_word(dfa, word)
    sink = _resolve_sink(dfa, w, q)
    n = dfa.n
    notes: list[str] = ["empty prefix excluded by convention"]

    matrices = _prefix_matrices(dfa, w)
    basis = RationalBasis(n * n)
    records = []
    images = []
    for i, m in enumerate(matrices, start=1):
        basis.insert(flatten(m))
        cols = nonzero_columns(m)
        images.append(cols)
        records.append(PrefixRecord(length=i, word=w[:i], r_size=len(cols),
                                    dimension=basis.dimension))
    trace = PrefixTrace(records=tuple(records))

    cell_columns = _distinctive_columns(n, sink) if n >= 2 else ()
    cell_limit = max(0, n * (n - 2))
    collected = [i for i, m in enumerate(matrices) if records[i].r_size > 1]
    if len(collected) > cell_limit:
        notes.append(f"{len(collected)} prefixes with rank above one, keeping the first {cell_limit}")
        collected = collected[:cell_limit]

    cells = [(r, c) for c in cell_columns for r in range(n)]
    cell_index = {cell: pos for pos, cell in enumerate(cells)}

    order = sorted(range(len(collected)), key=lambda j: (-records[collected[j]].r_size, j))
    adjacency = []
    for j in order:
        image = images[collected[j]]
        adjacency.append([cell_index[(r, c)] for (r, c) in cells if r not in image])
    match_left = maximum_matching(adjacency, len(cells))

    assigned: dict[int, tuple[int, int]] = {}
    for pos, j in enumerate(order):
        v = match_left[pos]
        if v is not None:
            assigned[collected[j]] = cells[v]
    assignments = tuple(
        (records[i].length, assigned[i][0], assigned[i][1]) if i in assigned else None
        for i in collected
    )
    unmatched = tuple(records[i].length for i in collected if i not in assigned)
    success = not unmatched
    matching = MatchingReport(success=success,
                              prefix_count=len(collected),
                              cell_count=len(cells),
                              cell_columns=cell_columns,
                              assignments=assignments,
                              unmatched_prefix_lengths=unmatched)
    if not success:
        notes.append(f"matching shortfall: {len(unmatched)} prefixes without a distinctive cell")

    solutions: tuple[RowMonomialMatrix, ...] = ()
    solutions_ok: bool | None = None
    independence_rank: int | None = None
    independence_expected: int | None = None
    independence_ok: bool | None = None
    if success:
        built = []
        all_solve = True
        for i in collected:
            row, col = assigned[i]
            targets = [sink] * n
            targets[row] = col
            candidate = RowMonomialMatrix(n=n, targets=tuple(targets))
            if not is_solution(matrices[i], candidate, sink):
                all_solve = False
                notes.append(f"constructed matrix for prefix length {records[i].length} fails its equation")
            built.append(candidate)
        solutions = tuple(built)
        solutions_ok = all_solve
        family = RationalBasis(n * n)
        for s in solutions:
            family.insert(flatten(s))
        family.insert(flatten(sink_matrix(n, sink)))
        independence_rank = family.dimension
        independence_expected = len(solutions) + 1
        independence_ok = independence_rank == independence_expected
        if not independence_ok:
            notes.append("constructed family is linearly dependent")

    verdicts = check_prefix_column(dfa, w, sink)
    try:
        bound = bound_check(dfa)
    except CapacityError:
        bound = BoundVerdict(n=n, bound=cerny_bound(n), length=None, status="skipped-capacity")
        notes.append("exact bound check skipped: state count above the exact-search limit")

    return ProbeReport(dfa=dfa, reset_word=w, q=sink, trace=trace, matching=matching,
                       solutions=solutions, solutions_ok=solutions_ok,
                       independence_rank=independence_rank,
                       independence_expected=independence_expected,
                       independence_ok=independence_ok,
                       prefix_column_verdicts=verdicts, bound=bound, notes=tuple(notes))

"""Complete deterministic finite automata and reset-word search.

States are 0..n-1, letters are 0..k-1, and a word is any sequence of letter
indices; the empty word acts as the identity.  The exact shortest-word
search runs breadth-first over bitset-encoded state subsets, the
polynomial synchronization test and the greedy heuristic work on the pair
automaton instead, so they stay usable where the exact search does not.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, DomainError, InvalidWordError, ParseError

Word = tuple[int, ...]
StateSet = frozenset[int]

EXACT_SEARCH_LIMIT = 24
DEFAULT_ENUM_BUDGET = 1_000_000

_ALPHA = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True, slots=True)
class Dfa:
    """Complete DFA: ``delta[a][q]`` is the successor of state q under letter a."""

    n: int
    k: int
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"state count must be positive, got {self.n}")
        if self.k < 1:
            raise DomainError(f"alphabet size must be positive, got {self.k}")
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        if len(self.delta) != self.k:
            raise DomainError(f"delta needs one row per letter: expected {self.k}, got {len(self.delta)}")
        for a, row in enumerate(self.delta):
            if len(row) != self.n:
                raise DomainError(f"delta row {a} needs {self.n} entries, got {len(row)}")
            for q, t in enumerate(row):
                if not isinstance(t, int) or not 0 <= t < self.n:
                    raise DomainError(f"delta[{a}][{q}] = {t!r} outside [0, {self.n})")

    def step(self, state: int, letter: int) -> int:
        return self.delta[letter][state]

    @property
    def states(self) -> range:
        return range(self.n)

    def full_set(self) -> StateSet:
        return frozenset(range(self.n))


def check_word(dfa: Dfa, word: Sequence[int]) -> Word:
    """Validate letter indices against the alphabet and return a tuple."""
    w = tuple(word)
    for a in w:
        if not isinstance(a, int) or not 0 <= a < dfa.k:
            raise InvalidWordError(f"letter {a!r} outside alphabet of size {dfa.k}")
    return w


def format_word(word: Sequence[int], k: int) -> str:
    """Render a word: 'a'..'z' when the alphabet fits, else comma-separated indices."""
    if k <= len(_ALPHA):
        return "".join(_ALPHA[a] for a in word)
    return ",".join(str(a) for a in word)


def parse_word(text: str, k: int) -> Word:
    """Inverse of format_word.  Accepts both renderings."""
    text = text.strip()
    if not text:
        return ()
    if any(ch.isdigit() for ch in text):
        parts = text.replace(",", " ").split()
        try:
            letters = tuple(int(p) for p in parts)
        except ValueError:
            raise InvalidWordError(f"cannot parse word {text!r} as letter indices") from None
    else:
        letters = ()
        for ch in text:
            pos = _ALPHA.find(ch.lower())
            if pos < 0:
                raise InvalidWordError(f"cannot parse letter {ch!r} in word {text!r}")
            letters += (pos,)
    for a in letters:
        if not 0 <= a < k:
            raise InvalidWordError(f"letter {format_word((a,), k) if a < 26 else a!r} outside alphabet of size {k}")
    return letters


def apply_word(dfa: Dfa, states: Iterable[int], word: Sequence[int]) -> StateSet:
    """Image of a state set under a word.  The empty word is the identity."""
    w = check_word(dfa, word)
    current = frozenset(states)
    for q in current:
        if not 0 <= q < dfa.n:
            raise DomainError(f"state {q} outside [0, {dfa.n})")
    for a in w:
        row = dfa.delta[a]
        current = frozenset(row[q] for q in current)
    return current


def _check_exact_limit(n: int, limit: int):
    if n > limit:
        raise CapacityError(
            f"exact subset search handles n <= {limit} (got n = {n}); "
            "raise the limit or fall back to greedy_reset_word"
        )


def _subset_image_tables(dfa: Dfa) -> list[list[int]]:
    """Per-letter image of every subset bitmask, built by lowest-bit DP."""
    size = 1 << dfa.n
    tables = []
    for row in dfa.delta:
        bits = [1 << t for t in row]
        img = [0] * size
        for mask in range(1, size):
            low = mask & (mask - 1)
            img[mask] = img[low] | bits[(mask & -mask).bit_length() - 1]
        tables.append(img)
    return tables


def shortest_reset_word(dfa: Dfa, limit: int = EXACT_SEARCH_LIMIT) -> Word | None:
    """Exact shortest reset word, or None if the automaton is not synchronizing.

    Breadth-first search over subsets reachable from the full state set.
    Letters are tried in increasing index order, so within each length level
    subsets are discovered in lexicographic order of their least word; the
    first singleton found therefore closes the lexicographically least among
    all shortest reset words.
    """
    _check_exact_limit(dfa.n, limit)
    n, k = dfa.n, dfa.k
    if n == 1:
        return ()
    full = (1 << n) - 1
    use_tables = n <= 12
    if use_tables:
        tables = _subset_image_tables(dfa)
    else:
        bit_images = [[1 << row[q] for q in range(n)] for row in dfa.delta]
    parent: dict[int, tuple[int, int]] = {full: (-1, -1)}
    queue = deque([full])
    while queue:
        cur = queue.popleft()
        for a in range(k):
            if use_tables:
                nxt = tables[a][cur]
            else:
                nxt = 0
                m = cur
                bits = bit_images[a]
                while m:
                    low = m & -m
                    nxt |= bits[low.bit_length() - 1]
                    m ^= low
            if nxt in parent:
                continue
            parent[nxt] = (cur, a)
            if nxt & (nxt - 1) == 0:
                letters = [a]
                node = cur
                while node != full:
                    prev, letter = parent[node]
                    letters.append(letter)
                    node = prev
                letters.reverse()
                return tuple(letters)
            queue.append(nxt)
    return None


def shortest_reset_length(dfa: Dfa, limit: int = EXACT_SEARCH_LIMIT) -> int | None:
    """Length of the shortest reset word, without reconstructing the word.

    Cheaper than shortest_reset_word on bulk runs; same search, no parents.
    """
    _check_exact_limit(dfa.n, limit)
    n, k = dfa.n, dfa.k
    if n == 1:
        return 0
    full = (1 << n) - 1
    use_tables = n <= 12
    if use_tables:
        tables = _subset_image_tables(dfa)
    else:
        bit_images = [[1 << row[q] for q in range(n)] for row in dfa.delta]
    dist = {full: 0}
    queue = deque([full])
    while queue:
        cur = queue.popleft()
        d = dist[cur] + 1
        for a in range(k):
            if use_tables:
                nxt = tables[a][cur]
            else:
                nxt = 0
                m = cur
                bits = bit_images[a]
                while m:
                    low = m & -m
                    nxt |= bits[low.bit_length() - 1]
                    m ^= low
            if nxt in dist:
                continue
            if nxt & (nxt - 1) == 0:
                return d
            dist[nxt] = d
            queue.append(nxt)
    return None


def _pair_merge_table(dfa: Dfa) -> tuple[dict[tuple[int, int], int], dict[tuple[int, int], int]]:
    """Shortest-merge data for every unordered state pair.

    Returns (dist, letter) keyed by (p, q) with p < q: dist is the length of
    a shortest word sending both states to one state, letter a first letter
    of such a word.  Pairs that cannot merge are absent from both maps.
    """
    n, k = dfa.n, dfa.k
    dist: dict[tuple[int, int], int] = {}
    letter: dict[tuple[int, int], int] = {}
    rev: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {}
    queue: deque[tuple[int, int]] = deque()
    for p in range(n):
        for q in range(p + 1, n):
            pair = (p, q)
            for a in range(k):
                pa, qa = dfa.delta[a][p], dfa.delta[a][q]
                if pa == qa:
                    if pair not in dist:
                        dist[pair] = 1
                        letter[pair] = a
                        queue.append(pair)
                else:
                    tgt = (pa, qa) if pa < qa else (qa, pa)
                    if tgt != pair:
                        rev.setdefault(tgt, []).append((pair, a))
    while queue:
        cur = queue.popleft()
        d = dist[cur] + 1
        for src, a in rev.get(cur, ()):
            if src not in dist:
                dist[src] = d
                letter[src] = a
                queue.append(src)
    return dist, letter


def is_synchronizing(dfa: Dfa) -> bool:
    """Polynomial test: the automaton synchronizes iff every state pair merges."""
    if dfa.n == 1:
        return True
    dist, _ = _pair_merge_table(dfa)
    return len(dist) == dfa.n * (dfa.n - 1) // 2


def greedy_reset_word(dfa: Dfa) -> Word | None:
    """Pair-merging heuristic reset word, or None if not synchronizing.

    Repeatedly drives a cheapest-to-merge pair of current states to a
    collision.  Deterministic and polynomial, but in general longer than
    the word shortest_reset_word returns.
    """
    n = dfa.n
    if n == 1:
        return ()
    dist, letter = _pair_merge_table(dfa)
    if len(dist) < n * (n - 1) // 2:
        return None
    current = frozenset(range(n))
    out: list[int] = []
    while len(current) > 1:
        p, q = min(combinations(sorted(current), 2), key=lambda pr: (dist[pr], pr))
        while p != q:
            a = letter[(p, q) if p < q else (q, p)]
            out.append(a)
            row = dfa.delta[a]
            current = frozenset(row[s] for s in current)
            p, q = row[p], row[q]
    return tuple(out)


def is_strongly_connected(dfa: Dfa) -> bool:
    """True iff the union digraph of all letters is strongly connected."""
    n = dfa.n
    if n == 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        q = stack.pop()
        for row in dfa.delta:
            t = row[q]
            if t not in seen:
                seen.add(t)
                stack.append(t)
    if len(seen) < n:
        return False
    rev: list[list[int]] = [[] for _ in range(n)]
    for row in dfa.delta:
        for q, t in enumerate(row):
            rev[t].append(q)
    seen = {0}
    stack = [0]
    while stack:
        q = stack.pop()
        for s in rev[q]:
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return len(seen) == n


def cerny_bound(n: int) -> int:
    """(n-1)^2, the conjectured tight bound on shortest reset words."""
    return (n - 1) * (n - 1)


def cubic_bound(n: int) -> int:
    """(n^3 - n)/6, a classical upper bound used here only for comparison."""
    return (n * n * n - n) // 6


def cerny_automaton(n: int) -> Dfa:
    """The n-state two-letter automaton whose shortest reset word has length (n-1)^2.

    Letter a cycles every state forward by one; letter b moves state 0 to 1
    and fixes everything else.
    """
    if n < 2:
        raise DomainError(f"construction needs n >= 2, got {n}")
    a = tuple((i + 1) % n for i in range(n))
    b = tuple(1 if i == 0 else i for i in range(n))
    return Dfa(n=n, k=2, delta=(a, b))


def count_dfas(n: int, k: int) -> int:
    return n ** (n * k)


def enumerate_dfas(n: int, k: int, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[Dfa]:
    """All complete transition tables in lexicographic order, letter-major.

    No identification up to isomorphism: n^(n*k) automata are yielded.
    """
    if n < 1 or k < 1:
        raise DomainError(f"need n >= 1 and k >= 1, got n = {n}, k = {k}")
    total = count_dfas(n, k)
    if total > budget:
        raise CapacityError(
            f"enumerating {total} tables exceeds the budget of {budget}; raise budget to proceed"
        )
    for flat in product(range(n), repeat=n * k):
        yield Dfa(n=n, k=k, delta=tuple(flat[i * n:(i + 1) * n] for i in range(k)))


def dfa_from_table_index(n: int, k: int, index: int) -> Dfa:
    """Decode a lexicographic table index into the corresponding automaton.

    Index 0 is the all-zero table; index n^(n*k) - 1 sends everything to n-1.
    Useful for sharding an enumeration without materializing it.
    """
    total = count_dfas(n, k)
    if not 0 <= index < total:
        raise DomainError(f"table index {index} outside [0, {total})")
    digits = [0] * (n * k)
    rem = index
    for pos in range(n * k - 1, -1, -1):
        digits[pos] = rem % n
        rem //= n
    return Dfa(n=n, k=k, delta=tuple(tuple(digits[i * n:(i + 1) * n]) for i in range(k)))


def random_dfa(n: int, k: int, seed: int) -> Dfa:
    """Uniform independent transitions; a fixed seed fixes the table."""
    rng = random.Random(seed)
    delta = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(k))
    return Dfa(n=n, k=k, delta=delta)


def write_dfa_text(dfa: Dfa) -> str:
    """Serialize: header line "n k", then one line of targets per letter."""
    lines = [f"{dfa.n} {dfa.k}"]
    for row in dfa.delta:
        lines.append(" ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def _tokens_with_columns(line: str) -> list[tuple[str, int]]:
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def read_dfa_text(text: str) -> Dfa:
    """Parse the serialized form.  Blank lines and '#' comments are skipped."""
    significant: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        significant.append((lineno, raw))
    if not significant:
        raise ParseError("empty input, expected a header line 'n k'")
    head_no, head = significant[0]
    head_tokens = _tokens_with_columns(head)
    if len(head_tokens) != 2:
        raise ParseError(f"header must be 'n k', got {len(head_tokens)} tokens", line=head_no)
    parsed = []
    for tok, col in head_tokens:
        try:
            val = int(tok)
        except ValueError:
            raise ParseError(f"header token {tok!r} is not an integer", line=head_no, column=col) from None
        if val < 1:
            raise ParseError(f"header value {val} must be positive", line=head_no, column=col)
        parsed.append(val)
    n, k = parsed
    body = significant[1:]
    if len(body) != k:
        raise ParseError(f"expected {k} transition rows, found {len(body)}",
                         line=body[-1][0] if body else head_no)
    delta = []
    for a, (lineno, raw) in enumerate(body):
        tokens = _tokens_with_columns(raw)
        if len(tokens) != n:
            raise ParseError(f"row for letter {a} must hold {n} targets, got {len(tokens)}", line=lineno)
        row = []
        for tok, col in tokens:
            try:
                t = int(tok)
            except ValueError:
                raise ParseError(f"target {tok!r} is not an integer", line=lineno, column=col) from None
            if not 0 <= t < n:
                raise ParseError(f"target {t} outside [0, {n})", line=lineno, column=col)
            row.append(t)
        delta.append(tuple(row))
    return Dfa(n=n, k=k, delta=tuple(delta))


def read_dfa(path) -> Dfa:
    with open(path, "r", encoding="utf-8") as fh:
        return read_dfa_text(fh.read())


def write_dfa(dfa: Dfa, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_dfa_text(dfa))


def _letter_name(a: int, k: int) -> str:
    return _ALPHA[a] if k <= len(_ALPHA) else str(a)


def to_dot(dfa: Dfa, name: str = "automaton") -> str:
    """GraphViz rendering; parallel edges are folded into one labeled edge."""
    lines = [f'digraph "{name}" {{', "  rankdir=LR;", "  node [shape=circle];"]
    for q in range(dfa.n):
        lines.append(f'  q{q} [label="{q}"];')
    for q in range(dfa.n):
        grouped: dict[int, list[int]] = {}
        for a in range(dfa.k):
            grouped.setdefault(dfa.delta[a][q], []).append(a)
        for t in sorted(grouped):
            label = ",".join(_letter_name(a, dfa.k) for a in grouped[t])
            lines.append(f'  q{q} -> q{t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

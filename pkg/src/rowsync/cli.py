"""Command-line front end.

One run produces one report.  Exit status 0 means the run completed, 1 a
usage or input error, 2 a flagged finding (a shortest reset word beyond the
(n-1)^2 bound, or a failed invariant suite).  With --json the report is a
single self-describing document and is byte-identical across runs with the
same configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from multiprocessing import Pool

from .automaton import (DEFAULT_ENUM_BUDGET, EXACT_SEARCH_LIMIT, Dfa, cerny_automaton,
                        cerny_bound, count_dfas, cubic_bound, format_word, greedy_reset_word,
                        is_strongly_connected, is_synchronizing, parse_word, random_dfa,
                        read_dfa, shortest_reset_length, shortest_reset_word, to_dot,
                        write_dfa_text)
from .errors import CapacityError, RowsyncError
from .probe import allocation_probe, prefix_trace
from .rowmon import is_permutation, matrix_of_word, nonzero_columns, rank
from .suites import run_all

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on.  Identical configs give identical reports."""

    command: str
    path: str | None = None
    kind: str | None = None
    word: str | None = None
    q: int | None = None
    n: int | None = None
    k: int | None = None
    limit: int = EXACT_SEARCH_LIMIT
    budget: int = DEFAULT_ENUM_BUDGET
    jobs: int = 1
    seed: int = 0
    filter: str | None = None
    dot: bool = False
    json_output: bool = False
    output: str | None = None

    def public_fields(self) -> dict:
        fields = asdict(self)
        fields.pop("output")
        fields.pop("json_output")
        return fields


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    document: dict
    human: str


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this maps them to exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rowsync", description="synchronizing automata through row monomial matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_word=False, with_q=False, with_limit=False):
        if with_word:
            p.add_argument("--word", help="word as letters ('abab') or comma-separated indices")
        if with_q:
            p.add_argument("--q", type=int, default=None, help="sink column (default: where the word lands)")
        if with_limit:
            p.add_argument("--limit", type=int, default=EXACT_SEARCH_LIMIT,
                           help="state-count cap for the exact subset search")
        p.add_argument("--json", action="store_true", dest="json_output", help="emit one JSON document")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")

    p = sub.add_parser("check", help="synchronization test and shortest reset word")
    p.add_argument("path")
    add_common(p, with_limit=True)

    p = sub.add_parser("matrix", help="matrix of a word over an automaton")
    p.add_argument("path")
    p.add_argument("--dot", action="store_true", help="emit the automaton as GraphViz instead")
    add_common(p, with_word=True)

    p = sub.add_parser("trace", help="rank and span dimension along prefixes of a reset word")
    p.add_argument("path")
    add_common(p, with_word=True, with_limit=True)

    p = sub.add_parser("probe", help="allocation procedure probe for one reset word")
    p.add_argument("path")
    add_common(p, with_word=True, with_q=True, with_limit=True)

    p = sub.add_parser("lemmas", help="run the shipped invariant suites")
    p.add_argument("--seed", type=int, default=0)
    add_common(p)

    p = sub.add_parser("gen", help="generate an automaton")
    p.add_argument("kind", choices=("cerny", "random"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dot", action="store_true", help="emit GraphViz instead of the table format")
    add_common(p)

    p = sub.add_parser("enum", help="enumerate all tables and aggregate bound checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--filter", choices=("sync",), default=None,
                   help="aggregate synchronizing automata only")
    p.add_argument("--budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    add_common(p, with_limit=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = vars(args)
    fields = {f: values[f] for f in RunConfig.__dataclass_fields__ if f in values}
    return RunConfig(**fields)


def _document(config: RunConfig, report: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": config.command,
            "config": config.public_fields(), "report": report}


def _load(config: RunConfig) -> Dfa:
    return read_dfa(config.path)


def _word_or_shortest(config: RunConfig, dfa: Dfa):
    if config.word is not None:
        return parse_word(config.word, dfa.k)
    word = shortest_reset_word(dfa, config.limit)
    if word is None:
        raise RowsyncError("automaton is not synchronizing; no reset word exists")
    return word


def _run_check(config: RunConfig) -> RunResult:
    dfa = _load(config)
    sync = is_synchronizing(dfa)
    strong = is_strongly_connected(dfa)
    bound = cerny_bound(dfa.n)
    shortest = None
    note = None
    if sync:
        try:
            shortest = shortest_reset_word(dfa, config.limit)
        except CapacityError as exc:
            note = str(exc)
    greedy = greedy_reset_word(dfa)
    report = {
        "n": dfa.n, "k": dfa.k,
        "strongly_connected": strong,
        "synchronizing": sync,
        "shortest_length": len(shortest) if shortest is not None else None,
        "shortest_word": format_word(shortest, dfa.k) if shortest is not None else None,
        "bound": bound,
        "within_bound": (len(shortest) <= bound) if shortest is not None else None,
        "greedy_length": len(greedy) if greedy is not None else None,
        "greedy_word": format_word(greedy, dfa.k) if greedy is not None else None,
        "cubic_reference": cubic_bound(dfa.n),
        "note": note,
    }
    lines = [f"states {dfa.n}, letters {dfa.k}",
             f"strongly connected: {'yes' if strong else 'no'}",
             f"synchronizing: {'yes' if sync else 'no'}"]
    if shortest is not None:
        lines.append(f"shortest reset word: {format_word(shortest, dfa.k) or '(empty)'} (length {len(shortest)})")
        lines.append(f"bound (n-1)^2 = {bound}: {'within bound' if len(shortest) <= bound else 'EXCEEDS BOUND'}")
    elif note:
        lines.append(f"exact search skipped: {note}")
    if greedy is not None:
        lines.append(f"greedy reset word length: {len(greedy)} (reference (n^3-n)/6 = {cubic_bound(dfa.n)})")
    code = 2 if (shortest is not None and len(shortest) > bound) else 0
    return RunResult(code, _document(config, report), "\n".join(lines) + "\n")


def _run_matrix(config: RunConfig) -> RunResult:
    dfa = _load(config)
    if config.dot:
        text = to_dot(dfa)
        return RunResult(0, _document(config, {"dot": text}), text)
    word = parse_word(config.word, dfa.k) if config.word is not None else ()
    m = matrix_of_word(dfa, word)
    cols = sorted(nonzero_columns(m))
    report = {
        "word": format_word(word, dfa.k),
        "targets": list(m.targets),
        "grid": m.render_grid().splitlines(),
        "nonzero_columns": cols,
        "rank": rank(m),
        "is_permutation": is_permutation(m),
    }
    human = (m.render_grid() + "\n"
             + f"targets {m.compact()}\n"
             + f"nonzero columns {{{', '.join(str(c) for c in cols)}}}, rank {rank(m)}"
             + (", permutation" if is_permutation(m) else "") + "\n")
    return RunResult(0, _document(config, report), human)


def _run_trace(config: RunConfig) -> RunResult:
    dfa = _load(config)
    word = _word_or_shortest(config, dfa)
    trace = prefix_trace(dfa, word)
    report = {"word": format_word(word, dfa.k), "records": trace.to_json(dfa.k)}
    lines = [f"{'len':>4}  {'word':<{max(4, len(word))}}  |R|  dim"]
    for r in trace.records:
        lines.append(f"{r.length:>4}  {format_word(r.word, dfa.k):<{max(4, len(word))}}  {r.r_size:>3}  {r.dimension:>3}")
    return RunResult(0, _document(config, report), "\n".join(lines) + "\n")


def _run_probe(config: RunConfig) -> RunResult:
    dfa = _load(config)
    word = _word_or_shortest(config, dfa)
    rep = allocation_probe(dfa, word, config.q)
    report = rep.to_json_dict()
    m = rep.matching
    lines = [
        f"reset word: {format_word(word, dfa.k)} (length {len(word)}), sink {rep.q}",
        f"prefixes offered: {m.prefix_count}, cells: {m.cell_count}, "
        f"matching: {'full' if m.success else f'short by {len(m.unmatched_prefix_lengths)}'}",
    ]
    if rep.independence_rank is not None:
        lines.append(f"solutions verified: {'yes' if rep.solutions_ok else 'NO'}; "
                     f"family rank {rep.independence_rank} of {rep.independence_expected} "
                     f"({'independent' if rep.independence_ok else 'DEPENDENT'})")
    bad = sum(1 for v in rep.prefix_column_verdicts if not v.holds)
    lines.append(f"prefix-column claim: {len(rep.prefix_column_verdicts) - bad} of "
                 f"{len(rep.prefix_column_verdicts)} prefixes keep column {rep.q} nonzero"
                 + (f" ({bad} counterexamples)" if bad else ""))
    lines.append(f"bound: length {rep.bound.length} vs (n-1)^2 = {rep.bound.bound}: {rep.bound.status}")
    code = 2 if rep.bound.status == "exceeds-bound" else 0
    return RunResult(code, _document(config, report), "\n".join(lines) + "\n")


def _run_lemmas(config: RunConfig) -> RunResult:
    results = run_all(seed=config.seed)
    report = {"suites": [r.to_json() for r in results]}
    lines = []
    all_ok = True
    for r in results:
        status = "ok" if r.ok else f"{len(r.violations)} violations"
        lines.append(f"{r.name}: {r.checks} checks, {status}")
        for v in r.violations[:5]:
            lines.append(f"  {v}")
        all_ok = all_ok and r.ok
    return RunResult(0 if all_ok else 2, _document(config, report), "\n".join(lines) + "\n")


def _run_gen(config: RunConfig) -> RunResult:
    if config.kind == "cerny":
        dfa = cerny_automaton(config.n)
    else:
        dfa = random_dfa(config.n, config.k, config.seed)
    text = to_dot(dfa) if config.dot else write_dfa_text(dfa)
    report = {"kind": config.kind, "n": dfa.n, "k": dfa.k,
              "delta": [list(row) for row in dfa.delta], "text": text}
    return RunResult(0, _document(config, report), text)


def _enum_shard_stats(params: tuple[int, int, int, int, int]) -> dict:
    """Aggregate one contiguous index range of the table enumeration."""
    n, k, start, stop, limit = params
    width = n * k
    digits = [0] * width
    rem = start
    for pos in range(width - 1, -1, -1):
        digits[pos] = rem % n
        rem //= n
    hist: dict[int, int] = {}
    sync = 0
    for _ in range(start, stop):
        delta = tuple(tuple(digits[i * n:(i + 1) * n]) for i in range(k))
        length = shortest_reset_length(Dfa(n=n, k=k, delta=delta), limit)
        if length is not None:
            sync += 1
            hist[length] = hist.get(length, 0) + 1
        pos = width - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < n:
                break
            digits[pos] = 0
            pos -= 1
    return {"count": stop - start, "sync": sync, "hist": hist}


def _run_enum(config: RunConfig) -> RunResult:
    n, k = config.n, config.k
    total = count_dfas(n, k)
    if total > config.budget:
        raise CapacityError(f"enumerating {total} tables exceeds the budget of {config.budget}; "
                            "raise --budget to proceed")
    jobs = max(1, config.jobs)
    if jobs == 1:
        parts = [_enum_shard_stats((n, k, 0, total, config.limit))]
    else:
        chunk = (total + jobs - 1) // jobs
        ranges = [(n, k, lo, min(lo + chunk, total), config.limit)
                  for lo in range(0, total, chunk)]
        with Pool(processes=jobs) as pool:
            parts = pool.map(_enum_shard_stats, ranges)
    sync = sum(p["sync"] for p in parts)
    hist: dict[int, int] = {}
    for p in parts:
        for length, count in p["hist"].items():
            hist[length] = hist.get(length, 0) + count
    bound = cerny_bound(n)
    max_length = max(hist) if hist else None
    exceeds = sum(c for length, c in hist.items() if length > bound)
    report = {
        "n": n, "k": k,
        "total_tables": total,
        "synchronizing": sync,
        "examined": sync if config.filter == "sync" else total,
        "length_histogram": {str(length): hist[length] for length in sorted(hist)},
        "max_length": max_length,
        "max_length_count": hist.get(max_length, 0) if max_length is not None else 0,
        "bound": bound,
        "exceeds_bound": exceeds,
        "verdict": "exceeds-bound" if exceeds else "within-bound",
    }
    lines = [f"tables: {total} (n={n}, k={k})",
             f"synchronizing: {sync}"]
    if config.filter != "sync":
        lines.append(f"not synchronizing: {total - sync}")
    lines.append("shortest reset length histogram:")
    for length in sorted(hist):
        lines.append(f"  {length}: {hist[length]}")
    if max_length is not None:
        state = "EXCEEDS BOUND" if exceeds else "within bound"
        lines.append(f"max shortest length: {max_length} (bound {bound}): {state}")
    return RunResult(2 if exceeds else 0, _document(config, report), "\n".join(lines) + "\n")


_RUNNERS = {
    "check": _run_check,
    "matrix": _run_matrix,
    "trace": _run_trace,
    "probe": _run_probe,
    "lemmas": _run_lemmas,
    "gen": _run_gen,
    "enum": _run_enum,
}


def run(config: RunConfig) -> RunResult:
    """Execute one configured run and return its exit code and report."""
    return _RUNNERS[config.command](config)


def render(result: RunResult, config: RunConfig) -> str:
    if config.json_output:
        return json.dumps(result.document, indent=2) + "\n"
    return result.human


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    try:
        result = run(config)
    except (RowsyncError, OSError) as exc:
        print(f"rowsync: error: {exc}", file=sys.stderr)
        return 1
    text = render(result, config)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

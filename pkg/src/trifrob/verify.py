"""
Grid verification of the closed forms against the brute-force oracle.

The oracle side (:mod:`trifrob.repcount` plus :func:`trifrob.genfrob.g_search_many`)
never touches the closed-form code, so a bug on one side cannot hide a
mismatch on the other.  Work is split into independent per-``n`` (or
per-tuple) tasks that may run in a process pool; their cells are merged and
sorted at the end, so reports do not depend on scheduling.
"""

from __future__ import annotations

import enum
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

from .errors import CapExhaustedError, DomainError
from .genfrob import beck_kifer_g, g_search_many, g_two_var, oracle_g
from .repcount import IntTuple, count_representations
from .tables import TABLE_NAMES, build_table, golden_csv
from .triangular import (
    Parity,
    check_bound,
    g_difference_closed,
    g_general_triple,
    g_reduced_closed,
    g_triangular_closed,
    general_triple_branch,
    main_formula_numerator,
    relaxed_allowed,
    reduced_triple,
    triangular_triple,
)
from .triangular import _main_formula


class Suite(str, enum.Enum):
    MAIN = "main_formula"
    REDUCED = "reduced_formula"
    EXACT_COUNT = "exact_count"
    DIFFERENCES = "differences"
    TWO_VAR = "two_var"
    BECK_KIFER = "beck_kifer"
    REMARK = "remark"
    TABLES = "tables"
    COROLLARY = "corollary"
    PROBE = "probe"


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    CAP_EXHAUSTED = "cap_exhausted"
    PROBE = "probe"


Value = Union[int, str, None]


@dataclass(frozen=True)
class Cell:
    suite: Suite
    n: Optional[int]
    s: Optional[int]
    expected: Value
    observed: Value
    status: Status
    subject: str = ""
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        d = asdict(self)
        d["suite"] = self.suite.value
        d["status"] = self.status.value
        d["pass"] = self.passed
        return d


def compare(suite, n, s, expected, observed, subject="") -> Cell:
    status = Status.PASS if expected == observed else Status.FAIL
    return Cell(suite, n, s, expected, observed, status, subject)


def skipped(suite, n, s, reason, subject="") -> Cell:
    return Cell(suite, n, s, None, None, Status.SKIPPED, subject, reason)


_BAD = (Status.FAIL, Status.CAP_EXHAUSTED)


def _sort_key(cell: Cell):
    return (
        cell.status not in _BAD,
        cell.suite.value,
        -1 if cell.s is None else cell.s,
        -1 if cell.n is None else cell.n,
        cell.subject,
    )


@dataclass
class VerificationReport:
    cells: list[Cell] = field(default_factory=list)

    def __post_init__(self):
        self.cells = sorted(self.cells, key=_sort_key)

    @classmethod
    def merge(cls, reports: Iterable["VerificationReport"]) -> "VerificationReport":
        return cls([c for r in reports for c in r.cells])

    @property
    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for cell in self.cells:
            bucket = out.setdefault(cell.suite.value, {st.value: 0 for st in Status})
            bucket[cell.status.value] += 1
        return {k: out[k] for k in sorted(out)}

    @property
    def failures(self) -> list[Cell]:
        return [c for c in self.cells if c.status in _BAD]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "summary": self.summary,
            "cells": [c.to_dict() for c in self.cells],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self, show: str = "failures") -> str:
        """Aligned summary; ``show`` is 'failures', 'all' or 'none' for the cell list."""
        lines = []
        for suite, counts in self.summary.items():
            parts = ", ".join(f"{k}={v}" for k, v in counts.items() if v)
            lines.append(f"{suite:<16} {parts}")
        picked = {"all": self.cells, "failures": self.failures, "none": []}[show]
        if picked:
            lines.append("")
            header = ("suite", "subject", "n", "s", "expected", "observed", "status")
            rows = [header] + [
                (
                    c.suite.value,
                    c.subject,
                    "" if c.n is None else str(c.n),
                    "" if c.s is None else str(c.s),
                    "" if c.expected is None else str(c.expected),
                    "" if c.observed is None else str(c.observed),
                    c.status.value + (f" ({c.reason})" if c.reason else ""),
                )
                for c in picked
            ]
            widths = [max(len(r[j]) for r in rows) for j in range(len(header))]
            lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
        lines.append("")
        lines.append("ALL PASS" if self.ok else f"{len(self.failures)} FAILURE(S)")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GridSpec:
    s_min: int = 0
    s_max: int = 5
    n_min: int = 2
    n_max: int = 15
    bound_mode: str = "strict"
    suites: frozenset = frozenset({Suite.MAIN})
    probe: bool = False

    def __post_init__(self):
        if not 0 <= self.s_min <= self.s_max:
            raise ValueError("need 0 <= s_min <= s_max")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.bound_mode not in ("strict", "relaxed"):
            raise ValueError("bound_mode must be 'strict' or 'relaxed'")
        object.__setattr__(self, "suites", frozenset(Suite(x) for x in self.suites))


def admissible(n: int, s: int, bound_mode: str = "strict") -> tuple[bool, str]:
    """Whether the closed forms are claimed at (n, s); relaxed falls back to strict where unproven."""
    strict = bound_mode == "strict" or not relaxed_allowed(s)
    try:
        check_bound(n, s, strict=strict)
    except DomainError as exc:
        return False, str(exc)
    return True, ""


def _run(fn: Callable, args: Sequence[tuple], jobs: int) -> list:
    if jobs <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*args)))


def _cap_cells(suite, n, s_list, exc, subject="") -> list[Cell]:
    return [Cell(suite, n, s, None, None, Status.CAP_EXHAUSTED, subject, str(exc)) for s in s_list]


# ----- triangular grids ---------------------------------------------------------------


def _main_task(n, s_min, s_max, bound_mode, probe, cap) -> list[Cell]:
    cells, wanted, below = [], [], []
    for s in range(s_min, s_max + 1):
        ok, why = admissible(n, s, bound_mode)
        if ok:
            wanted.append(s)
        else:
            cells.append(skipped(Suite.MAIN, n, s, why))
            below.append(s)
    oracle_s = wanted + (below if probe else [])
    try:
        res = g_search_many(triangular_triple(n), oracle_s, cap)
    except CapExhaustedError as exc:
        return cells + _cap_cells(Suite.MAIN, n, wanted, exc)
    for s in wanted:
        strict = bound_mode == "strict" or not relaxed_allowed(s)
        cells.append(compare(Suite.MAIN, n, s, g_triangular_closed(n, s, strict), res[s].value))
    for s in below if probe else []:
        formula, found = _main_formula(n, s), res[s].value
        cells.append(
            Cell(Suite.PROBE, n, s, formula, found, Status.PROBE,
                 reason="agree" if formula == found else "disagree")
        )
    return cells


def verify_main_formula(spec: GridSpec, jobs: int = 1, cap: int | None = None) -> VerificationReport:
    """Oracle g(t_n, t_{n+1}, t_{n+2}; s) against the closed form on every admissible cell."""
    args = [
        (n, spec.s_min, spec.s_max, spec.bound_mode, spec.probe, cap)
        for n in range(spec.n_min, spec.n_max + 1)
    ]
    return VerificationReport([c for cells in _run(_main_task, args, jobs) for c in cells])


def _reduced_task(n, s_min, s_max, bound_mode, cap) -> list[Cell]:
    cells, wanted = [], []
    for s in range(s_min, s_max + 1):
        ok, why = admissible(n, s, bound_mode)
        if ok:
            wanted.append(s)
        else:
            cells.append(skipped(Suite.REDUCED, n, s, why))
            cells.append(skipped(Suite.EXACT_COUNT, n, s, why))
    triple = IntTuple(reduced_triple(n).elements)
    try:
        res = g_search_many(triple, wanted, cap)
    except CapExhaustedError as exc:
        return cells + _cap_cells(Suite.REDUCED, n, wanted, exc)
    for s in wanted:
        strict = bound_mode == "strict" or not relaxed_allowed(s)
        closed = g_reduced_closed(n, s, strict)
        cells.append(compare(Suite.REDUCED, n, s, closed, res[s].value))
        cells.append(compare(Suite.EXACT_COUNT, n, s, s, count_representations(closed, triple, cap)))
    return cells


def verify_reduced_and_exact_count(
    spec: GridSpec, jobs: int = 1, cap: int | None = None
) -> VerificationReport:
    """Oracle on (t_n, t_{n+1}/d1, t_{n+2}/d1) vs the reduced closed form, plus d = s there."""
    args = [(n, spec.s_min, spec.s_max, spec.bound_mode, cap) for n in range(spec.n_min, spec.n_max + 1)]
    return VerificationReport([c for cells in _run(_reduced_task, args, jobs) for c in cells])


def _difference_task(n, s_min, s_max) -> list[Cell]:
    cells = []
    for s in range(s_min, s_max + 1):
        ok, why = admissible(n, s + 1, "strict")
        if not ok:
            cells.append(skipped(Suite.DIFFERENCES, n, s, why))
            continue
        observed = g_triangular_closed(n, s + 1) - g_triangular_closed(n, s)
        cells.append(compare(Suite.DIFFERENCES, n, s, g_difference_closed(n, s), observed))
    return cells


def verify_differences(
    s_max: int, n_max: int, n_min: int = 2, s_min: int = 0, jobs: int = 1
) -> VerificationReport:
    """Difference formula vs subtracting two main-formula values; pure arithmetic."""
    args = [(n, s_min, s_max) for n in range(n_min, n_max + 1)]
    return VerificationReport([c for cells in _run(_difference_task, args, jobs) for c in cells])


# ----- general tuples -----------------------------------------------------------------


def _two_var_task(a, b, s_max, cap) -> list[Cell]:
    subject = f"({a},{b})"
    res = g_search_many((a, b), range(s_max + 1), cap)
    cells = []
    for s in range(s_max + 1):
        closed = g_two_var(a, b, s)
        cells.append(compare(Suite.TWO_VAR, None, s, closed, res[s].value, subject))
        count = count_representations(closed, (a, b), cap) if closed >= 0 else 0
        cells.append(compare(Suite.EXACT_COUNT, None, s, s, count, subject))
    return cells


def verify_two_var(
    max_elem: int = 12, s_max: int = 5, jobs: int = 1, cap: int | None = None
) -> VerificationReport:
    """All coprime 2 <= a < b <= max_elem: oracle = (s+1)ab - a - b and d(g) = s."""
    pairs = [
        (a, b, s_max, cap)
        for a in range(2, max_elem + 1)
        for b in range(a + 1, max_elem + 1)
        if math.gcd(a, b) == 1
    ]
    return VerificationReport([c for cells in _run(_two_var_task, pairs, jobs) for c in cells])


def beck_kifer_triples(count: int = 50, max_elem: int = 30, seed: int = 2024) -> list[tuple[int, int, int]]:
    """Fixed sample of gcd-1 triples, mostly with gcd(a_2, a_3) > 1 so the reduction bites."""
    pool = [
        (a1, a2, a3)
        for a1 in range(2, max_elem + 1)
        for a2 in range(2, max_elem + 1)
        for a3 in range(a2, max_elem + 1)
        if math.gcd(a1, a2, a3) == 1
    ]
    reducing = [t for t in pool if math.gcd(t[1], t[2]) > 1]
    plain = [t for t in pool if math.gcd(t[1], t[2]) == 1]
    rng = random.Random(seed)
    n_plain = count // 5
    picked = rng.sample(reducing, count - n_plain) + rng.sample(plain, n_plain)
    return sorted(picked)


def _beck_kifer_task(triple, s_max, cap) -> list[Cell]:
    subject = "(" + ",".join(map(str, triple)) + ")"
    direct = g_search_many(triple, range(s_max + 1), cap)
    return [
        compare(Suite.BECK_KIFER, None, s, direct[s].value, beck_kifer_g(triple, s, oracle_g), subject)
        for s in range(s_max + 1)
    ]


def verify_beck_kifer(
    triples: Sequence[tuple[int, int, int]] | None = None,
    s_max: int = 3,
    jobs: int = 1,
    cap: int | None = None,
) -> VerificationReport:
    """Direct oracle vs the gcd reduction wrapped around the oracle."""
    triples = beck_kifer_triples() if triples is None else triples
    args = [(tuple(t), s_max, cap) for t in triples]
    return VerificationReport([c for cells in _run(_beck_kifer_task, args, jobs) for c in cells])


def remark_samples(count: int = 24, a1_max: int = 60, s_max: int = 8, seed: int = 7) -> list[tuple[int, int, int, int]]:
    """Deterministic samples (A1, A2, A3, s) accepted by the ratio conditions.

    Always contains (20, 4, 11, 3); the rest alternate between the two branches.
    """
    accepted = {Parity.EVEN: [], Parity.ODD: []}
    for a1 in range(2, a1_max + 1):
        for a2 in range(2, a1 + 1):
            if a1 % a2:
                continue
            for a3 in range(2, 2 * a1_max):
                if math.gcd(a1, a2, a3) != 1:
                    continue
                for s in range(1, s_max + 1):
                    try:
                        branch = general_triple_branch(a1, a2, a3, s)
                    except DomainError:
                        continue
                    accepted[branch].append((a1, a2, a3, s))
    rng = random.Random(seed)
    half = count // 2
    picked = {(20, 4, 11, 3)}
    picked.update(rng.sample(accepted[Parity.EVEN], half))
    picked.update(rng.sample(accepted[Parity.ODD], count - half))
    return sorted(picked)


def _remark_task(sample, cap) -> list[Cell]:
    a1, a2, a3, s = sample
    subject = f"({a1},{a2},{a3})"
    try:
        closed = g_general_triple(a1, a2, a3, s)
    except DomainError as exc:
        return [skipped(Suite.REMARK, None, s, str(exc), subject)]
    try:
        found = g_search_many((a1, a2, a3), [s], cap)[s].value
    except CapExhaustedError as exc:
        return _cap_cells(Suite.REMARK, None, [s], exc, subject)
    return [compare(Suite.REMARK, None, s, closed, found, subject)]


def verify_remark(
    samples: Sequence[tuple[int, int, int, int]] | None = None,
    jobs: int = 1,
    cap: int | None = None,
) -> VerificationReport:
    """Generalized three-term formula vs oracle; rejected samples are skipped."""
    samples = remark_samples() if samples is None else samples
    args = [(tuple(x), cap) for x in samples]
    return VerificationReport([c for cells in _run(_remark_task, args, jobs) for c in cells])


# ----- tables and corollary -----------------------------------------------------------


def verify_tables() -> VerificationReport:
    cells = []
    for name in TABLE_NAMES:
        produced, golden = build_table(name).to_csv(), golden_csv(name)
        if produced == golden:
            cells.append(compare(Suite.TABLES, None, None, "match", "match", name))
            continue
        diff = next(
            (f"{g!r} vs {p!r}" for g, p in zip(golden.splitlines(), produced.splitlines()) if g != p),
            "length differs",
        )
        cells.append(Cell(Suite.TABLES, None, None, "match", "differs", Status.FAIL, name, diff))
    return VerificationReport(cells)


#: Reference lines for s = 11..17: (scope, polynomial in g + 1 = (n+1)(n+2)/4 * poly, range).
COROLLARY_PRINTED: dict[int, tuple[tuple[str, str, str], ...]] = {
    11: (("all", "8n+12", "n = 12 and n >= 14"),),
    12: (("even", "9n", "n >= 14"), ("odd", "9n-3", "n >= 17")),
    13: (("even", "9n+6", "n >= 12"), ("odd", "9n+3", "n >= 15")),
    14: (("even", "9n+12", "n >= 12"), ("odd", "9n+9", "n >= 15")),
    15: (("even", "9n+18", "n >= 18"), ("odd", "9n+15", "n >= 15")),
    16: (("all", "10n", "n = 17 and n >= 19"),),
    17: (("all", "10n+6", "n = 15 and n >= 17"),),
}


def _poly(n: int, s: int) -> str:
    q, const = main_formula_numerator(n, s)
    if const == 0:
        return f"{q}n"
    return f"{q}n{'+' if const > 0 else '-'}{abs(const)}"


def describe_range(ns: Iterable[int], horizon: int, step: int = 1) -> str:
    """Render a set like {12, 14, 15, ...} as 'n = 12 and n >= 14'.

    ``step`` is 2 for single-parity sets.  Elements are only known up to
    ``horizon``, so the tail must run to it.
    """
    ns = sorted(ns)
    if not ns or ns[-1] + step <= horizon:
        raise ValueError("set does not reach the horizon; not of the form 'n >= m'")
    tail = ns[-1]
    members = set(ns)
    while tail - step in members:
        tail -= step
    isolated = [n for n in ns if n < tail]
    if not isolated:
        return f"n >= {tail}"
    head = ", ".join(map(str, isolated[:-1]))
    head = f"{head} and {isolated[-1]}" if head else str(isolated[-1])
    return f"n = {head} and n >= {tail}"


def corollary_lines(s: int, horizon: int = 200) -> tuple[tuple[str, str, str], ...]:
    """Derive the corollary lines for ``s`` from the closed form and its bounds."""
    mode = "relaxed" if relaxed_allowed(s) else "strict"
    sets = {
        par: [n for n in range(2 if par == "even" else 3, horizon + 1, 2) if admissible(n, s, mode)[0]]
        for par in ("even", "odd")
    }
    polys = {"even": _poly(2, s), "odd": _poly(3, s)}
    if polys["even"] == polys["odd"]:
        merged = sorted(sets["even"] + sets["odd"])
        return (("all", polys["even"], describe_range(merged, horizon)),)
    return tuple((par, polys[par], describe_range(sets[par], horizon, 2)) for par in ("even", "odd"))


def verify_corollary(s_values: Iterable[int] = range(11, 18)) -> VerificationReport:
    cells = []
    for s in s_values:
        printed = COROLLARY_PRINTED[s]
        derived = corollary_lines(s)
        if len(printed) != len(derived):
            cells.append(compare(Suite.COROLLARY, None, s, len(printed), len(derived), "line count"))
            continue
        for (scope, poly, rng_), (dscope, dpoly, drng) in zip(printed, derived):
            cells.append(compare(Suite.COROLLARY, None, s, f"{scope}:{poly}", f"{dscope}:{dpoly}", f"{scope} pattern"))
            cells.append(compare(Suite.COROLLARY, None, s, rng_, drng, f"{scope} range"))
    return VerificationReport(cells)


# ----- entry point ----------------------------------------------------------------------


def run_grid(spec: GridSpec, jobs: int = 1, cap: int | None = None) -> VerificationReport:
    """Run every suite named in ``spec`` and merge the reports."""
    parts = []
    suites = spec.suites
    if Suite.MAIN in suites:
        parts.append(verify_main_formula(spec, jobs, cap))
    if Suite.REDUCED in suites or Suite.EXACT_COUNT in suites:
        parts.append(verify_reduced_and_exact_count(spec, jobs, cap))
    if Suite.DIFFERENCES in suites:
        parts.append(verify_differences(spec.s_max, spec.n_max, spec.n_min, spec.s_min, jobs))
    if Suite.TWO_VAR in suites:
        parts.append(verify_two_var(jobs=jobs, cap=cap))
    if Suite.BECK_KIFER in suites:
        parts.append(verify_beck_kifer(jobs=jobs, cap=cap))
    if Suite.REMARK in suites:
        parts.append(verify_remark(jobs=jobs, cap=cap))
    if Suite.TABLES in suites:
        parts.append(verify_tables())
    if Suite.COROLLARY in suites:
        parts.append(verify_corollary())
    return VerificationReport.merge(parts)

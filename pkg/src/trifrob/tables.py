"""
Regenerate the parameter tables for the triangular closed forms.

The bound tables are rebuilt symbolically: for each column the floor-based
:func:`~trifrob.triangular.n_bound` is evaluated at s = k(k+1) + i for every
admissible i and many k, and the result is fitted to a linear expression in k
(checked exactly at every sampled k).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Iterable

from .triangular import Parity, closed_params, n_bound, xy_pair

TABLE_NAMES = ("qcdelta", "xy", "bounds", "bounds_prev")

GOLDEN_FILES = {
    "qcdelta": "table1_qcdelta.csv",
    "xy": "table2_xy.csv",
    "bounds": "table3_bounds.csv",
    "bounds_prev": "table4_bounds_prev.csv",
}

DEFAULT_S_MAX = {"qcdelta": 20, "xy": 19}


@dataclass(frozen=True)
class Table:
    name: str
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "table": self.name,
            "header": list(self.header),
            "rows": [list(r) for r in self.rows],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        grid = [self.header] + list(self.rows)
        widths = [max(len(row[j]) for row in grid) for j in range(len(self.header))]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in grid]
        return "\n".join(lines) + "\n"


def qcdelta_table(s_max: int = 20) -> Table:
    params = [closed_params(s) for s in range(s_max + 1)]
    return Table(
        "qcdelta",
        ("s",) + tuple(str(s) for s in range(s_max + 1)),
        (
            ("q_s",) + tuple(str(p.q) for p in params),
            ("c_s",) + tuple(str(p.c) for p in params),
            ("delta_s",) + tuple(str(p.delta) for p in params),
        ),
    )


def xy_table(s_max: int = 19) -> Table:
    ev = [xy_pair(s, Parity.EVEN) for s in range(s_max + 1)]
    od = [xy_pair(s, Parity.ODD) for s in range(s_max + 1)]
    return Table(
        "xy",
        ("s",) + tuple(str(s) for s in range(s_max + 1)),
        (
            ("x_even",) + tuple(str(p.x) for p in ev),
            ("y_even",) + tuple(str(p.y) for p in ev),
            ("x_odd",) + tuple(str(p.x) for p in od),
            ("y_odd",) + tuple(str(p.y) for p in od),
        ),
    )


def format_linear(slope: int, intercept: int, var: str = "k") -> str:
    """Render slope*var + intercept as in the golden bound tables, e.g. 6k-3."""
    head = f"{slope}{var}" if slope not in (0, 1) else (var if slope == 1 else "")
    if not head:
        return str(intercept)
    if intercept == 0:
        return head
    sign = "+" if intercept > 0 else "-"
    return f"{head}{sign}{abs(intercept)}"


# (label, admissible offsets for a given k); offsets index s = base(k) + offset
_Column = tuple[str, Callable[[int], Iterable[int]]]

_BOUNDS_COLUMNS: tuple[_Column, ...] = (
    ("0..k-1", lambda k: range(0, k)),
    ("k", lambda k: [k]),
    ("k+1..2k", lambda k: range(k + 1, 2 * k + 1)),
    ("2k+1", lambda k: [2 * k + 1]),
)

_BOUNDS_PREV_COLUMNS: tuple[_Column, ...] = (
    ("0..k-2", lambda k: range(0, k - 1)),
    ("k-1", lambda k: [k - 1]),
    ("k..2k-2", lambda k: range(k, 2 * k - 1)),
    ("2k-1", lambda k: [2 * k - 1]),
)


def _fit_column(
    parity: Parity,
    base: Callable[[int], int],
    offsets: Callable[[int], Iterable[int]],
    ks: range,
) -> str:
    values = {}
    for k in ks:
        seen = {n_bound(base(k) + i, parity) for i in offsets(k)}
        if len(seen) != 1:
            raise ArithmeticError(f"column not constant in i at k = {k}: {sorted(seen)}")
        values[k] = seen.pop()
    k0, k1 = ks[0], ks[1]
    slope = (values[k1] - values[k0]) // (k1 - k0)
    intercept = values[k0] - slope * k0
    for k, v in values.items():
        if v != slope * k + intercept:
            raise ArithmeticError(f"column not linear in k: N = {v} at k = {k}")
    return format_linear(slope, intercept)


def _bounds(name, index_label, columns, base, ks) -> Table:
    rows = []
    for label, parity in (("N_even", Parity.EVEN), ("N_odd", Parity.ODD)):
        rows.append((label,) + tuple(_fit_column(parity, base, off, ks) for _, off in columns))
    return Table(name, (index_label,) + tuple(c[0] for c in columns), tuple(rows))


def bounds_table(k_max: int = 50) -> Table:
    """N_s for s = k(k+1) + i, k >= 1."""
    return _bounds("bounds", "i", _BOUNDS_COLUMNS, lambda k: k * (k + 1), range(1, k_max + 1))


def bounds_prev_table(k_max: int = 50) -> Table:
    """N_v for v = (k-1)k + r, the induction-step view; needs k >= 2."""
    return _bounds(
        "bounds_prev", "r", _BOUNDS_PREV_COLUMNS, lambda k: (k - 1) * k, range(2, k_max + 1)
    )


def build_table(which: str, s_max: int | None = None) -> Table:
    if which == "qcdelta":
        return qcdelta_table(DEFAULT_S_MAX["qcdelta"] if s_max is None else s_max)
    if which == "xy":
        return xy_table(DEFAULT_S_MAX["xy"] if s_max is None else s_max)
    if which == "bounds":
        return bounds_table()
    if which == "bounds_prev":
        return bounds_prev_table()
    raise ValueError(f"unknown table {which!r}; choose from {TABLE_NAMES}")


def reproduce_tables() -> dict[str, Table]:
    return {name: build_table(name) for name in TABLE_NAMES}


def golden_csv(which: str) -> str:
    return resources.files("trifrob.golden").joinpath(GOLDEN_FILES[which]).read_text()

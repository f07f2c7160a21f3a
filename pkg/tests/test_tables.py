import json
from pathlib import Path

import pytest

from trifrob.tables import (
    TABLE_NAMES,
    bounds_table,
    build_table,
    format_linear,
    golden_csv,
    reproduce_tables,
)
from trifrob.triangular import n_bound

GOLDEN = Path(__file__).resolve().parents[1] / "src" / "trifrob" / "golden"


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_tables_match_golden(name):
    assert build_table(name).to_csv() == golden_csv(name)


def test_golden_files_are_package_data():
    assert sorted(p.name for p in GOLDEN.glob("*.csv")) == [
        "table1_qcdelta.csv",
        "table2_xy.csv",
        "table3_bounds.csv",
        "table4_bounds_prev.csv",
    ]


def test_table1_q_row():
    row = reproduce_tables()["qcdelta"].rows[0]
    assert row[1:] == tuple("3,4,5,5,6,6,7,7,7,8,8,8,9,9,9,9,10,10,10,10,11".split(","))


def test_table2_x_even_row():
    row = build_table("xy").rows[0]
    assert row[1:] == tuple("0,0,0,1,0,1,0,1,2,0,1,2,0,1,2,3,0,1,2,3".split(","))


def test_table3_odd_row():
    assert bounds_table().rows[1][1:] == ("6k-3", "6k-3", "6k-3", "6k+3")


def _eval(expr, k):
    # "6k-6" -> 6*k - 6
    coef, _, rest = expr.partition("k")
    return int(coef) * k + (int(rest) if rest else 0)


def test_table3_rows_hold_for_every_k():
    table = bounds_table()
    ranges = [
        lambda k: range(0, k),
        lambda k: [k],
        lambda k: range(k + 1, 2 * k + 1),
        lambda k: [2 * k + 1],
    ]
    for k in range(1, 51):
        for (label, *exprs), parity in zip(table.rows, ("even", "odd")):
            for expr, idx in zip(exprs, ranges):
                for i in idx(k):
                    assert n_bound(k * (k + 1) + i, parity) == _eval(expr, k)


@pytest.mark.parametrize(
    "slope, intercept, text",
    [(6, -6, "6k-6"), (6, 0, "6k"), (6, 3, "6k+3"), (1, 0, "k"), (0, 5, "5")],
)
def test_format_linear(slope, intercept, text):
    assert format_linear(slope, intercept) == text


def test_json_and_text_forms():
    table = build_table("qcdelta", 3)
    data = json.loads(table.to_json())
    assert data["header"] == ["s", "0", "1", "2", "3"]
    assert data["rows"][0] == ["q_s", "3", "4", "5", "5"]
    assert table.to_text().splitlines()[0].split() == ["s", "0", "1", "2", "3"]


def test_unknown_table():
    with pytest.raises(ValueError):
        build_table("nope")

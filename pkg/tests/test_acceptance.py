"""Exit criteria.  Each test carries its runtime budget; run with -v to see the summary."""

import io
import math
import time
from contextlib import contextmanager

import pytest

from brute import series_coefficients
from trifrob.cli import run
from trifrob.genfrob import g_search, g_two_var
from trifrob.repcount import IntTuple, count_prefix
from trifrob.tables import TABLE_NAMES, golden_csv
from trifrob.triangular import (
    Parity,
    closed_params,
    g_difference_closed,
    main_formula_numerator,
    n_bound,
    n_bound_piecewise,
    xy_pair,
)
from trifrob.verify import (
    GridSpec,
    Status,
    Suite,
    beck_kifer_triples,
    remark_samples,
    run_grid,
    verify_beck_kifer,
    verify_corollary,
    verify_differences,
    verify_main_formula,
    verify_reduced_and_exact_count,
    verify_remark,
    verify_two_var,
)

criterion = pytest.mark.criterion


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def _assert_clean(report, suite, minimum):
    bad = [c for c in report.cells if c.status in (Status.FAIL, Status.CAP_EXHAUSTED)]
    assert not bad, bad[:5]
    assert report.summary[suite.value]["pass"] >= minimum


@criterion("1 table reproduction")
def test_tables_byte_exact():
    with budget(1):
        for which in TABLE_NAMES:
            out = io.StringIO()
            assert run(["tables", "--which", which, "--format", "csv"], out=out) == 0
            assert out.getvalue() == golden_csv(which)


@criterion("2 known constants")
def test_known_constants():
    with budget(1):
        assert g_search((7, 11), 0).value == 59
        assert g_two_var(7, 11, 0) == 59
        assert g_search((1, 2), 0).value == -1
        assert g_two_var(1, 2, 0) == -1


MAIN_GRID = GridSpec(s_min=0, s_max=15, n_min=2, n_max=30, bound_mode="strict")


def _grid_cells_expected():
    return sum(
        1 for n in range(2, 31) for s in range(16) if n > n_bound(s, Parity.of(n))
    )


@criterion("3 main closed form vs oracle")
def test_main_formula_grid():
    with budget(300):
        report = verify_main_formula(MAIN_GRID)
    _assert_clean(report, Suite.MAIN, _grid_cells_expected())
    assert report.summary[Suite.MAIN.value]["pass"] == _grid_cells_expected()


@criterion("4 reduced triple and exact count")
def test_reduced_and_exact_count_grid():
    with budget(300):
        report = verify_reduced_and_exact_count(MAIN_GRID)
    _assert_clean(report, Suite.REDUCED, _grid_cells_expected())
    _assert_clean(report, Suite.EXACT_COUNT, _grid_cells_expected())


@criterion("5 difference identity")
def test_difference_identity():
    with budget(30):
        report = verify_differences(s_max=200, n_max=1000)
    expected = sum(
        1 for n in range(2, 1001) for s in range(201) if n > n_bound(s + 1, Parity.of(n))
    )
    _assert_clean(report, Suite.DIFFERENCES, expected)


@criterion("6 two-variable suite")
def test_two_variable_suite():
    with budget(30):
        report = verify_two_var(max_elem=12, s_max=5)
    pairs = sum(1 for a in range(2, 13) for b in range(a + 1, 13) if math.gcd(a, b) == 1)
    _assert_clean(report, Suite.TWO_VAR, pairs * 6)
    _assert_clean(report, Suite.EXACT_COUNT, pairs * 6)


@criterion("7 Beck-Kifer suite")
def test_beck_kifer_suite():
    triples = beck_kifer_triples()
    assert len(triples) == 50
    assert all(max(t) <= 30 and math.gcd(*t) == 1 for t in triples)
    with budget(120):
        report = verify_beck_kifer(triples, s_max=3)
    _assert_clean(report, Suite.BECK_KIFER, 200)


@criterion("8 per-s range reconciliation")
def test_corollary():
    with budget(1):
        report = verify_corollary()
    _assert_clean(report, Suite.COROLLARY, 22)
    ranges = {c.s: c.observed for c in report.cells if c.subject == "all range"}
    assert ranges[11] == "n = 12 and n >= 14"
    assert ranges[16] == "n = 17 and n >= 19"


@criterion("9 generalized three-term formula")
def test_remark_suite():
    samples = remark_samples()
    generated = [x for x in samples if x != (20, 4, 11, 3)]
    assert len(generated) >= 20 and all(x[0] <= 60 for x in samples)
    with budget(60):
        report = verify_remark(samples)
    _assert_clean(report, Suite.REMARK, len(samples))
    anchor = next(c for c in report.cells if c.subject == "(20,4,11)" and c.s == 3)
    assert anchor.observed == anchor.expected == 73


PROPERTY_TUPLES = [(2, 3), (3, 5, 7), (6, 10, 15), (4, 6, 9), (10, 15, 21), (3, 3, 5), (7, 11, 13, 50)]


@criterion("10 properties")
def test_property_monotone_shift():
    for A in PROPERTY_TUPLES:
        counts = count_prefix(2000, A).counts
        assert counts[0] == 1
        for a in A:
            assert (counts[a:] >= counts[:-a]).all()


@criterion("10 properties")
def test_property_permutation_invariance():
    import itertools

    for A in PROPERTY_TUPLES:
        base = count_prefix(1000, A).tolist()
        for perm in itertools.permutations(A):
            assert count_prefix(1000, IntTuple(perm)).tolist() == base


@criterion("10 properties")
def test_property_generating_series():
    for A in [(2, 3), (6, 10, 15), (7, 11, 50), (4, 9, 25, 49)]:
        assert count_prefix(300, A).tolist() == series_coefficients(A, 300)


@criterion("10 properties")
def test_property_cross_links():
    for s in range(10**4 + 1):
        p = closed_params(s)
        ev, od = xy_pair(s, Parity.EVEN), xy_pair(s, Parity.ODD)
        assert p.q == 2 * ev.x + ev.y + 3
        assert p.c == ev.x
        assert p.q == od.x + 2 * od.y + 3
        assert 6 * p.c - 3 * p.delta == 3 * od.x - 3


@criterion("10 properties")
def test_property_floor_piecewise_bounds():
    for s in range(10**4 + 1):
        for parity in Parity:
            assert n_bound(s, parity) == n_bound_piecewise(s, parity)


@criterion("10 properties")
def test_property_numerators_divisible_by_four():
    for n in range(1, 1001):
        for s in range(201):
            q, const = main_formula_numerator(n, s)
            assert (n + 1) * (n + 2) * (q * n + const) % 4 == 0
            if n > n_bound(s + 1, Parity.of(n)):
                g_difference_closed(n, s)  # raises ArithmeticError on a non-multiple of 4


@criterion("10 properties")
def test_property_parallel_determinism():
    spec = GridSpec(0, 8, 2, 18, suites={"main_formula", "reduced_formula", "differences"})
    serial = run_grid(spec, jobs=1).to_json()
    for jobs in (2, 4):
        assert run_grid(spec, jobs=jobs).to_json() == serial

from itertools import combinations

import pytest

from propertyb.atlas import (
    EXACT_VALUES,
    Rule,
    best_bound,
    best_construction,
    candidates,
    evaluate,
    fano,
    optimal_bound,
    single_vertex,
    table_entry,
    triangle,
)
from propertyb.bounds import aht_count
from propertyb.cnf import dpll_solve, to_monotone_cnf
from propertyb.verifier import find_proper_coloring

IMPROVED = [1, 3, 7, 23, 51, 147, 421, 1269, 2401, 7803, 25449, 64827, 297347,
            531723, 857157, 5378763, 13201419]
CLASSICAL = [1, 3, 7, 23, 51, 147, 421, 1339, 2401, 7803, 27435, 64827, 360751,
             531723, 857157, 5378763, 14637205]


def test_single_vertex():
    h = single_vertex()
    assert (h.n, h.vertex_count, h.edges) == (1, 1, [(0,)])
    assert not find_proper_coloring(h, symmetry=False).two_colorable
    f = to_monotone_cnf(h)
    assert f.clauses == ((1,), (-1,))
    assert dpll_solve(f).status.value == "UNSAT"


def test_triangle():
    h = triangle()
    assert h.edges == [(0, 1), (0, 2), (1, 2)]
    assert not find_proper_coloring(h).two_colorable
    for e in h.edges:
        assert find_proper_coloring(h.without_edges([e])).two_colorable


def test_fano_incidence():
    h = fano()
    assert (h.n, h.vertex_count, len(h)) == (3, 7, 7)
    assert h.degrees() == [3] * 7
    for e, f in combinations(h.edges, 2):
        assert len(set(e) & set(f)) == 1
    assert not find_proper_coloring(h).two_colorable


def test_improved_table():
    assert [best_bound(n).bound for n in range(1, 18)] == IMPROVED


def test_classical_table():
    assert [table_entry(n, "classical").bound for n in range(1, 18)] == CLASSICAL


@pytest.mark.parametrize("n, bound, rule", [
    (8, 1269, Rule.M8_SPECIAL),
    (11, 25449, Rule.LAYERED),
    (13, 297347, Rule.LAYERED),
    (4, 23, Rule.EXACT),
])
def test_best_bound_examples(n, bound, rule):
    e = best_bound(n)
    assert (e.bound, e.rule) == (bound, rule)


def test_entries_equal_their_recurrence():
    for n in range(1, 18):
        for edition in ("classical", "improved"):
            e = table_entry(n, edition)
            assert e.bound == evaluate(e.rule, n, e.children)
            assert tuple(c.n for c in e.children) == e.operands


def test_improved_never_worse_than_classical():
    for n in range(1, 18):
        assert table_entry(n, "improved").bound <= table_entry(n, "classical").bound


def test_m4_recurrence_agrees_with_exact():
    assert EXACT_VALUES[4] == aht_count(4, 3) == 23


def test_optimal_bound_improves_rows_12_and_16():
    diffs = {n: optimal_bound(n) for n in range(1, 18) if optimal_bound(n).bound != IMPROVED[n - 1]}
    assert set(diffs) == {12, 16}
    assert (diffs[12].bound, diffs[12].operands) == (23 * 7 ** 4, (4, 3))
    assert (diffs[16].bound, diffs[16].operands) == (3 * 1269 ** 2, (2, 8))
    for n in range(1, 18):
        assert optimal_bound(n).bound <= IMPROVED[n - 1]


def test_candidates_cover_all_ordered_factorizations():
    products = {e.operands for e in candidates(12) if e.rule is Rule.PRODUCT_AM}
    assert products == {(2, 6), (3, 4), (4, 3), (6, 2)}


def test_bounds_beyond_table():
    e = best_bound(18)
    assert e.bound == min(c.bound for c in candidates(18))
    with pytest.raises(ValueError):
        best_bound(0)


@pytest.mark.parametrize("n, edges, vertices", [
    (1, 1, 1), (2, 3, 3), (3, 7, 7), (4, 23, 11), (5, 51, 17), (6, 147, 21),
    (7, 421, 31), (8, 1269, 47), (9, 2401, 49), (10, 7803, 51), (11, 25449, 89),
])
def test_best_construction_matches_bound(n, edges, vertices):
    h = best_construction(n)
    assert h.n == n
    assert (len(h), h.vertex_count) == (edges, vertices)
    assert len(h) == best_bound(n).bound


def test_best_construction_12_and_13():
    for n in (12, 13):
        assert len(best_construction(n)) == best_bound(n).bound


def test_best_construction_cap():
    with pytest.raises(ValueError):
        best_construction(14)


def test_best_m8_unsat_by_structure_of_m5_core():
    # The 5-uniform core used by row 8 must itself be non-2-colorable.
    core = best_construction(5)
    assert not find_proper_coloring(core).two_colorable

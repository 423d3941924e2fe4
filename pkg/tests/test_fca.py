import numpy as np
import pytest

from dedekind.fca import build_context, concept_count, irreducibles, position_context
from dedekind.intervals import build_interval_table, enumerate_intervals
from dedekind.lattice import generate_lattice
from oracles import covers_irreducibles


def _all_tables(n):
    lat = generate_lattice(n)
    return [build_interval_table(lat, iv) for iv in enumerate_intervals(lat)]


@pytest.mark.parametrize("n", [2, 3])
def test_irreducibles_match_cover_counts(n):
    for tbl in _all_tables(n):
        J, M = irreducibles(tbl)
        j, m = covers_irreducibles(tbl.elems.tolist())
        assert J.tolist() == j and M.tolist() == m


def test_context_of_0_15():
    ctx = build_context(build_interval_table(generate_lattice(2), (0, 15)))
    assert ctx.rows.tolist() == [1, 3, 5, 15]
    assert ctx.cols.tolist() == [0, 3, 5, 7]
    assert ctx.shape == (4, 4)


def test_boolean_interval_is_diagonal_free():
    # [1, 7] is the four-element Boolean lattice: J = {3, 5}, M = {3, 5}
    ctx = build_context(build_interval_table(generate_lattice(2), (1, 7)))
    assert ctx.rows.tolist() == [3, 5] and ctx.cols.tolist() == [3, 5]
    assert ctx.incidence.tolist() == [[True, False], [False, True]]


def test_trivial_interval_has_empty_context():
    ctx = build_context(build_interval_table(generate_lattice(2), (5, 5)))
    assert ctx.shape == (0, 0)
    assert concept_count(ctx) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_context_reconstructs_interval_size(n):
    for tbl in _all_tables(n):
        assert concept_count(build_context(tbl)) == tbl.size


@pytest.mark.parametrize("n", [2, 3])
def test_join_irreducibles_equal_meet_irreducibles_in_number(n):
    # distributive lattices: both counts equal the length of a maximal chain
    for tbl in _all_tables(n):
        J, M = irreducibles(tbl)
        assert len(J) == len(M)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_position_context_equals_materialised_context(n):
    lat = generate_lattice(n)
    for iv in enumerate_intervals(lat):
        a = build_context(build_interval_table(lat, iv))
        b = position_context(n, *iv)
        assert np.array_equal(a.rows, b.rows) and np.array_equal(a.cols, b.cols)
        assert np.array_equal(a.incidence, b.incidence)


@pytest.mark.parametrize("n", [2, 3])
def test_dual_context_is_transpose_up_to_order(n):
    for tbl in _all_tables(n):
        ctx = build_context(tbl)
        dual = build_context(tbl.dual())
        assert dual.shape == ctx.shape[::-1]
        # the complement map sends M to the dual's J and J to the dual's M
        hi = np.uint64(tbl.interval.hi)
        jd = np.sort(ctx.cols ^ hi)
        md = np.sort(ctx.rows ^ hi)
        assert np.array_equal(jd, dual.rows) and np.array_equal(md, dual.cols)
        t = ctx.transpose()
        assert np.array_equal(t.incidence, ctx.incidence.T)


def test_two_chain_context():
    tbl = build_interval_table(generate_lattice(2), (0, 1))
    J, M = irreducibles(tbl)
    assert J.tolist() == [1] and M.tolist() == [0]
    ctx = build_context(tbl)
    assert ctx.shape == (1, 1) and not ctx.incidence.any()


def test_row_of_one_in_0_15():
    ctx = build_context(build_interval_table(generate_lattice(2), (0, 15)))
    row = ctx.incidence[ctx.rows.tolist().index(1)]
    assert ctx.cols[row].tolist() == [3, 5, 7]

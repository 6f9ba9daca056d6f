from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from occ132 import (
    CellOrderError,
    Permutation,
    assemble,
    build_occurrence_graph,
    cell_decomposition,
    decompose,
    is_kernel_permutation,
    kernel_of,
    lis_northeast,
    make_permutation,
    order_feasible_cells,
    perm_from_str,
    shape_record,
)
from occ132.kernel import southwest_dominated_cells


class TestOccurrenceGraph:
    def test_worked_example(self):
        g = build_occurrence_graph(perm_from_str("57614283"))
        assert g.n == 8
        assert list(g.entry_vertices) == list(range(1, 9))
        assert len(g.occurrences) == 5
        assert all(len(set(occ)) == 3 for occ in g.occurrences)

    def test_increasing_is_isolated(self):
        g = build_occurrence_graph(make_permutation([1, 2, 3, 4]))
        assert g.occurrences == ()
        assert len(g.components()) == 4

    def test_pattern_is_one_component(self):
        g = build_occurrence_graph(make_permutation([1, 3, 2]))
        comps = g.components()
        assert len(comps) == 1
        assert comps[0].positions == (1, 2, 3)
        assert comps[0].t3 == 1

    def test_edges_have_degree_three(self):
        g = build_occurrence_graph(perm_from_str("57614283"))
        assert len(g.edges()) == 3 * len(g.occurrences)


class TestKernelOf:
    def test_worked_example(self):
        k = kernel_of(perm_from_str("57614283"))
        assert k.values == (1, 4, 2, 8, 3)
        assert k.shape == perm_from_str("14253")
        assert k.size == 5
        assert k.capacity == 4

    def test_second_example(self):
        k = kernel_of(perm_from_str("67382451"))
        assert k.values == (3, 8, 4, 5)
        assert k.shape == perm_from_str("1423")

    def test_identity_kernel_is_max_entry(self):
        for n in range(1, 7):
            k = kernel_of(Permutation(tuple(range(1, n + 1))))
            assert k.positions == (n,)
            assert k.shape == make_permutation([1])
            assert k.capacity == 0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            kernel_of(make_permutation([]))


class TestIsKernelPermutation:
    def test_examples(self):
        assert is_kernel_permutation(make_permutation([1]))
        assert is_kernel_permutation(perm_from_str("132"))
        assert not is_kernel_permutation(perm_from_str("12"))

    def test_agrees_with_shape_fixed_point(self):
        for n in range(1, 7):
            for vals in permutations(range(1, n + 1)):
                pi = Permutation(vals)
                assert is_kernel_permutation(pi) == (kernel_of(pi).shape == pi)


class TestCellDecomposition:
    def test_unit_shape(self):
        dec = cell_decomposition(make_permutation([1]))
        assert dec.feasible == {(1, 1), (1, 2)}

    def test_1423(self):
        dec = cell_decomposition(perm_from_str("1423"))
        assert dec.feasible == {(4, 1), (1, 3), (1, 4), (1, 5)}

    def test_132(self):
        dec = cell_decomposition(perm_from_str("132"))
        assert dec.feasible == {(3, 1), (1, 3), (1, 4)}

    def test_non_kernel_rejected(self):
        with pytest.raises(ValueError):
            cell_decomposition(perm_from_str("12"))

    def test_infeasible_cells_empty_for_all_members(self):
        # every permutation's entries must land in feasible cells only;
        # decompose raises otherwise, so a clean sweep is the assertion
        for n in range(1, 8):
            for vals in permutations(range(1, n + 1)):
                decompose(Permutation(vals))


class TestCellOrder:
    def test_examples(self):
        assert order_feasible_cells(cell_decomposition(perm_from_str("1423"))) == (
            (4, 1),
            (1, 3),
            (1, 4),
            (1, 5),
        )
        assert order_feasible_cells(cell_decomposition(make_permutation([1]))) == (
            (1, 1),
            (1, 2),
        )
        assert order_feasible_cells(cell_decomposition(perm_from_str("132"))) == (
            (3, 1),
            (1, 3),
            (1, 4),
        )

    def test_total_on_catalog(self, catalog3):
        for rec in catalog3.records:
            order_feasible_cells(cell_decomposition(rec.shape))

    def test_incomparable_raises(self):
        from occ132.kernel import CellDecomposition

        fake = CellDecomposition(perm_from_str("132"), frozenset({(1, 1), (2, 2)}))
        with pytest.raises(CellOrderError):
            order_feasible_cells(fake)


class TestLisNortheast:
    def test_examples(self):
        assert lis_northeast(perm_from_str("1423")) == [1, 2, 1, 0]
        assert lis_northeast(make_permutation([1])) == [1, 0]
        assert lis_northeast(perm_from_str("132")) == [1, 1, 0]


class TestOneSidedCriterion:
    def test_subsumed_by_pairwise_procedure(self, catalog3):
        for rec in catalog3.records:
            dec = cell_decomposition(rec.shape)
            assert not (southwest_dominated_cells(rec.shape) & dec.feasible), rec.shape


class TestDecompose:
    def test_worked_example(self):
        shape, contents = decompose(perm_from_str("67382451"))
        assert shape == perm_from_str("1423")
        assert [c.values for c in contents] == [(1, 2), (1,), (), (1,)]

    def test_larger_example(self):
        pi = perm_from_str("10,11,7,12,4,6,5,8,3,9,2,1")
        shape, contents = decompose(pi)
        assert shape == perm_from_str("1423")
        cells = order_feasible_cells(cell_decomposition(shape))
        by_cell = dict(zip(cells, contents))
        assert by_cell[(1, 3)] == perm_from_str("132")  # entries 4, 6, 5
        assert by_cell[(1, 4)] == perm_from_str("1")  # entry 3
        assert by_cell[(1, 5)] == perm_from_str("21")  # entries 2, 1
        assert by_cell[(4, 1)] == perm_from_str("12")  # entries 10, 11

    def test_kernel_permutation_has_empty_contents(self, catalog2):
        for rec in catalog2.records:
            shape, contents = decompose(rec.shape)
            assert shape == rec.shape
            assert all(c.n == 0 for c in contents)


class TestAssemble:
    def test_worked_example(self):
        contents = [perm_from_str("12"), perm_from_str("1"), perm_from_str(""), perm_from_str("1")]
        assert assemble(perm_from_str("1423"), contents) == perm_from_str("67382451")

    def test_all_empty_returns_shape(self, catalog2):
        for rec in catalog2.records:
            empties = [make_permutation([])] * rec.f
            assert assemble(rec.shape, empties) == rec.shape

    def test_unit_shape_right_content(self):
        got = assemble(make_permutation([1]), [make_permutation([]), make_permutation([1])])
        assert got == perm_from_str("21")

    def test_blocks_never_merge_into_kernel(self):
        # both cells filled: contents stay separate components, so the
        # result is 231 (not 132, which is its own kernel)
        got = assemble(make_permutation([1]), [make_permutation([1]), make_permutation([1])])
        assert got == perm_from_str("231")
        assert decompose(got)[1] == (make_permutation([1]), make_permutation([1]))

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            assemble(make_permutation([1]), [make_permutation([1])])


class TestRoundtrip:
    def test_forward_exhaustive_small(self):
        for n in range(1, 7):
            for vals in permutations(range(1, n + 1)):
                pi = Permutation(vals)
                shape, contents = decompose(pi)
                assert assemble(shape, contents) == pi

    @settings(max_examples=60, deadline=None)
    @given(st.permutations(list(range(1, 9))))
    def test_forward_random_larger(self, vals):
        pi = Permutation(tuple(vals))
        shape, contents = decompose(pi)
        assert assemble(shape, contents) == pi


def test_shape_record_fields(catalog2):
    rec = catalog2.record_for(perm_from_str("1423"))
    assert (rec.size, rec.capacity, rec.f) == (4, 2, 4)
    assert rec.cells == ((4, 1), (1, 3), (1, 4), (1, 5))
    assert rec.lis_ne == (1, 2, 1, 0)
    rebuilt = shape_record(rec.shape)
    assert rebuilt == rec

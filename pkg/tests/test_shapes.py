from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from occ132 import (
    Permutation,
    census,
    count_132,
    enumerate_kernel_shapes,
    exceptional_shape,
    is_kernel_permutation,
    kernel_of,
    load_catalog,
    perm_from_str,
    shape_record,
)
from occ132.perms import count_132_values
from occ132.shapes import (
    CatalogError,
    catalog_to_text,
    iter_kernel_permutations,
    save_catalog,
    verify_exceptional_uniqueness,
)


class TestEnumerate:
    def test_r0(self):
        cat = enumerate_kernel_shapes(0)
        assert [str(r.shape) for r in cat.records] == ["1"]

    def test_r1(self, catalog1):
        assert [str(r.shape) for r in catalog1.records] == ["1", "132"]

    def test_r2_exact_set(self, catalog2):
        assert [str(r.shape) for r in catalog2.records] == [
            "1",
            "132",
            "1243",
            "1342",
            "1423",
            "2143",
            "35142",
        ]

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            enumerate_kernel_shapes(-1)

    def test_every_record_is_kernel_with_consistent_fields(self, catalog3):
        seen = set()
        for rec in catalog3.records:
            assert is_kernel_permutation(rec.shape)
            assert rec.capacity <= 3
            assert rec.size <= 2 * rec.capacity + 1
            assert shape_record(rec.shape) == rec
            assert rec.shape.values not in seen
            seen.add(rec.shape.values)

    def test_cross_check_against_full_scan(self, catalog2):
        # kernels of every permutation in S_t, t <= 2r+1, restricted to
        # capacity <= r, must reproduce the catalog exactly
        for r, catalog in ((1, None), (2, catalog2)):
            found = set()
            for t in range(1, 2 * r + 2):
                for vals in permutations(range(1, t + 1)):
                    shape = kernel_of(Permutation(vals)).shape
                    if count_132(shape) <= r:
                        found.add(shape.values)
            cat = catalog if catalog is not None else enumerate_kernel_shapes(r)
            assert found == {rec.shape.values for rec in cat.records}

    def test_threads_give_identical_catalog(self):
        a = enumerate_kernel_shapes(3, threads=1)
        b = enumerate_kernel_shapes(3, threads=2)
        assert catalog_to_text(a) == catalog_to_text(b)


class TestExceptionalShape:
    def test_small_cases(self):
        assert exceptional_shape(1) == perm_from_str("132")
        assert exceptional_shape(2) == perm_from_str("35142")
        assert exceptional_shape(3) == perm_from_str("5736142")

    def test_postconditions_up_to_six(self):
        for r in range(1, 7):
            rho = exceptional_shape(r)
            rec = shape_record(rho)
            assert rec.size == 2 * r + 1
            assert rec.capacity == r
            assert rec.f == r + 2

    def test_invalid_r(self):
        with pytest.raises(ValueError):
            exceptional_shape(0)

    def test_uniqueness_by_exhaustion(self):
        assert verify_exceptional_uniqueness(1)
        assert verify_exceptional_uniqueness(2)


class TestCensus:
    def test_r2(self, catalog2):
        c = census(catalog2)
        assert c.new_nonexceptional == {2: 4}
        assert c.by_size == {1: 1, 3: 1, 4: 4, 5: 1}

    def test_r3(self, catalog3):
        assert census(catalog3).new_nonexceptional == {2: 4, 3: 20}


class TestCatalogIO:
    def test_roundtrip(self, tmp_path, catalog2):
        path = tmp_path / "cat.jsonl"
        save_catalog(catalog2, path)
        loaded = load_catalog(path)
        assert loaded == catalog2

    def test_byte_reproducible(self, catalog2):
        again = enumerate_kernel_shapes(2)
        assert catalog_to_text(again) == catalog_to_text(catalog2)

    def test_version_mismatch(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"format_version": 99, "max_occ": 1}\n')
        with pytest.raises(CatalogError):
            load_catalog(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        with pytest.raises(CatalogError):
            load_catalog(path)


class TestSearchSoundness:
    @settings(max_examples=80, deadline=None)
    @given(st.permutations(list(range(1, 9))), st.integers(1, 8))
    def test_prefix_counts_monotone(self, vals, cut):
        # the count of a prefix never exceeds the count of the whole,
        # which is what justifies pruning on partial patterns
        prefix = tuple(vals[:cut])
        rank = {v: i + 1 for i, v in enumerate(sorted(prefix))}
        pattern = tuple(rank[v] for v in prefix)
        assert count_132_values(pattern) <= count_132_values(tuple(vals))

    def test_unbounded_enumeration_matches_brute_force(self):
        got = {p.values for p in iter_kernel_permutations(6)}
        want = set()
        for n in range(1, 7):
            for vals in permutations(range(1, n + 1)):
                if is_kernel_permutation(Permutation(vals)):
                    want.add(vals)
        assert got == want

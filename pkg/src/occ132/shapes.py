"""Search for kernel permutations, the maximal shape, catalogs and census.

The search walks the prefix-pattern tree: the node for a permutation of
S_k has one child per value v in 1..k+1, obtained by appending v on the
right and bumping existing values >= v.  Appending only ever adds
occurrences of 132 (the new entry can only close one), so prefix counts
are monotone and any prefix whose count exceeds the budget can be cut.

Alongside the pattern, each node carries two incrementally maintained
vectors:

- ``D[v]``, the number of occurrences created by appending v: pairs of
  earlier positions (i, j), i < j, with value(i) < v <= value(j); and
- per-position component labels of the occurrence graph, so that
  connectivity (the kernel-permutation test) is a constant-size check
  at every node instead of a rebuild.

The search over sizes <= 2r plus the constructed maximal shape of size
2r+1 yields exactly the catalog the generating-function solver consumes.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path

from .kernel import KernelShapeRecord, shape_record
from .perms import Permutation

CATALOG_FORMAT_VERSION = 1

# Depth at which the search tree is split into parallel jobs.
_SPLIT_DEPTH = 5

_State = tuple[tuple[int, ...], int, tuple[int, ...], tuple[int, ...]]


class CatalogError(RuntimeError):
    """A catalog file is malformed or too small for the request."""


@dataclass(frozen=True)
class ShapeCatalog:
    """All kernel shapes usable up to a given occurrence budget."""

    max_occ: int
    records: tuple[KernelShapeRecord, ...]

    def shapes(self) -> list[Permutation]:
        return [rec.shape for rec in self.records]

    def record_for(self, shape: Permutation) -> KernelShapeRecord:
        for rec in self.records:
            if rec.shape == shape:
                return rec
        raise KeyError(f"shape {shape} not in catalog")


@dataclass(frozen=True)
class Census:
    """Shape counts by size and by capacity, plus per-budget counts of
    newly usable shapes: those of capacity exactly r, minus the single
    maximal one of size 2r+1."""

    by_size: dict[int, int]
    by_capacity: dict[int, int]
    new_nonexceptional: dict[int, int]


def _root_state() -> _State:
    # Pattern (1,): no occurrences, D[1] = D[2] = 0, one singleton component.
    return ((1,), 0, (0, 0, 0), (0,))


def _touched_labels(pat: tuple[int, ...], comp: tuple[int, ...], v: int) -> set[int]:
    """Component labels merged when appending v creates occurrences.

    The new triples are (i, j, new) over all i < j with pat[i] < v <=
    pat[j]; the participating positions are exactly the below-v entries
    with a later above-v partner and vice versa.
    """
    touched = set()
    seen_below = False
    for q, x in enumerate(pat):
        if x < v:
            seen_below = True
        elif seen_below:
            touched.add(comp[q])
    seen_above = False
    for q in range(len(pat) - 1, -1, -1):
        if pat[q] >= v:
            seen_above = True
        elif seen_above:
            touched.add(comp[q])
    return touched


def _child(pat, cnt, D, comp, v, ncnt) -> _State:
    k = len(pat)
    npat = tuple(x if x < v else x + 1 for x in pat) + (v,)
    # D'[w] = D[w or w-1 across the bump] plus the pairs ending at the
    # new entry, which contribute w-1 whenever w <= v.
    nD = [0] * (k + 3)
    for w in range(1, v + 1):
        nD[w] = D[w] + w - 1
    for w in range(v + 1, k + 3):
        nD[w] = D[w - 1]
    if cnt == ncnt:
        ncomp = comp + (k,)
    else:
        touched = _touched_labels(pat, comp, v)
        ncomp = tuple(k if c in touched else c for c in comp) + (k,)
    return (npat, ncnt, tuple(nD), ncomp)


def _dfs(max_size: int, max_occ: int | None, roots: list[_State]) -> list[tuple[tuple[int, ...], int]]:
    """Collect (pattern, count) for every connected pattern in the subtrees."""
    found = []
    stack = list(roots)
    while stack:
        pat, cnt, D, comp = stack.pop()
        k = len(pat)
        if len(set(comp)) == 1:
            found.append((pat, cnt))
        if k >= max_size:
            continue
        final = k + 1 == max_size
        for v in range(1, k + 2):
            add = D[v]
            ncnt = cnt + add
            if max_occ is not None and ncnt > max_occ:
                continue
            if final:
                # Leaf level: only connectivity matters, and a silent
                # append leaves the new entry isolated.
                if add == 0:
                    continue
                touched = _touched_labels(pat, comp, v)
                if len(touched) == len(set(comp)):
                    npat = tuple(x if x < v else x + 1 for x in pat) + (v,)
                    found.append((npat, ncnt))
            else:
                stack.append(_child(pat, cnt, D, comp, v, ncnt))
    return found


def _frontier(depth: int, max_occ: int | None) -> tuple[list[tuple[tuple[int, ...], int]], list[_State]]:
    """Connected patterns above `depth`, plus all surviving states at it."""
    found = []
    level = [_root_state()]
    for _ in range(1, depth):
        nxt = []
        for pat, cnt, D, comp in level:
            if len(set(comp)) == 1:
                found.append((pat, cnt))
            for v in range(1, len(pat) + 2):
                ncnt = cnt + D[v]
                if max_occ is not None and ncnt > max_occ:
                    continue
                nxt.append(_child(pat, cnt, D, comp, v, ncnt))
        level = nxt
    return found, level


def _dfs_job(args) -> list[tuple[tuple[int, ...], int]]:
    max_size, max_occ, states = args
    return _dfs(max_size, max_occ, states)


def _search(max_size: int, max_occ: int | None, threads: int = 1) -> list[tuple[tuple[int, ...], int]]:
    if threads <= 1 or max_size <= _SPLIT_DEPTH + 1:
        return _dfs(max_size, max_occ, [_root_state()])
    found, frontier = _frontier(_SPLIT_DEPTH, max_occ)
    chunks = [frontier[i :: 4 * threads] for i in range(4 * threads)]
    jobs = [(max_size, max_occ, chunk) for chunk in chunks if chunk]
    with Pool(threads) as pool:
        for part in pool.map(_dfs_job, jobs):
            found.extend(part)
    return found


def iter_kernel_permutations(max_size: int, max_occ: int | None = None, *, threads: int = 1) -> list[Permutation]:
    """All kernel permutations of size <= max_size (optionally capacity-capped),
    sorted by (size, one-line notation)."""
    found = _search(max_size, max_occ, threads)
    return [Permutation(pat) for pat, _ in sorted(found, key=lambda pc: (len(pc[0]), pc[0]))]


def exceptional_shape(r: int) -> Permutation:
    """The unique kernel permutation of capacity r with maximal size 2r+1.

    Built in closed form as 2r-1, 2r+1, 2r-3, 2r, ..., 1, 4, 2 rather
    than searched for; the constructor re-derives size, capacity and the
    feasible cells as a postcondition.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    vals = [2 * r - 1, 2 * r + 1]
    for j in range(r - 1):
        vals += [2 * r - 2 * j - 3, 2 * r - 2 * j]
    vals.append(2)
    rho = Permutation(tuple(vals))
    rec = shape_record(rho)
    expected_cells = {(2 * r - 2 * j + 1, 2 * j + 1) for j in range(r + 1)} | {(1, 2 * r + 2)}
    if (
        rec.size != 2 * r + 1
        or rec.capacity != r
        or set(rec.cells) != expected_cells
        or rec.f != r + 2
    ):
        raise AssertionError(f"maximal shape postcondition failed for r={r}: {rec}")
    return rho


def enumerate_kernel_shapes(r: int, *, threads: int = 1) -> ShapeCatalog:
    """Catalog of every kernel shape with capacity <= r.

    Sizes 1..2r come from the pruned search; the single size-(2r+1)
    shape is constructed directly, which avoids walking S_{2r+1}.
    """
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    max_size = max(2 * r, 1)
    found = _search(max_size, r, threads)
    shapes = [Permutation(pat) for pat, _ in found]
    if r >= 1:
        shapes.append(exceptional_shape(r))
    shapes.sort(key=lambda p: (p.n, p.values))
    records = tuple(shape_record(rho) for rho in shapes)
    return ShapeCatalog(r, records)


def census(catalog: ShapeCatalog) -> Census:
    """Raw per-size and per-capacity shape counts, plus newly usable
    non-maximal shapes per budget.

    A shape first enters the recursion at budget r = capacity; exactly
    one capacity-r shape (the constructed maximal one) lies beyond the
    S_2r search horizon, so the count of new shapes the search itself
    must reveal is #{capacity == r} - 1.
    """
    by_size = Counter(rec.size for rec in catalog.records)
    by_capacity = Counter(rec.capacity for rec in catalog.records)
    new_nonexceptional = {
        r: by_capacity.get(r, 0) - 1 for r in range(2, catalog.max_occ + 1)
    }
    return Census(
        dict(sorted(by_size.items())),
        dict(sorted(by_capacity.items())),
        new_nonexceptional,
    )


def verify_exceptional_uniqueness(r: int, *, threads: int = 1) -> bool:
    """Exhaustively confirm that the only kernel permutation of capacity
    <= r and size 2r+1 is the constructed maximal shape.  Meant for
    small r; the search space is S_{2r+1}."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    found = _search(2 * r + 1, r, threads)
    top = sorted(pat for pat, _ in found if len(pat) == 2 * r + 1)
    return top == [exceptional_shape(r).values]


def catalog_to_text(catalog: ShapeCatalog) -> str:
    """JSON lines: a header, then one record per line, sorted by
    (size, one-line notation)."""
    lines = [json.dumps({"format_version": CATALOG_FORMAT_VERSION, "max_occ": catalog.max_occ})]
    for rec in catalog.records:
        lines.append(
            json.dumps(
                {
                    "shape": list(rec.shape.values),
                    "size": rec.size,
                    "capacity": rec.capacity,
                    "cells": [list(cell) for cell in rec.cells],
                    "lis_ne": list(rec.lis_ne),
                },
                separators=(",", ":"),
            )
        )
    return "\n".join(lines) + "\n"


def save_catalog(catalog: ShapeCatalog, path: str | Path) -> None:
    Path(path).write_text(catalog_to_text(catalog))


def load_catalog(path: str | Path) -> ShapeCatalog:
    """Read a catalog written by :func:`save_catalog`."""
    text = Path(path).read_text().splitlines()
    if not text:
        raise CatalogError(f"{path}: empty catalog file")
    header = json.loads(text[0])
    if header.get("format_version") != CATALOG_FORMAT_VERSION:
        raise CatalogError(f"{path}: unsupported format version {header.get('format_version')!r}")
    records = []
    for line in text[1:]:
        if not line.strip():
            continue
        obj = json.loads(line)
        records.append(
            KernelShapeRecord(
                shape=Permutation(tuple(obj["shape"])),
                size=obj["size"],
                capacity=obj["capacity"],
                cells=tuple((m, l) for m, l in obj["cells"]),
                lis_ne=tuple(obj["lis_ne"]),
            )
        )
    return ShapeCatalog(header["max_occ"], tuple(records))

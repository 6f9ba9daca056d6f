"""Occurrence graph, kernel extraction, cell grid, decompose/assemble.

The occurrence graph of pi joins each entry (a position 1..n) to each
occurrence of 132 it takes part in.  The kernel of pi is the set of
entries in the connected component of the maximal entry n; its shape is
the order-isomorphic reduction of the kernel values.  A permutation rho
is a *kernel permutation* when it is its own kernel shape.

For a kernel permutation rho of size s, the plane splits into an
s x (s+1) grid of open cells: column l (1 <= l <= s+1) sits strictly
between kernel positions i_{l-1} and i_l, and row m (1 <= m <= s) sits
strictly between the (m-1)-th and m-th smallest kernel values, with the
conventions i_0 = 0, i_{s+1} = n+1 and value floor 0.  A cell is
*infeasible* when any entry placed in it would close an occurrence of
132 with two kernel entries; since every kernel entry is strictly
outside the cell's open rectangle, this reduces to a finite check over
ordered pairs of kernel entries, carried out in ``cell_decomposition``.

Feasible cells are totally ordered by the dominance order
(m, l) < (m', l') iff m >= m' and l <= l'.  ``decompose`` sends a
permutation to its shape plus the content pattern of each feasible cell
in that order; ``assemble`` is the inverse construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .perms import (
    Occurrence,
    Permutation,
    count_132,
    lis_length,
    occurrences_132,
    reduce_to_pattern,
)


class CellOrderError(RuntimeError):
    """Two feasible cells were incomparable under the dominance order."""


class DecompositionError(RuntimeError):
    """An entry landed in an infeasible cell, or a non-kernel component
    straddled two cells.  Either signals an implementation bug."""


class GraphComponent(NamedTuple):
    """One connected component: entry positions and occurrence indices."""

    positions: tuple[int, ...]
    occurrence_indices: tuple[int, ...]

    @property
    def t1(self) -> int:
        return len(self.positions)

    @property
    def t3(self) -> int:
        return len(self.occurrence_indices)


@dataclass(frozen=True)
class OccurrenceGraph:
    """Bipartite graph of entries (positions 1..n) versus occurrences."""

    n: int
    occurrences: tuple[Occurrence, ...]

    @property
    def entry_vertices(self) -> range:
        return range(1, self.n + 1)

    def edges(self) -> list[tuple[int, int]]:
        """(position, occurrence index) pairs; every occurrence has degree 3."""
        return [(p, t) for t, occ in enumerate(self.occurrences) for p in occ]

    def components(self) -> list[GraphComponent]:
        """Connected components, sorted by smallest position."""
        parent = list(range(self.n + 1))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for occ in self.occurrences:
            ra = find(occ.i)
            for b in (occ.j, occ.k):
                rb = find(b)
                if ra != rb:
                    parent[rb] = ra
        by_root: dict[int, list[int]] = {}
        for p in range(1, self.n + 1):
            by_root.setdefault(find(p), []).append(p)
        occs_by_root: dict[int, list[int]] = {}
        for t, occ in enumerate(self.occurrences):
            occs_by_root.setdefault(find(occ.i), []).append(t)
        return [
            GraphComponent(tuple(positions), tuple(occs_by_root.get(root, ())))
            for root, positions in sorted(by_root.items(), key=lambda kv: kv[1][0])
        ]


@dataclass(frozen=True)
class Kernel:
    """Kernel of a permutation: the component of the maximal entry."""

    positions: tuple[int, ...]
    values: tuple[int, ...]
    shape: Permutation
    size: int
    capacity: int


@dataclass(frozen=True)
class CellDecomposition:
    """Feasibility grid of the s x (s+1) cells of a kernel permutation."""

    shape: Permutation
    feasible: frozenset[tuple[int, int]]

    def is_feasible(self, m: int, l: int) -> bool:
        return (m, l) in self.feasible


@dataclass(frozen=True)
class KernelShapeRecord:
    """A catalogued kernel shape with everything the solver needs."""

    shape: Permutation
    size: int
    capacity: int
    cells: tuple[tuple[int, int], ...]  # feasible cells in dominance order
    lis_ne: tuple[int, ...]  # per cell: longest increasing run to its northeast

    @property
    def f(self) -> int:
        return len(self.cells)


def build_occurrence_graph(pi: Permutation) -> OccurrenceGraph:
    return OccurrenceGraph(pi.n, tuple(occurrences_132(pi)))


def _kernel_from_graph(pi: Permutation, graph: OccurrenceGraph) -> tuple[Kernel, GraphComponent]:
    pos_of_max = pi.values.index(pi.n) + 1
    components = graph.components()
    for comp in components:
        if pos_of_max in comp.positions:
            break
    else:  # unreachable: every position is in some component
        raise AssertionError("maximal entry not found in any component")
    values = tuple(pi(p) for p in comp.positions)
    shape = reduce_to_pattern(values)
    kernel = Kernel(comp.positions, values, shape, len(values), count_132(shape))
    return kernel, comp


def kernel_of(pi: Permutation) -> Kernel:
    """Kernel of a nonempty permutation.

    For pi = 57614283 the kernel values are (1, 4, 2, 8, 3) at positions
    (4, 5, 6, 7, 8); shape 14253, size 5, capacity 4.
    """
    if pi.n < 1:
        raise ValueError("the empty permutation has no kernel")
    kernel, _ = _kernel_from_graph(pi, build_occurrence_graph(pi))
    return kernel


def is_kernel_permutation(rho: Permutation) -> bool:
    """True iff rho is its own kernel shape."""
    if rho.n == 0:
        return False
    if rho.n == 1:
        return True
    return _spans_all_positions(rho.values)


@lru_cache(maxsize=None)
def _spans_all_positions(values: tuple[int, ...]) -> bool:
    """Does the component of the maximal entry cover every position?"""
    kernel = kernel_of(Permutation(values))
    return kernel.size == len(values)


def _cell_is_feasible(ranks: Sequence[int], m: int, l: int) -> bool:
    """Decide feasibility of cell (m, l) for the kernel permutation `ranks`.

    A hypothetical entry z in the open rectangle of the cell compares
    the same way with every kernel entry regardless of where exactly it
    sits, so z closes an occurrence of 132 with two kernel entries x, y
    iff one of three configurations exists (1-based entry index a or b,
    rank ranks[a-1]):

    - z opens:   a < b, both >= l, ranks(a) > ranks(b) >= m
    - z on top:  a <= l-1 < l <= b, ranks(a) < ranks(b) <= m-1
    - z closes:  a < b <= l-1, ranks(a) < m <= ranks(b)
    """
    s = len(ranks)
    # z opens: an inversion in the suffix whose lower value clears the row.
    hi = 0
    for idx in range(l - 1, s):
        r = ranks[idx]
        if hi > r >= m:
            return False
        if r > hi:
            hi = r
    # z on top: a rise across the column boundary staying below the row.
    if l > 1:
        left_min = min(ranks[: l - 1])
        for idx in range(l - 1, s):
            if left_min < ranks[idx] <= m - 1:
                return False
        # z closes: a rise within the prefix spanning the row boundary.
        lo = ranks[0]
        for idx in range(1, l - 1):
            r = ranks[idx]
            if r >= m > lo:
                return False
            if r < lo:
                lo = r
    return True


@lru_cache(maxsize=None)
def _feasible_cells(values: tuple[int, ...]) -> frozenset[tuple[int, int]]:
    s = len(values)
    return frozenset(
        (m, l)
        for m in range(1, s + 1)
        for l in range(1, s + 2)
        if _cell_is_feasible(values, m, l)
    )


def cell_decomposition(rho: Permutation) -> CellDecomposition:
    """Feasibility grid for a kernel permutation.

    For rho = 1423 exactly C_41, C_13, C_14 and C_15 are feasible.
    """
    if not is_kernel_permutation(rho):
        raise ValueError(f"not a kernel permutation: {rho}")
    return CellDecomposition(rho, _feasible_cells(rho.values))


def southwest_dominated_cells(rho: Permutation) -> frozenset[tuple[int, int]]:
    """Cells with some kernel entry strictly to their southwest.

    This one-sided criterion implies infeasibility; it is kept as a
    cross-check on the pairwise procedure and is not used to build the
    grid.
    """
    s = rho.n
    out = set()
    for k in range(1, s + 1):
        rk = rho(k)
        for m in range(rk + 1, s + 1):
            for l in range(k + 1, s + 2):
                out.add((m, l))
    return frozenset(out)


def order_feasible_cells(dec: CellDecomposition) -> tuple[tuple[int, int], ...]:
    """Feasible cells sorted by dominance (m, l) with m >= m', l <= l'.

    Raises :class:`CellOrderError` if two feasible cells are
    incomparable, which would contradict the grid construction.
    """
    cells = sorted(dec.feasible, key=lambda ml: (ml[1], -ml[0]))
    for (m1, l1), (m2, l2) in zip(cells, cells[1:]):
        if not (m1 >= m2 and l1 <= l2):
            raise CellOrderError(
                f"feasible cells of {dec.shape} are not totally ordered: "
                f"C_{m1},{l1} vs C_{m2},{l2}"
            )
    return tuple(cells)


def lis_northeast(rho: Permutation) -> list[int]:
    """Per feasible cell (in dominance order), the length of the longest
    increasing subsequence of rho weakly to its northeast.

    Entry index k is northeast of cell (m, l) when k >= l and
    rho(k) >= m.  For rho = 1423 this gives [1, 2, 1, 0].
    """
    dec = cell_decomposition(rho)
    cells = order_feasible_cells(dec)
    out = []
    for m, l in cells:
        northeast = [rho(k) for k in range(l, rho.n + 1) if rho(k) >= m]
        out.append(lis_length(northeast))
    return out


def shape_record(rho: Permutation) -> KernelShapeRecord:
    """Full catalog record of a kernel permutation."""
    dec = cell_decomposition(rho)
    cells = order_feasible_cells(dec)
    return KernelShapeRecord(
        shape=rho,
        size=rho.n,
        capacity=count_132(rho),
        cells=cells,
        lis_ne=tuple(lis_northeast(rho)),
    )


def _place_entries(
    pi: Permutation, kernel: Kernel
) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """Assign each non-kernel entry of pi to its grid cell.

    Returns cell -> [(position, value), ...] in position order.  Cells
    are keyed (m, l) against the kernel's position and sorted-value
    boundaries; every non-kernel entry lands in exactly one open cell.
    """
    kpos = kernel.positions
    kvals = sorted(kernel.values)
    kset = set(kpos)
    placed: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for pos in range(1, pi.n + 1):
        if pos in kset:
            continue
        val = pi(pos)
        l = sum(1 for p in kpos if p < pos) + 1
        m = sum(1 for v in kvals if v < val) + 1
        placed.setdefault((m, l), []).append((pos, val))
    return placed


def decompose(pi: Permutation) -> tuple[Permutation, tuple[Permutation, ...]]:
    """Kernel shape of pi plus the content pattern of each feasible cell.

    Contents are reported in dominance order of the cells.  Raises
    :class:`DecompositionError` if an entry falls in an infeasible cell
    or a non-kernel component does not sit inside a single cell.
    """
    if pi.n < 1:
        raise ValueError("cannot decompose the empty permutation")
    graph = build_occurrence_graph(pi)
    kernel, kernel_comp = _kernel_from_graph(pi, graph)
    dec = cell_decomposition(kernel.shape)
    cells = order_feasible_cells(dec)
    placed = _place_entries(pi, kernel)

    for cell, entries in placed.items():
        if cell not in dec.feasible:
            raise DecompositionError(
                f"entries {entries} of {pi} fell in infeasible cell {cell}"
            )
    cell_of_pos = {pos: cell for cell, entries in placed.items() for pos, _ in entries}
    for comp in graph.components():
        if comp.positions == kernel_comp.positions:
            continue
        comp_cells = {cell_of_pos[p] for p in comp.positions}
        if len(comp_cells) != 1:
            raise DecompositionError(
                f"component {comp.positions} of {pi} straddles cells {sorted(comp_cells)}"
            )
    contents = tuple(
        reduce_to_pattern([val for _, val in placed.get(cell, [])]) for cell in cells
    )
    return kernel.shape, contents


def assemble(rho: Permutation, contents: Sequence[Permutation]) -> Permutation:
    """The unique permutation with kernel shape rho whose cell contents
    are order-isomorphic to `contents` (one per feasible cell, in
    dominance order).

    Within a row, cells further left receive strictly larger value
    blocks; within a column, cells further up receive strictly earlier
    position blocks.  These allocations are forced by the grid, so the
    construction is canonical and inverts :func:`decompose`.
    """
    dec = cell_decomposition(rho)
    cells = order_feasible_cells(dec)
    if len(contents) != len(cells):
        raise ValueError(f"expected {len(cells)} cell contents, got {len(contents)}")
    s = rho.n
    size_of = dict(zip(cells, (alpha.n for alpha in contents)))

    row_total = [0] * (s + 2)
    col_total = [0] * (s + 3)
    for (m, l), size in size_of.items():
        row_total[m] += size
        col_total[l] += size
    n = s + sum(size_of.values())

    # Kernel coordinates after making room for the cell blocks.
    val_of_rank = [0] * (s + 1)
    acc = 0
    for m in range(1, s + 1):
        acc += row_total[m]
        val_of_rank[m] = acc + m
    pos_of_index = [0] * (s + 1)
    acc = 0
    for k in range(1, s + 1):
        acc += col_total[k]
        pos_of_index[k] = acc + k

    # Value blocks: within a row, leftmost cell takes the top of the band.
    value_block: dict[tuple[int, int], range] = {}
    for m in range(1, s + 1):
        top = val_of_rank[m] - 1
        for cell in sorted((c for c in cells if c[0] == m), key=lambda c: c[1]):
            size = size_of[cell]
            value_block[cell] = range(top - size + 1, top + 1)
            top -= size

    # Position blocks: within a column, highest cell sits leftmost.
    position_block: dict[tuple[int, int], range] = {}
    for l in range(1, s + 2):
        left = pos_of_index[l - 1] if l > 1 else 0
        for cell in sorted((c for c in cells if c[1] == l), key=lambda c: -c[0]):
            size = size_of[cell]
            position_block[cell] = range(left + 1, left + size + 1)
            left += size

    result = [0] * (n + 1)
    for k in range(1, s + 1):
        result[pos_of_index[k]] = val_of_rank[rho(k)]
    for cell, alpha in zip(cells, contents):
        positions = position_block[cell]
        values = value_block[cell]
        for t, pos in enumerate(positions, start=1):
            result[pos] = values[alpha(t) - 1]
    return Permutation(tuple(result[1:]))

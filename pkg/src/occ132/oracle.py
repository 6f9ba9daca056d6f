"""Brute-force ground truth over whole symmetric groups.

One sweep of S_n records, for every permutation, its number of 132
occurrences together with the length of its longest increasing
subsequence.  Everything else (plain distributions, restricted counts)
is a marginal of that joint table, so each n is enumerated at most once
per process.

Sweeps are partitioned by the leading entry, which makes them trivially
data-parallel; partial tables merge by addition, so results do not
depend on the number of workers.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from multiprocessing import Pool

from .perms import Permutation, count_132_values, lis_length, occurrences_132

DEFAULT_GUARD = 10

# Every 100th permutation (by lexicographic index) is re-counted with the
# cubic listing scan as a cross-check on the quadratic counter.
SPOT_CHECK_STRIDE = 100


class OracleError(RuntimeError):
    """A sweep guard was violated or a spot-check disagreed."""


@dataclass(frozen=True)
class DistributionTable:
    """Occurrence-count distribution over S_n: counts[r] permutations have r."""

    n: int
    counts: dict[int, int]

    def total(self) -> int:
        return sum(self.counts.values())


def _check_guard(n: int, guard: int) -> None:
    if n < 0:
        raise OracleError(f"n must be nonnegative, got {n}")
    if n > guard:
        raise OracleError(f"n={n} exceeds the sweep guard {guard}; raise `guard` to override")


def _sweep_class(n: int, first: int, start_index: int) -> Counter:
    """Joint (occurrences, lis) table over permutations of S_n starting with `first`."""
    table: Counter = Counter()
    rest = [v for v in range(1, n + 1) if v != first]
    index = start_index
    for tail in permutations(rest):
        values = (first, *tail)
        r = count_132_values(values)
        if index % SPOT_CHECK_STRIDE == 0:
            listed = len(occurrences_132(Permutation(values)))
            if listed != r:
                raise OracleError(f"counter disagrees with listing on {values}: {r} vs {listed}")
        table[(r, lis_length(values))] += 1
        index += 1
    return table


def _sweep_class_args(args) -> Counter:
    return _sweep_class(*args)

_joint_cache: dict[int, dict[tuple[int, int], int]] = {}


def joint_table(n: int, *, guard: int = DEFAULT_GUARD, threads: int = 1) -> dict[tuple[int, int], int]:
    """Map (occurrences, lis length) -> number of permutations in S_n."""
    _check_guard(n, guard)
    if n in _joint_cache:
        return _joint_cache[n]
    if n == 0:
        table = {(0, 0): 1}
    else:
        block = math.factorial(n - 1)
        jobs = [(n, first, (first - 1) * block) for first in range(1, n + 1)]
        if threads > 1:
            with Pool(threads) as pool:
                parts = pool.map(_sweep_class_args, jobs)
        else:
            parts = [_sweep_class(*job) for job in jobs]
        merged: Counter = Counter()
        for part in parts:
            merged.update(part)
        table = dict(sorted(merged.items()))
    _joint_cache[n] = table
    return table


def distribution(n: int, *, guard: int = DEFAULT_GUARD, threads: int = 1) -> DistributionTable:
    """Full occurrence-count distribution of S_n.

    distribution(4) is {0: 14, 1: 5, 2: 4, 3: 1}; the row always sums
    to n!.
    """
    joint = joint_table(n, guard=guard, threads=threads)
    counts: Counter = Counter()
    for (r, _), c in joint.items():
        counts[r] += c
    return DistributionTable(n, dict(sorted(counts.items())))


def count_exact(n: int, r: int, *, guard: int = DEFAULT_GUARD, threads: int = 1) -> int:
    """Number of permutations in S_n with exactly r occurrences of 132."""
    return distribution(n, guard=guard, threads=threads).counts.get(r, 0)


def count_exact_restricted(
    n: int, r: int, k: int, *, guard: int = DEFAULT_GUARD, threads: int = 1
) -> int:
    """Permutations in S_n with exactly r occurrences of 132 avoiding 12...k."""
    if k < 1:
        raise OracleError(f"k must be >= 1, got {k}")
    joint = joint_table(n, guard=guard, threads=threads)
    return sum(c for (occ, lis), c in joint.items() if occ == r and lis < k)

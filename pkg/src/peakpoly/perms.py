"""Permutations in one-line notation and their peak sets.

A permutation of length n is a tuple listing each of 1..n exactly once.
An interior index i (1-based, 2 <= i <= n-1) is a peak when the entry
there exceeds both neighbours.  Peak sets are canonical tuples of
strictly increasing positions; the empty tuple is a valid peak set.

The exhaustive enumeration in this module is the ground-truth oracle for
everything else in the package.  It scans all n! permutations, so it
refuses to run above a configurable cap instead of grinding for hours.
"""

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

Permutation = tuple[int, ...]
PeakSet = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 10


class InadmissibleSetError(ValueError):
    """An operation needed an admissible peak set and did not get one."""


class EnumerationCapError(RuntimeError):
    """An exhaustive scan of S_n was requested above the configured cap."""


def is_permutation(entries: Sequence[int]) -> bool:
    """True iff entries lists each of 1..len(entries) exactly once."""
    n = len(entries)
    return n >= 1 and sorted(entries) == list(range(1, n + 1))


def as_permutation(entries: Iterable[int]) -> Permutation:
    perm = tuple(entries)
    if not is_permutation(perm):
        raise ValueError(f"not a permutation in one-line notation: {perm!r}")
    return perm


def as_peak_set(positions: Iterable[int]) -> PeakSet:
    """Canonicalize positions into a peak set tuple.

    Positions must be integers >= 1 in strictly increasing order;
    duplicates and out-of-order input are rejected rather than sorted.
    """
    pos = tuple(positions)
    for v in pos:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"peak positions must be integers, got {v!r}")
        if v < 1:
            raise ValueError(f"peak positions must be >= 1, got {v}")
    for a, b in zip(pos, pos[1:]):
        if a >= b:
            raise ValueError(f"peak positions must be strictly increasing, got {pos}")
    return pos


def peak_set(perm: Iterable[int]) -> PeakSet:
    """The 1-based positions where the permutation rises then falls.

    >>> peak_set((2, 5, 1, 4, 3))
    (2, 4)
    >>> peak_set((1, 2, 3, 4, 5))
    ()
    """
    p = as_permutation(perm)
    return tuple(i for i in range(2, len(p)) if p[i - 2] < p[i - 1] > p[i])


def structural_violation(positions: Iterable[int]) -> str | None:
    """Why no permutation of any length has this peak set, or None.

    Two structural rules make a nonempty set hopeless regardless of n:
    position 1 has no left neighbour, and adjacent positions cannot both
    be peaks.
    """
    s = as_peak_set(positions)
    if not s:
        return None
    if s[0] == 1:
        return "position 1 can never be a peak (it has no left neighbour)"
    for a, b in zip(s, s[1:]):
        if b == a + 1:
            return f"adjacent positions {a} and {b} cannot both be peaks"
    return None


def is_structurally_admissible(positions: Iterable[int]) -> bool:
    """True iff some permutation of some length has exactly this peak set."""
    return structural_violation(positions) is None


def is_admissible(positions: Iterable[int], n: int) -> bool:
    """True iff some permutation of length n has exactly this peak set.

    The structural test plus max(S) <= n - 1.  The tests validate this
    criterion against the exhaustive oracle for every subset of [n] at
    small n; monotonicity in n then extends trust upward.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    s = as_peak_set(positions)
    if not s:
        return True
    return is_structurally_admissible(s) and s[-1] <= n - 1


def ensure_within_cap(n: int, max_n: int = DEFAULT_ENUMERATION_CAP) -> None:
    """Refuse exhaustive work on S_n above the cap instead of running for hours."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise EnumerationCapError(
            f"refusing to scan all {n}! permutations: n={n} exceeds the cap of {max_n};"
            " raise the cap explicitly if you really want this"
        )


@lru_cache(maxsize=8)
def _peak_set_counts(n: int) -> dict[PeakSet, int]:
    counts: dict[PeakSet, int] = {}
    for perm in itertools.permutations(range(1, n + 1)):
        key = tuple([i for i in range(2, n) if perm[i - 2] < perm[i - 1] > perm[i]])
        counts[key] = counts.get(key, 0) + 1
    return counts


def enumerate_by_peak_set(n: int, max_n: int = DEFAULT_ENUMERATION_CAP) -> dict[PeakSet, int]:
    """Group all of S_n by peak set: peak set -> number of permutations.

    Values sum to n!; only peak sets that actually occur appear as keys.
    Permutations are visited in lexicographic order, so the grouping is
    deterministic.
    """
    ensure_within_cap(n, max_n)
    return dict(_peak_set_counts(n))


def count_bruteforce(positions: Iterable[int], n: int,
                     max_n: int = DEFAULT_ENUMERATION_CAP) -> int:
    """|{pi in S_n : peak_set(pi) == positions}| by exhaustive scan."""
    s = as_peak_set(positions)
    ensure_within_cap(n, max_n)
    return _peak_set_counts(n).get(s, 0)


def group_permutations_by_peak_set(n: int, wanted: Iterable[Iterable[int]],
                                   max_n: int = DEFAULT_ENUMERATION_CAP,
                                   ) -> dict[PeakSet, list[Permutation]]:
    """Collect, in one scan of S_n, the permutations with any wanted peak set.

    Every wanted key maps to a list (possibly empty) in lexicographic order.
    """
    keys = {as_peak_set(w) for w in wanted}
    ensure_within_cap(n, max_n)
    groups: dict[PeakSet, list[Permutation]] = {k: [] for k in keys}
    for perm in itertools.permutations(range(1, n + 1)):
        key = tuple([i for i in range(2, n) if perm[i - 2] < perm[i - 1] > perm[i]])
        if key in groups:
            groups[key].append(perm)
    return groups


def permutations_with_peak_set(positions: Iterable[int], n: int,
                               max_n: int = DEFAULT_ENUMERATION_CAP) -> list[Permutation]:
    """All length-n permutations with exactly this peak set, lexicographic."""
    s = as_peak_set(positions)
    return group_permutations_by_peak_set(n, (s,), max_n=max_n)[s]


def _sparse_subsets(lo: int, hi: int):
    """Subsets of {lo..hi} with no two consecutive members, lexicographically."""
    yield ()
    for first in range(lo, hi + 1):
        for rest in _sparse_subsets(first + 2, hi):
            yield (first,) + rest


def structurally_admissible_sets(max_position: int) -> list[PeakSet]:
    """Every nonempty structurally admissible peak set with max <= max_position.

    Ordered by (max position, lexicographic positions), which is the fixed
    report order used by the sweep machinery.
    """
    out: list[PeakSet] = []
    for m in range(2, max_position + 1):
        block = [rest + (m,) for rest in _sparse_subsets(2, m - 2)]
        out.extend(sorted(block))
    return out

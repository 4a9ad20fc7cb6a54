"""Peak polynomials and permutation counts by peak set.

For an admissible peak set S the number of length-n permutations whose
peak set is exactly S factors as

    count(S, n) = p_S(n) * 2^(n - |S| - 1)

where p_S is an integer-valued polynomial of degree max(S) - 1, the peak
polynomial of S.  This module builds p_S exactly, in the binomial basis
centred at max(S), by a recursion on derived sets:

  * lowering or omitting one element of S yields 2|S| smaller sets whose
    peak polynomials sum to the first difference of p_S;
  * p_S(max(S)) = 0 anchors the antidifference that recovers p_S itself.

Counts are then available three independent ways: the closed formula
above, a one-step recursion on n, and the exhaustive oracle, so each
route can cross-check the others.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from peakpoly.intpoly import BinomialPolynomial, sum_polynomials
from peakpoly.perms import (
    DEFAULT_ENUMERATION_CAP,
    InadmissibleSetError,
    PeakSet,
    Permutation,
    as_peak_set,
    group_permutations_by_peak_set,
    is_admissible,
    is_structurally_admissible,
    structural_violation,
)

_CONSTANT_ONE = BinomialPolynomial(0, (1,))


@dataclass(frozen=True)
class DerivedPair:
    """The two sets obtained from a peak set at one chosen element.

    lowered: the chosen element and everything above it slide down by one.
    omitted: the chosen element is dropped and everything above it slides
    down by one.  `lowered` may fail structural admissibility (the slide
    can create an adjacent pair); `omitted` never does.
    """

    pivot: int
    lowered: PeakSet
    lowered_admissible: bool
    omitted: PeakSet


def derived_sets(positions: Iterable[int]) -> tuple[DerivedPair, ...]:
    """All |S| derived (lowered, omitted) pairs of a peak set, in position order.

    Requires a nonempty, structurally admissible set: with an adjacent pair
    present the slide would collide two elements, and with 1 present the
    lowered set would need the impossible position 0.
    """
    s = as_peak_set(positions)
    if not s:
        raise ValueError("derived sets are defined only for nonempty peak sets")
    reason = structural_violation(s)
    if reason is not None:
        raise InadmissibleSetError(reason)
    pairs = []
    for idx, pivot in enumerate(s):
        kept = s[:idx]
        slid = tuple(v - 1 for v in s[idx:])
        lowered = kept + slid
        omitted = kept + slid[1:]
        pairs.append(DerivedPair(pivot, lowered,
                                 is_structurally_admissible(lowered), omitted))
    return tuple(pairs)


class PolynomialCache:
    """Memo table from canonical peak set to its peak polynomial.

    Unbounded by default; with max_entries set the table stops admitting
    new entries once full (lookups stay correct, later sets are recomputed
    on demand).  Reads and writes are single dict operations, so concurrent
    use from threads behaves as a linearizable pure-function table; at
    worst two threads compute the same entry, which is harmless.
    """

    def __init__(self, max_entries: int | None = None):
        if max_entries is not None and max_entries < 0:
            raise ValueError("max_entries must be None or >= 0")
        self._max_entries = max_entries
        self._table: dict[PeakSet, BinomialPolynomial] = {}

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, key) -> bool:
        return as_peak_set(key) in self._table

    def get(self, key) -> BinomialPolynomial | None:
        return self._table.get(as_peak_set(key))

    def put(self, key, poly: BinomialPolynomial) -> None:
        key = as_peak_set(key)
        if (self._max_entries is None or key in self._table
                or len(self._table) < self._max_entries):
            self._table[key] = poly

    def clear(self) -> None:
        self._table.clear()


_shared_cache = PolynomialCache()


def peak_polynomial(positions: Iterable[int],
                    cache: PolynomialCache | None = _shared_cache,
                    ) -> BinomialPolynomial:
    """The peak polynomial of a structurally admissible (or empty) peak set.

    Returned centred at max(S) with constant coefficient 0; the empty set
    gives the constant 1.  Pass cache=None to disable memoization (the
    result is identical, only slower).
    """
    s = as_peak_set(positions)
    if s:
        reason = structural_violation(s)
        if reason is not None:
            raise InadmissibleSetError(reason)
    return _peak_polynomial(s, cache)


def _peak_polynomial(s: PeakSet, cache: PolynomialCache | None) -> BinomialPolynomial:
    if not s:
        return _CONSTANT_ONE
    if not is_structurally_admissible(s):
        # counts nothing at any length, and keeps the recursion total
        return BinomialPolynomial.zero(s[-1])
    if cache is not None:
        hit = cache.get(s)
        if hit is not None:
            return hit
    m = s[-1]
    pairs = derived_sets(s)
    parts = [_peak_polynomial(pair.lowered, cache) for pair in pairs]
    parts += [_peak_polynomial(pair.omitted, cache) for pair in pairs]
    first_difference = sum_polynomials(parts)
    poly = first_difference.recenter(m).antidifference(m, 0)
    if cache is not None:
        cache.put(s, poly)
    return poly


def count_via_formula(positions: Iterable[int], n: int) -> int:
    """p_S(n) * 2^(n - |S| - 1) when S is n-admissible, else 0."""
    s = as_peak_set(positions)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not is_admissible(s, n):
        return 0
    return peak_polynomial(s).evaluate(n) * 2 ** (n - len(s) - 1)


@lru_cache(maxsize=None)
def _recursive_count(s: PeakSet, q: int) -> int:
    if not s:
        return 2 ** (q - 1)
    if not is_admissible(s, q):
        return 0
    # q - 1 >= max(s) here, so the one-step insertion recursion applies
    prev = q - 1
    total = 2 * _recursive_count(s, prev)
    for pair in derived_sets(s):
        total += 2 * _recursive_count(pair.lowered, prev)
        total += _recursive_count(pair.omitted, prev)
    return total


def count_via_recursion(positions: Iterable[int], n: int) -> int:
    """The same count as count_via_formula, by downward recursion on n.

    Each step trades length n for length n-1 over the derived sets;
    inadmissibility at the current length is the base case.  Results are
    memoized process-wide (the memo is a pure function table).
    """
    s = as_peak_set(positions)
    if n < 1:
        raise ValueError("n must be >= 1")
    return _recursive_count(s, n)


INSERTION_CASE_LABELS = ("1", "2", "3", "4.1", "4.2", "5")


def insertion_cases(positions: Iterable[int], q: int,
                    max_n: int = DEFAULT_ENUMERATION_CAP,
                    ) -> dict[str, list[Permutation]]:
    """Build every length-(q+1) permutation with peak set S by insertion.

    Sources are drawn exhaustively from S_q and the value q+1 is inserted
    where each case dictates (positions are 1-based; i_1 < ... < i_s are
    the elements of S):

      "1":   source has peak set S; q+1 appended after the last entry
      "2":   source has peak set S; q+1 inserted at position i_s
      "3":   source has the set lowered at element l; q+1 at position i_l
      "4.1": source lowered at element l >= 2; q+1 at position i_(l-1)
      "4.2": source lowered at the first element; q+1 prepended
      "5":   source has the set omitted at element l; q+1 at position i_l

    The six lists are pairwise disjoint and their union is exactly the set
    of length-(q+1) permutations with peak set S; each list is sorted
    lexicographically so output is deterministic.
    """
    s = as_peak_set(positions)
    if not s:
        raise ValueError("insertion cases are defined only for nonempty peak sets")
    reason = structural_violation(s)
    if reason is not None:
        raise InadmissibleSetError(reason)
    if q < s[-1]:
        raise ValueError(f"q must be at least max(S) = {s[-1]}, got {q}")

    pairs = derived_sets(s)
    wanted = {s}
    wanted.update(pair.lowered for pair in pairs)
    wanted.update(pair.omitted for pair in pairs)
    groups = group_permutations_by_peak_set(q, wanted, max_n=max_n)

    def insert(perm: Permutation, index0: int) -> Permutation:
        return perm[:index0] + (q + 1,) + perm[index0:]

    base = groups[s]
    case1 = [perm + (q + 1,) for perm in base]
    case2 = [insert(perm, s[-1] - 1) for perm in base]
    case3: list[Permutation] = []
    case41: list[Permutation] = []
    case42: list[Permutation] = []
    case5: list[Permutation] = []
    for idx, pair in enumerate(pairs):
        for perm in groups[pair.lowered]:
            case3.append(insert(perm, pair.pivot - 1))
            if idx == 0:
                case42.append((q + 1,) + perm)
            else:
                case41.append(insert(perm, s[idx - 1] - 1))
        for perm in groups[pair.omitted]:
            case5.append(insert(perm, pair.pivot - 1))

    return {
        "1": sorted(case1),
        "2": sorted(case2),
        "3": sorted(case3),
        "4.1": sorted(case41),
        "4.2": sorted(case42),
        "5": sorted(case5),
    }

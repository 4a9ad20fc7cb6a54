import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from peakpoly.perms import (
    EnumerationCapError,
    as_peak_set,
    count_bruteforce,
    enumerate_by_peak_set,
    group_permutations_by_peak_set,
    is_admissible,
    is_permutation,
    is_structurally_admissible,
    peak_set,
    permutations_with_peak_set,
    structural_violation,
    structurally_admissible_sets,
)


def test_peak_set_examples():
    assert peak_set((1, 3, 2)) == (2,)
    assert peak_set((1, 2, 3, 4, 5)) == ()
    assert peak_set((2, 5, 1, 4, 3)) == (2, 4)


def test_peak_set_short_permutations_have_no_peaks():
    assert peak_set((1,)) == ()
    assert peak_set((2, 1)) == ()


def test_peak_set_rejects_non_permutations():
    for bad in ((), (0, 1), (1, 1), (2, 3), (1, 2, 4)):
        with pytest.raises(ValueError):
            peak_set(bad)
    assert not is_permutation(())
    assert is_permutation((1,))


def test_as_peak_set_validation():
    assert as_peak_set([2, 4, 7]) == (2, 4, 7)
    assert as_peak_set([]) == ()
    with pytest.raises(ValueError):
        as_peak_set([0])
    with pytest.raises(ValueError):
        as_peak_set([3, 2])
    with pytest.raises(ValueError):
        as_peak_set([2, 2])
    with pytest.raises(ValueError):
        as_peak_set([2.5])


def test_enumerate_s3_grouping():
    # S_3 by hand: 123, 213, 312, 321 are peakless; 132 and 231 peak at 2
    assert enumerate_by_peak_set(3) == {(): 4, (2,): 2}


def test_enumerate_n1():
    assert enumerate_by_peak_set(1) == {(): 1}


@pytest.mark.parametrize("n", range(1, 8))
def test_enumerate_counts_sum_to_factorial(n):
    counts = enumerate_by_peak_set(n)
    assert sum(counts.values()) == math.factorial(n)
    assert all(v > 0 for v in counts.values())


def test_enumerate_keys_are_admissible_sets():
    for n in range(1, 8):
        for key in enumerate_by_peak_set(n):
            assert is_structurally_admissible(key)
            assert not key or key[-1] <= n - 1


def test_count_bruteforce_examples():
    assert count_bruteforce((2,), 3) == 2
    assert permutations_with_peak_set((2,), 3) == [(1, 3, 2), (2, 3, 1)]
    assert count_bruteforce((1,), 5) == 0
    # 400 = 25 * 2^4; also the exhaustive S_7 scan below
    assert count_bruteforce((4, 6), 7) == 400


def test_admissibility_examples():
    assert is_admissible((3, 5, 8), 9)
    assert not is_admissible((3, 4, 7), 8)
    for n in (1, 2, 5, 30):
        assert not is_admissible((1,), n)
    assert not is_admissible((2, 3), 6)
    for n in (1, 2, 9):
        assert is_admissible((), n)


def test_structural_violation_messages():
    assert structural_violation((2, 4)) is None
    assert "position 1" in structural_violation((1, 3))
    assert "adjacent" in structural_violation((2, 3))


@pytest.mark.parametrize("n", range(1, 9))
def test_admissibility_criterion_matches_bruteforce(n):
    # every subset of [n], not only well-formed peak sets with small max
    counts = enumerate_by_peak_set(n)
    elements = range(1, n + 1)
    for size in range(0, n + 1):
        for subset in itertools.combinations(elements, size):
            assert is_admissible(subset, n) == (counts.get(subset, 0) > 0)


@given(st.permutations(list(range(1, 9))))
def test_peaks_are_interior_and_nonadjacent(perm):
    peaks = peak_set(tuple(perm))
    n = len(perm)
    assert all(2 <= i <= n - 1 for i in peaks)
    assert all(b - a >= 2 for a, b in zip(peaks, peaks[1:]))


@given(st.sets(st.integers(min_value=1, max_value=12), max_size=5),
       st.integers(min_value=1, max_value=14), st.integers(min_value=0, max_value=6))
def test_admissibility_is_monotone_in_n(raw, n, extra):
    s = tuple(sorted(raw))
    if is_admissible(s, n):
        assert is_admissible(s, n + extra)


def test_enumeration_cap_is_enforced():
    with pytest.raises(EnumerationCapError):
        enumerate_by_peak_set(11)
    with pytest.raises(EnumerationCapError):
        count_bruteforce((2,), 6, max_n=5)
    with pytest.raises(EnumerationCapError):
        permutations_with_peak_set((2,), 6, max_n=5)
    # explicit override raises the limit
    assert sum(enumerate_by_peak_set(4, max_n=4).values()) == 24


def test_group_scan_collects_only_wanted_sets():
    groups = group_permutations_by_peak_set(4, [(2,), (3,), (2, 4)])
    assert sorted(groups) == [(2,), (2, 4), (3,)]
    assert groups[(2, 4)] == []  # needs length >= 5
    assert len(groups[(2,)]) == count_bruteforce((2,), 4)
    for perms in groups.values():
        assert perms == sorted(perms)


def test_structurally_admissible_sets_up_to_6():
    assert structurally_admissible_sets(6) == [
        (2,), (3,), (2, 4), (4,), (2, 5), (3, 5), (5,),
        (2, 4, 6), (2, 6), (3, 6), (4, 6), (6,),
    ]


def test_structurally_admissible_sets_ordering_and_count():
    sets = structurally_admissible_sets(10)
    keys = [(s[-1], s) for s in sets]
    assert keys == sorted(keys)
    assert len(set(sets)) == len(sets)
    # sets with max <= m are counted by a Fibonacci-style recurrence;
    # cross-check against direct filtering of all subsets of {2..10}
    expected = 0
    for size in range(1, 6):
        for subset in itertools.combinations(range(2, 11), size):
            if all(b - a >= 2 for a, b in zip(subset, subset[1:])):
                expected += 1
    assert len(sets) == expected

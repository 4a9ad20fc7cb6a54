"""Positivity, log-concavity and counting cross-checks, single-set or in bulk.

Every check runs in exact integer arithmetic and produces a
VerificationReport carrying the coefficient sequence (D^j p_S)(m) for
j = 0..m with m = max(S), plus one record per named check.  A failed check
records a witness that can be re-evaluated standalone to reproduce the
violation; none of the bundled checks is expected to fail, so a failure
always signals an implementation bug worth a reduced witness.
"""

import functools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from peakpoly.engine import count_via_formula, count_via_recursion, peak_polynomial
from peakpoly.intpoly import BinomialPolynomial
from peakpoly.perms import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationCapError,
    InadmissibleSetError,
    PeakSet,
    as_peak_set,
    count_bruteforce,
    structural_violation,
    structurally_admissible_sets,
)

SWEEP_CHECKS = ("positivity", "logconcavity")
ALL_CHECKS = ("positivity", "logconcavity", "counts")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check; witness locates the first violation."""

    name: str
    passed: bool
    witness: object = None

    def to_json_dict(self) -> dict:
        witness = self.witness
        if isinstance(witness, tuple):
            witness = list(witness)
        return {"name": self.name, "passed": self.passed, "witness": witness}


@dataclass(frozen=True)
class VerificationReport:
    """Per-set record of check outcomes and the coefficient sequence at m."""

    positions: PeakSet
    m: int
    checks: tuple[CheckResult, ...]
    coefficients: tuple[int, ...]
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "set": list(self.positions),
            "m": self.m,
            "passed": self.passed,
            "checks": [check.to_json_dict() for check in self.checks],
            "coefficients": [str(c) for c in self.coefficients],
            "notes": self.notes,
        }


def center_coefficients(poly: BinomialPolynomial, m: int) -> tuple[int, ...]:
    """(D^j poly)(m) for j = 0..m.

    For a peak polynomial this is the centre-m coefficient sequence padded
    with the structural zero at j = m.
    """
    coeffs = list(poly.recenter(m).coeffs)
    coeffs += [0] * (m + 1 - len(coeffs))
    return tuple(coeffs[:m + 1])


def _require_admissible_nonempty(positions: Iterable[int]) -> PeakSet:
    s = as_peak_set(positions)
    if not s:
        raise InadmissibleSetError("the empty peak set has no maximum to verify at")
    reason = structural_violation(s)
    if reason is not None:
        raise InadmissibleSetError(reason)
    return s


def _positivity_violation(poly: BinomialPolynomial, m: int,
                          k_max: int) -> tuple[int, int] | None:
    """First (j, k) with (D^j poly)(k) <= 0 over 1 <= j <= m-1, m <= k <= k_max."""
    for j in range(1, m):
        dj = poly.forward_difference(j)
        for k in range(m, k_max + 1):
            if dj.evaluate(k) <= 0:
                return (j, k)
    return None


def verify_positivity(positions: Iterable[int], k_max: int) -> VerificationReport:
    """Strict positivity of the interior difference coefficients, plus the
    structural facts that pin the polynomial down.

    Checks, for m = max(S): (D^j p_S)(k) > 0 for 1 <= j <= m-1 and
    m <= k <= k_max; the m-th difference is identically zero; p_S(m) = 0;
    and deg p_S = m - 1.
    """
    s = _require_admissible_nonempty(positions)
    m = s[-1]
    if k_max < m:
        raise ValueError(f"k_max must be >= max(S) = {m}, got {k_max}")
    poly = peak_polynomial(s)

    witness = _positivity_violation(poly, m, k_max)

    order_m = poly.forward_difference(m)
    order_m_witness = None
    if not order_m.is_zero:
        # a nonzero polynomial of degree e cannot vanish at e+1 consecutive points
        order_m_witness = next(
            (m, k) for k in range(m, m + order_m.degree + 2)
            if order_m.evaluate(k) != 0)

    value_at_m = poly.evaluate(m)
    degree_ok = poly.degree == m - 1

    checks = (
        CheckResult("positivity", witness is None, witness),
        CheckResult("order-m-difference-zero", order_m.is_zero, order_m_witness),
        CheckResult("zero-at-max", value_at_m == 0,
                     None if value_at_m == 0 else (0, m)),
        CheckResult("degree", degree_ok, None if degree_ok else poly.degree),
    )
    return VerificationReport(s, m, checks, center_coefficients(poly, m),
                              {"k_max": k_max})


def _is_unimodal(seq: tuple[int, ...]) -> bool:
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < len(seq) and seq[i] >= seq[i + 1]:
        i += 1
    return i + 1 >= len(seq)


def verify_log_concavity(positions: Iterable[int]) -> VerificationReport:
    """Non-strict log-concavity of the interior coefficients at the centre.

    Checks c_j^2 >= c_(j-1) * c_(j+1) for 2 <= j <= m-2 over
    c_j = (D^j p_S)(m).  Unimodality of (c_1..c_(m-1)) is reported in the
    notes but never asserted: it is an open question this tool hunts
    counterexamples for, not an assumption.  Indices where the
    log-concavity inequality is tight are reported as well.
    """
    s = _require_admissible_nonempty(positions)
    m = s[-1]
    coeffs = center_coefficients(peak_polynomial(s), m)

    witness = None
    ties = []
    for j in range(2, m - 1):
        lhs = coeffs[j] ** 2
        rhs = coeffs[j - 1] * coeffs[j + 1]
        if lhs < rhs:
            if witness is None:
                witness = j
        elif lhs == rhs:
            ties.append(j)

    notes = {
        "unimodal": _is_unimodal(coeffs[1:m]),
        "log_concavity_ties": ties,
    }
    checks = (CheckResult("logconcavity", witness is None, witness),)
    return VerificationReport(s, m, checks, coeffs, notes)


def verify_counts(positions: Iterable[int], n_max: int,
                  max_n: int = DEFAULT_ENUMERATION_CAP,
                  require_bruteforce: bool = False) -> VerificationReport:
    """Cross-check the three counting routes for each length up to n_max.

    Lengths run from max(S)+1 (from 1 for the empty set) through n_max.
    The exhaustive route joins in only where the length is within the
    enumeration cap, unless require_bruteforce insists, in which case an
    out-of-cap n_max raises instead of silently dropping the third route.
    """
    s = as_peak_set(positions)
    m = s[-1] if s else 0
    start = m + 1 if s else 1
    if require_bruteforce and n_max > max_n:
        raise EnumerationCapError(
            f"brute-force cross-check demanded up to n={n_max} but the cap is {max_n}")

    witness = None
    rows = {}
    for n in range(start, n_max + 1):
        formula = count_via_formula(s, n)
        recursion = count_via_recursion(s, n)
        brute = count_bruteforce(s, n, max_n) if n <= max_n else None
        rows[str(n)] = {
            "formula": str(formula),
            "recursion": str(recursion),
            "bruteforce": None if brute is None else str(brute),
        }
        ok = formula == recursion and (brute is None or brute == formula)
        if not ok and witness is None:
            witness = n

    if s and structural_violation(s) is None:
        coeffs = center_coefficients(peak_polynomial(s), m)
    else:
        coeffs = center_coefficients(BinomialPolynomial.zero() if s else
                                     BinomialPolynomial.constant(1), m)
    checks = (CheckResult("counts", witness is None, witness),)
    return VerificationReport(s, m, checks, coeffs, {"counts": rows})


def verify_set(positions: Iterable[int],
               checks: Iterable[str] = SWEEP_CHECKS,
               *,
               k_extra: int = 5,
               n_max: int | None = None,
               max_n: int = DEFAULT_ENUMERATION_CAP) -> VerificationReport:
    """Run the selected named checks on one set, merged into one report.

    positivity runs with k_max = max(S) + k_extra; counts runs through
    n_max (default: a few lengths above max(S), within the cap).
    """
    names = tuple(checks)
    if not names:
        raise ValueError("no checks selected")
    unknown = [name for name in names if name not in ALL_CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; available: {list(ALL_CHECKS)}")

    s = as_peak_set(positions)
    m = s[-1] if s else 0
    reports = []
    for name in names:
        if name == "positivity":
            reports.append(verify_positivity(s, m + k_extra))
        elif name == "logconcavity":
            reports.append(verify_log_concavity(s))
        else:
            stop = n_max if n_max is not None else max(m + 1, min(m + 3, max_n))
            reports.append(verify_counts(s, stop, max_n=max_n))

    merged = tuple(check for report in reports for check in report.checks)
    notes: dict = {}
    for report in reports:
        notes.update(report.notes)
    return VerificationReport(s, m, merged, reports[0].coefficients, notes)


@dataclass(frozen=True)
class SweepSummary:
    """Aggregate of one verification sweep.

    elapsed_seconds is informational; everything else is deterministic for
    a given (m_max, checks), independent of the worker count.
    """

    m_max: int
    checks: tuple[str, ...]
    sets_checked: int
    failures: tuple[VerificationReport, ...]
    elapsed_seconds: float

    def to_json_dict(self) -> dict:
        return {
            "m_max": self.m_max,
            "checks": list(self.checks),
            "sets_checked": self.sets_checked,
            "failures": [report.to_json_dict() for report in self.failures],
            "elapsed_seconds": self.elapsed_seconds,
        }


def _sweep_one(positions: PeakSet, checks: tuple[str, ...],
               k_extra: int) -> VerificationReport:
    return verify_set(positions, checks, k_extra=k_extra)


def sweep(m_max: int, checks: Iterable[str] = SWEEP_CHECKS,
          workers: int = 1, k_extra: int = 5) -> SweepSummary:
    """Verify every structurally admissible nonempty peak set with
    max(S) <= m_max.

    Reports keep the fixed (max, lexicographic) set order, so the merge is
    deterministic however many workers run; workers each own a private
    polynomial cache, which cannot change any result.
    """
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    names = tuple(checks)
    unknown = [name for name in names if name not in SWEEP_CHECKS]
    if not names or unknown:
        raise ValueError(f"sweep checks must be a nonempty subset of {list(SWEEP_CHECKS)}")

    sets = structurally_admissible_sets(m_max)
    run = functools.partial(_sweep_one, checks=names, k_extra=k_extra)
    start = time.perf_counter()
    if workers == 1 or len(sets) < 2:
        reports = [run(s) for s in sets]
    else:
        chunksize = max(1, len(sets) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run, sets, chunksize=chunksize))
    elapsed = time.perf_counter() - start

    failures = tuple(report for report in reports if not report.passed)
    return SweepSummary(m_max, names, len(sets), failures, elapsed)

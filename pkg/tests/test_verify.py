import json

import pytest

from peakpoly.engine import peak_polynomial
from peakpoly.intpoly import BinomialPolynomial
from peakpoly.perms import InadmissibleSetError, structurally_admissible_sets
from peakpoly.verify import (
    SweepSummary,
    _positivity_violation,
    center_coefficients,
    sweep,
    verify_counts,
    verify_log_concavity,
    verify_positivity,
    verify_set,
)


def test_positivity_worked_example():
    report = verify_positivity((4, 6), 6)
    assert report.passed
    assert report.coefficients == (0, 25, 50, 43, 18, 3, 0)
    assert {c.name for c in report.checks} == {
        "positivity", "order-m-difference-zero", "zero-at-max", "degree"}
    assert all(c.witness is None for c in report.checks)


def test_positivity_singleton():
    report = verify_positivity((2,), 10)
    assert report.passed
    assert report.coefficients == (0, 1, 0)
    d1 = peak_polynomial((2,)).forward_difference()
    assert all(d1.evaluate(k) == 1 for k in range(2, 13))


def test_positivity_rejects_bad_inputs():
    with pytest.raises(InadmissibleSetError):
        verify_positivity((), 5)
    with pytest.raises(InadmissibleSetError):
        verify_positivity((2, 3), 5)
    with pytest.raises(ValueError):
        verify_positivity((4, 6), 5)


def test_positivity_witness_is_sound():
    # a hand-built non-peak polynomial with a planted negative difference:
    # its first difference is 5 - 7*C(x-3,1) + 2*C(x-3,2), which dips to -2
    # at x = 4, the first violation in (j, k) scan order
    poison = BinomialPolynomial(3, (0, 5, -7, 2))
    witness = _positivity_violation(poison, 3, 8)
    assert witness == (1, 4)
    j, k = witness
    assert poison.forward_difference(j).evaluate(k) == -2


def test_log_concavity_worked_example():
    report = verify_log_concavity((4, 6))
    assert report.passed
    c = report.coefficients
    assert c == (0, 25, 50, 43, 18, 3, 0)
    for j in range(2, 5):
        assert c[j] ** 2 >= c[j - 1] * c[j + 1]
    assert report.notes["unimodal"] is True
    assert report.notes["log_concavity_ties"] == []


def test_log_concavity_vacuous_for_singleton():
    report = verify_log_concavity((2,))
    assert report.passed
    assert report.checks[0].witness is None


def test_counts_cross_check_examples():
    report = verify_counts((2,), 8)
    assert report.passed
    got = [int(report.notes["counts"][str(n)]["formula"]) for n in range(3, 9)]
    assert got == [2, 8, 24, 64, 160, 384]
    for n in range(3, 9):
        row = report.notes["counts"][str(n)]
        assert row["formula"] == row["recursion"] == row["bruteforce"]


def test_counts_cross_check_two_peaks():
    report = verify_counts((4, 6), 8)
    assert report.passed
    assert report.notes["counts"]["7"]["formula"] == "400"
    assert report.notes["counts"]["8"]["formula"] == "3200"


def test_counts_empty_set():
    report = verify_counts((), 8)
    assert report.passed
    for n in range(1, 9):
        assert report.notes["counts"][str(n)]["formula"] == str(2 ** (n - 1))


def test_counts_beyond_cap_drops_bruteforce_leg():
    report = verify_counts((2,), 12)
    assert report.passed
    assert report.notes["counts"]["12"]["bruteforce"] is None
    assert report.notes["counts"]["10"]["bruteforce"] is not None
    from peakpoly.perms import EnumerationCapError
    with pytest.raises(EnumerationCapError):
        verify_counts((2,), 12, require_bruteforce=True)


def test_verify_set_merges_checks():
    report = verify_set((4, 6), ("positivity", "logconcavity", "counts"))
    assert report.passed
    names = [c.name for c in report.checks]
    assert names == ["positivity", "order-m-difference-zero", "zero-at-max",
                     "degree", "logconcavity", "counts"]
    assert "unimodal" in report.notes and "counts" in report.notes
    with pytest.raises(ValueError):
        verify_set((4, 6), ("positivity", "mystery"))
    with pytest.raises(ValueError):
        verify_set((4, 6), ())


def test_sweep_smallest_bound():
    summary = sweep(2)
    assert summary.sets_checked == 1
    assert summary.failures == ()


def test_sweep_counts_sets_up_to_6():
    summary = sweep(6)
    assert summary.sets_checked == 12
    assert summary.failures == ()


def test_sweep_to_12_has_no_failures():
    summary = sweep(12, ("positivity", "logconcavity"))
    assert summary.sets_checked == len(structurally_admissible_sets(12))
    assert summary.failures == ()


def test_sweep_is_deterministic_across_worker_counts():
    sequential = sweep(8, workers=1)
    parallel = sweep(8, workers=3)
    for field in ("m_max", "checks", "sets_checked", "failures"):
        assert getattr(sequential, field) == getattr(parallel, field)


def test_sweep_validation():
    with pytest.raises(ValueError):
        sweep(1)
    with pytest.raises(ValueError):
        sweep(5, workers=0)
    with pytest.raises(ValueError):
        sweep(5, checks=("counts",))
    with pytest.raises(ValueError):
        sweep(5, checks=())


def test_positive_evaluation_beyond_the_root():
    for s in structurally_admissible_sets(8):
        p = peak_polynomial(s)
        m = s[-1]
        for k in range(m + 1, m + 11):
            assert p.evaluate(k) > 0


def test_report_json_shape():
    report = verify_set((4, 6), ("positivity", "logconcavity"))
    data = json.loads(json.dumps(report.to_json_dict()))
    assert data["set"] == [4, 6]
    assert data["m"] == 6
    assert data["passed"] is True
    assert data["coefficients"] == ["0", "25", "50", "43", "18", "3", "0"]
    assert all(c["witness"] is None for c in data["checks"])

    summary = sweep(4)
    sdata = json.loads(json.dumps(summary.to_json_dict()))
    assert sdata["sets_checked"] == 4  # {2}, {3}, {2,4}, {4}
    assert sdata["failures"] == []
    assert isinstance(sdata["elapsed_seconds"], float)
    assert isinstance(summary, SweepSummary)


def test_center_coefficients_pads_to_length_m_plus_one():
    p = peak_polynomial((3, 5))
    assert len(center_coefficients(p, 5)) == 6
    assert center_coefficients(p, 5)[0] == 0
    assert center_coefficients(p, 5)[-1] == 0

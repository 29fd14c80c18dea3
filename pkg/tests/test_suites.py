import pytest

from entroloss import SUITES, suite_ids, suite_run
from entroloss.errors import UnknownSuiteError


def test_registry_size():
    assert len(SUITES) >= 14


def test_unknown_suite_rejected():
    with pytest.raises(UnknownSuiteError):
        suite_run("definitely-not-a-suite")


@pytest.mark.parametrize("suite_id", suite_ids())
def test_every_suite_passes(suite_id):
    report = suite_run(suite_id)
    failing = [c.claim for c in report.checks if not c.passed]
    assert report.passed, f"{suite_id} failed: {failing}"
    assert report.checks, "every suite must produce at least one check"


def test_p4_series_columns():
    report = suite_run("P4")
    assert {"n", "entropy", "mean_energy", "closed_form_loss", "loss_over_bound"} <= set(report.series)
    n = len(report.series["n"])
    assert all(len(col) == n for col in report.series.values())


def test_c1_declares_equality_for_diagonal_families():
    report = suite_run("C1")
    assert any("equality" in c.claim for c in report.checks)


def test_c3_reports_both_triangle_variants():
    report = suite_run("C3")
    claims = " | ".join(c.claim for c in report.checks)
    assert "2 *" in claims and "factor two removed" in claims


def test_t1_has_implication_row():
    report = suite_run("C3")
    assert any("equal marginal losses" in c.claim for c in report.checks)


def test_every_check_records_estimator_basis():
    for suite_id in suite_ids():
        for check in suite_run(suite_id).checks:
            assert check.basis in {"pointwise", "measured", "closed_form", "exact-anchor"}


def test_suite_params_passed_through():
    report = suite_run("P4", {"energy": 0.7})
    assert report.params["energy"] == 0.7
    assert report.passed


def test_p4_loss_approaches_bound_from_above():
    # the finite-n estimator stays above the asymptotic value and decreases
    ratios = suite_run("P4").series["loss_over_bound"]
    assert all(r > 1.0 for r in ratios)
    assert all(b <= a for a, b in zip(ratios, ratios[1:]))

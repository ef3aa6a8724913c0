import pytest

from cohiggs import suites
from cohiggs.suites import THEOREMS, run_suite, run_trial


@pytest.mark.parametrize("theorem", THEOREMS)
def test_small_suites_pass(theorem):
    report = run_suite(theorem, 4, 2024)
    assert report.passed, report.to_text()
    assert report.failures == sum(f.status == "FAIL" for f in report.findings)


def test_trial_depends_only_on_its_index():
    full = run_suite("det1", 5, 3)
    alone = run_trial("det1", 3, 4)
    assert [f for f in full.findings if f.trial == 4] == alone


def test_findings_sorted_with_notes_first():
    report = run_suite("cocycle", 2, 0)
    keys = [-1 if f.trial is None else f.trial for f in report.findings]
    assert keys == sorted(keys) and keys[0] == -1


def test_exceptions_become_failures(monkeypatch):
    def boom(rng, bound, t):
        raise RuntimeError("kaput")

    monkeypatch.setitem(suites.TRIALS, "lemma1", boom)
    report = run_suite("lemma1", 3, 0)
    assert report.failures == 3
    assert all(f.actual == "RuntimeError" for f in report.findings)


def test_det2_notes_are_reported():
    notes = [f.note for f in run_suite("det2", 1, 0).findings if f.status == "NOTE" and f.trial is None]
    assert len(notes) == 2


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_suite("det7", 1, 0)
    with pytest.raises(ValueError):
        run_suite("det1", 0, 0)

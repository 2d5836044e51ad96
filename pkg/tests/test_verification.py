"""驗收套件與錯誤注入"""

import pytest

from core.config import settings
from core.errors import InvalidInputError
from services.verification_service import SUITES, Bounds, VerificationService


@pytest.fixture(autouse=True)
def fewer_trials(monkeypatch):
    monkeypatch.setattr(settings, "RANDOM_COCYCLE_TRIALS", 20)
    monkeypatch.setattr(settings, "KS_TRIALS", 8)
    monkeypatch.setattr(settings, "CY_SAMPLES", 30)
    monkeypatch.setattr(settings, "CY_ORACLE_PAIRS", 4)


SMALL = Bounds(max_n=5, ms=(3,), max_s=2, seed=7)


@pytest.mark.parametrize("suite", ["cyclic_poset", "frobenius", "stable_cluster", "mcluster"])
def test_suites_pass_on_small_bounds(suite):
    report = VerificationService(SMALL).run(suite)
    assert report.passed, [r for r in report.results if not r.passed]
    assert [r.name.split(":")[0] for r in report.results] == [str(n) for n in SUITES[suite]]


@pytest.mark.parametrize(
    "fault,suite,failing",
    [
        ("crossing", "stable_cluster", "4:cluster-counts"),
        ("cocycle", "cyclic_poset", "1:cocycle-algebra"),
        ("decompose", "frobenius", "6:krull-schmidt"),
    ],
)
def test_injected_faults_are_caught(fault, suite, failing):
    report = VerificationService(SMALL, fault=fault).run(suite)
    assert not report.passed
    assert failing in {r.name for r in report.results if not r.passed}


def test_unknown_names():
    with pytest.raises(InvalidInputError):
        VerificationService(SMALL).run("everything")
    with pytest.raises(InvalidInputError):
        VerificationService(SMALL, fault="gravity")


def test_m_calabi_yau_reaches_nonstandard_objects(monkeypatch):
    monkeypatch.setattr(settings, "CY_ORACLE_PAIRS", 2)
    detail = VerificationService(Bounds(max_n=5, ms=(3, 4, 5), max_s=1, seed=7)).check_m_cy()
    assert "10 oracle pairs (4 with a nonstandard object)" in detail


def test_example_m5_detail_records_both_counts():
    detail = VerificationService(SMALL).check_example_m5()
    assert "exhaustive 2m−2 = 8, not 3m−6 = 9" in detail

import pytest

from envrad.campaigns import SUITES, CampaignResult, random_check


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suites_pass_small(suite):
    res = random_check(suite, seed=123, cases=15)
    assert res.passed, res.failures
    assert res.counterexample is None


def test_zero_cases_is_vacuous_with_warning():
    res = random_check("naturality", seed=7, cases=0)
    assert res.passed and res.warnings


def test_unknown_suite():
    with pytest.raises(KeyError):
        random_check("no-such-suite", 1, 1)


def test_deterministic():
    a = random_check("oracle-equivalence", seed=5, cases=10)
    b = random_check("oracle-equivalence", seed=5, cases=10)
    assert a.stats == b.stats and a.passed == b.passed


def test_counterexample_is_smallest():
    res = CampaignResult("x", 0, 3, False)
    res.failures = [{"rank": 3, "size": 10}, {"rank": 1, "size": 50}, {"rank": 1, "size": 8}]
    assert res.counterexample == {"rank": 1, "size": 8}

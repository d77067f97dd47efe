import random

import pytest

from ykh import suites
from ykh.suites import SUITES, SuiteContext, run_suites
from ykh.trace import TraceEngine
from ykh.utils.exceptions import InvalidParameterError, PropertyCheckError


@pytest.fixture
def ctx():
    return SuiteContext(d=2, engine=TraceEngine("memo"), rng=random.Random(0), count=2)


def test_default_subsets(ctx):
    assert ctx.subsets == [(0,), (1,), (0, 1)]


def test_check_counts(ctx):
    assert run_suites(["esystem", "basis"], ctx) == {"esystem": 4, "basis": 8}


def test_unknown_suite(ctx):
    with pytest.raises(InvalidParameterError):
        run_suites(["esystem", "nonsense"], ctx)


def test_failure_raises(ctx, monkeypatch):
    original = suites.list_solutions
    monkeypatch.setattr(suites, "list_solutions", lambda d: original(d)[:-1])
    with pytest.raises(PropertyCheckError) as excinfo:
        run_suites(["esystem"], ctx)
    assert excinfo.value.exit_code == 2


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes(ctx, name):
    assert run_suites([name], ctx)[name] > 0


def test_vassiliev_suite_uses_configured_order(monkeypatch):
    orders = []
    original = suites.vassiliev_coefficients

    def recording(d, subset, word, order, engine):
        orders.append(order)
        return original(d, subset, word, order, engine)

    monkeypatch.setattr(suites, "vassiliev_coefficients", recording)
    ctx = SuiteContext(d=2, engine=TraceEngine("memo"), rng=random.Random(0), count=1, series_order=3)
    assert run_suites(["vassiliev"], ctx) == {"vassiliev": 2}
    assert orders == [3, 3]


@pytest.mark.slow
def test_transverse_suite_checks_both_pairs(ctx):
    assert run_suites(["transverse"], ctx) == {"transverse": 2}

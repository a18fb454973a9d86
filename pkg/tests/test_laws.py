import pytest

from app.api.models import Caps
from app.errors import BudgetError, StructuralError
from app.services.laws import SUITES, CheckRunner, check_laws
from app.services.simplicial import sphere


@pytest.fixture
def caps():
    return Caps(dim_cap=3, level_cap=1, sigma_max=0, node_budget=10_000_000)


def test_runner_records_errors_per_check(caps):
    runner = CheckRunner(caps)

    def exhausted():
        raise BudgetError("too many nodes", partial_count=3)

    runner.check("first", exhausted)
    runner.check("second", lambda: (True, None))
    assert [r.verdict for r in runner.results] == ["error", "pass"]
    assert runner.results[0].error_message.startswith("BudgetError")
    assert isinstance(runner.errors[0], BudgetError)


def test_runner_keeps_string_verdicts(caps):
    runner = CheckRunner(caps)
    runner.check("maybe", lambda: ("conditional", {"note": "unchecked"}))
    assert runner.results[0].verdict == "conditional"


def test_unknown_suite(caps):
    with pytest.raises(ValueError):
        check_laws("nope", caps)
    assert "tower_identities" in SUITES


def test_sigma_omega_suite(caps):
    runner = check_laws("sigma_omega", caps, sphere(0), sphere(1))
    assert [r.verdict for r in runner.results] == ["pass"]


def test_monad_algebra_suite_catches_mutation(caps):
    runner = check_laws("monad_algebra", caps)
    verdicts = {r.name: r.verdict for r in runner.results}
    assert verdicts["mutation_detected[s1,s1]"] == "pass"
    assert all(v == "pass" for v in verdicts.values())


def test_tower_identities_suite(caps):
    runner = check_laws("tower_identities", caps, sphere(0), sphere(1), stages=1)
    assert runner.errors == []
    assert all(r.verdict in ("pass", "conditional") for r in runner.results)


def test_structural_errors_do_not_stop_a_suite(caps):
    runner = CheckRunner(caps)

    def broken():
        raise StructuralError("bad face")

    runner.check("broken", broken)
    runner.check("fine", lambda: (False, ["witness"]))
    assert [r.verdict for r in runner.results] == ["error", "fail"]


def test_unexpected_exceptions_become_error_verdicts(caps):
    runner = CheckRunner(caps)

    def crashes():
        raise ValueError("no such level")

    runner.check("crashes", crashes)
    runner.check("after", lambda: (True, None))
    assert [r.verdict for r in runner.results] == ["error", "pass"]
    assert runner.results[0].error_message == "ValueError: no such level"
    assert isinstance(runner.errors[0], ValueError)

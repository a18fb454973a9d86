import time
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from app.api.models import Caps, CheckResult
from app.services.adjunction import adjunction_check, check_algebra, realizable_algebra_structure
from app.services.mapping_space import verify_sigma_omega
from app.services.simplicial import SimplicialSet, constant_map, point, sphere
from app.services.stover import (
    check_counit_resolution,
    coassociativity,
    counit_identities,
    naturality,
    rebuild_from_rho,
    stover_comonad,
)
from app.services.tower import DOLD_LASHOF, STOVER, recovery_report, run_tower

logger = logging.getLogger(__name__)

SUITES = ("adjunction", "monad_algebra", "comonad", "sigma_omega", "tower_identities")

# at most this many offending entries go into a witness
WITNESS_LIMIT = 5

Outcome = Tuple[Any, Any]


class CheckRunner:
    """Runs named checks, catching failures per check so one bad check never stops a suite"""

    def __init__(self, caps: Caps):
        self.caps = caps
        self.results: List[CheckResult] = []
        self.errors: List[Exception] = []

    def check(self, name: str, fn: Callable[[], Outcome]) -> CheckResult:
        start_time = time.time()
        try:
            verdict, witness = fn()
            if isinstance(verdict, bool):
                verdict = "pass" if verdict else "fail"
            result = CheckResult(name=name, verdict=verdict, witness=witness)
            logger.info(f"Check {name}: verdict={verdict}, elapsed={round(time.time() - start_time, 3)}s")
        except Exception as e:
            error_type = type(e).__name__
            result = CheckResult(name=name, verdict="error", error_message=f"{error_type}: {str(e)}")
            self.errors.append(e)
            logger.error(f"Check {name}: error={error_type}, message={str(e)}, "
                         f"elapsed={round(time.time() - start_time, 3)}s")
        self.results.append(result)
        return result


def _violations(problems: List[str]) -> Outcome:
    return not problems, (problems[:WITNESS_LIMIT] or None)


def _pairs(A: Optional[SimplicialSet], Y: Optional[SimplicialSet], default: List[Tuple[SimplicialSet, SimplicialSet]]):
    if A is not None and Y is not None:
        return [(A, Y)]
    if A is not None:
        return [(A, y) for _, y in default]
    if Y is not None:
        return [(a, Y) for a, _ in default]
    return default


def adjunction_suite(runner: CheckRunner, A=None, Y=None, **_) -> None:
    X = Y if Y is not None else sphere(1)
    sources = [A] if A is not None else [sphere(0), sphere(1)]
    for a in sources:
        for K in (sphere(0), sphere(1), point()):
            def run(a=a, K=K) -> Outcome:
                report = adjunction_check(a, K, X, runner.caps.level_cap, runner.caps.node_budget)
                witness = {"left": report.left_count, "right": report.right_count}
                if report.violations:
                    witness["violations"] = report.violations[:WITNESS_LIMIT]
                return report.passed, witness
            runner.check(f"adjunction[{a.name},{K.name},{X.name}]", run)


def monad_algebra_suite(runner: CheckRunner, A=None, Y=None, mutate: bool = False, **_) -> None:
    default = [(sphere(0), sphere(1)), (sphere(1), sphere(1)), (sphere(1), point())]
    for a, y in _pairs(A, Y, default):
        def run(a=a, y=y) -> Outcome:
            structure = realizable_algebra_structure(a, y, runner.caps.level_cap, runner.caps.node_budget)
            if mutate:
                structure = structure.mutate()
            return _violations(check_algebra(structure, runner.caps.node_budget))
        runner.check(f"algebra_square[{a.name},{y.name}]" + ("+mutated" if mutate else ""), run)
    if not mutate and A is None and Y is None:
        def detect() -> Outcome:
            structure = realizable_algebra_structure(sphere(1), sphere(1), runner.caps.level_cap, runner.caps.node_budget)
            caught = check_algebra(structure.mutate(), runner.caps.node_budget)
            return bool(caught), (caught[:1] or None)
        runner.check("mutation_detected[s1,s1]", detect)


def comonad_suite(runner: CheckRunner, A=None, Y=None, **_) -> None:
    default = [(sphere(0), sphere(0)), (sphere(1), point())]
    budget = runner.caps.node_budget
    for a, y in _pairs(A, Y, default):
        L = lambda a=a, y=y: stover_comonad(a, y, 0, budget)
        runner.check(f"counit_identities[{a.name},{y.name}]", lambda L=L: _violations(counit_identities(L())))
        runner.check(f"rho_rebuild[{a.name},{y.name}]", lambda L=L: (rebuild_from_rho(L()), None))
        runner.check(
            f"naturality[{a.name},{y.name}->point]",
            lambda L=L, y=y: _violations(naturality(constant_map(y, point()), L())),
        )

        def resolution(a=a, y=y) -> Outcome:
            report = check_counit_resolution(a, y, min(1, runner.caps.sigma_max), budget)
            return report.passed, {"lifts": report.lifts, "violations": report.violations[:WITNESS_LIMIT] or None}
        runner.check(f"counit_resolution[{a.name},{y.name}]", resolution)
    small = A if A is not None else sphere(0)
    runner.check(
        f"coassociativity[{small.name},point]",
        lambda: _violations(coassociativity(stover_comonad(small, point(), 0, budget))),
    )


def sigma_omega_suite(runner: CheckRunner, A=None, Y=None, **_) -> None:
    default = [(a, y) for a in (sphere(0), sphere(1)) for y in (sphere(1), sphere(2))]
    for a, y in _pairs(A, Y, default):
        def run(a=a, y=y) -> Outcome:
            report = verify_sigma_omega(a, y, runner.caps.level_cap, runner.caps.node_budget)
            witness = [
                {"level": lv.level, "left": lv.left_count, "right": lv.right_count, "bijective": lv.bijective}
                for lv in report.levels
            ]
            return report.bijective, witness
        runner.check(f"sigma_omega[{a.name},{y.name}]", run)


def tower_identities_suite(runner: CheckRunner, A=None, Y=None, stages: int = 2, **_) -> None:
    a = A if A is not None else sphere(1)
    y = Y if Y is not None else sphere(1)
    for kind in (DOLD_LASHOF, STOVER):
        state_box: Dict[str, Any] = {}

        def build(kind=kind) -> Outcome:
            state = run_tower(kind, a, y, stages, runner.caps.level_cap, 0, runner.caps.node_budget)
            state_box["state"] = state
            problems = [
                f"stage {k}: {p}" for k, stage in enumerate(state.stages)
                for name, entries in stage.checks.items() if name != "inclusion_injective" for p in entries
            ]
            return _violations(problems)
        runner.check(f"tower_expand[{kind},{a.name},{y.name}]", build)
        if "state" not in state_box:
            continue
        state = state_box["state"]

        def injective(state=state) -> Outcome:
            bad = [p for stage in state.stages for p in stage.checks.get("inclusion_injective", [])]
            return ("pass" if not bad else "conditional"), (bad or None)
        runner.check(f"tower_inclusions[{kind},{a.name},{y.name}]", injective)

        def recovery(state=state) -> Outcome:
            report = recovery_report(state, 0)
            faces = all(w.faces_ok for w in report.witnesses)
            witness = {
                "surjective": report.surjective, "lifts": report.lifts,
                "witnesses": [(w.stage, w.g, w.g_prime, w.sigma, w.tau, list(w.path), w.merged) for w in report.witnesses],
                "stabilized": report.stabilized,
            }
            return report.surjective.get(0, False) and faces, witness
        runner.check(f"tower_recovery[{kind},{a.name},{y.name}]", recovery)


_SUITES: Dict[str, Callable[..., None]] = {
    "adjunction": adjunction_suite,
    "monad_algebra": monad_algebra_suite,
    "comonad": comonad_suite,
    "sigma_omega": sigma_omega_suite,
    "tower_identities": tower_identities_suite,
}


def check_laws(suite: str, caps: Caps, A: Optional[SimplicialSet] = None, Y: Optional[SimplicialSet] = None,
               **params) -> CheckRunner:
    if suite not in _SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    logger.info(f"Suite started: suite={suite}, A={A.name if A else None}, Y={Y.name if Y else None}")
    runner = CheckRunner(caps)
    _SUITES[suite](runner, A=A, Y=Y, **params)
    logger.info(f"Suite finished: suite={suite}, checks={len(runner.results)}, errors={len(runner.errors)}")
    return runner

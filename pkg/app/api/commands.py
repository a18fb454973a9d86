import json
from pathlib import Path
from typing import Optional
import logging

from app.api.catalog import emit_map, emit_object, parse_object
from app.api.models import Caps, CheckResult, Report
from app.services.laws import check_laws
from app.services.mapping_algebra import RealizableAlgebra, compare_evaluation, evaluate, parse_formal_object
from app.services.mapping_space import check_truncation, homotopy_classes, mapping_space
from app.services.simplicial import check_map, validate
from app.services.stover import stover_cogroup_variant, stover_comonad
from app.services.tower import DOLD_LASHOF, STOVER, recovery_report, run_tower

logger = logging.getLogger(__name__)

KINDS = {"dl": DOLD_LASHOF, "stover": STOVER}


def _verdict(problems) -> str:
    return "pass" if not problems else "fail"


def build_command(expr: str, out: Optional[str], caps: Caps) -> Report:
    """Build a catalog object, validate it and optionally write it out"""
    X = parse_object(expr)
    problems = validate(X)
    report = Report(command=f"build {expr}", caps=caps)
    report.checks.append(CheckResult(name="validate", verdict=_verdict(problems), witness=problems[:5] or None))
    report.data = {"name": X.name, "cells": X.cell_counts()}
    if out:
        path = Path(out if out.endswith(".json") else out + ".json")
        path.write_text(emit_object(X) + "\n")
        report.data["out"] = str(path)
        logger.info(f"Object written: path={path}, cells={X.cell_counts()}")
    return report


def map_space_command(A_expr: str, Y_expr: str, caps: Caps) -> Report:
    A, Y = parse_object(A_expr), parse_object(Y_expr)
    T = mapping_space(A, Y, caps.level_cap, caps.node_budget)
    problems = check_truncation(T)
    report = Report(command=f"map-space --A {A_expr} --Y {Y_expr} --levels {caps.level_cap}", caps=caps)
    report.checks.append(CheckResult(name="simplicial_identities", verdict=_verdict(problems), witness=problems[:5] or None))
    report.data = {"levels": T.counts()}
    if T.level_cap >= 1:
        table = homotopy_classes(A, Y, caps.node_budget, T)
        report.data["classes"] = len(table.classes)
        report.data["class_sizes"] = [len(c) for c in table.classes]
        report.data["class_table"] = [list(c) for c in table.classes]
        report.data["homotopies"] = {f"{f},{g}": list(Fs) for (f, g), Fs in sorted(table.witnesses.items())}
    return report


def algebra_eval_command(A_expr: str, Y_expr: str, B_expr: str, caps: Caps) -> Report:
    A, Y = parse_object(A_expr), parse_object(Y_expr)
    B = parse_formal_object(B_expr)
    X = RealizableAlgebra(A, Y, caps.node_budget)
    T = evaluate(X, B, caps.level_cap)
    comparison = compare_evaluation(X, B, caps.level_cap)
    report = Report(command=f"algebra eval --A {A_expr} --Y {Y_expr} --B {B_expr} --levels {caps.level_cap}", caps=caps)
    verdict = "pass" if comparison.bijective else "fail"
    report.checks.append(CheckResult(
        name="direct_comparison",
        verdict=verdict,
        witness=[{"level": lv.level, "direct": lv.left_count, "evaluated": lv.right_count} for lv in comparison.levels],
    ))
    report.data = {"B": str(B), "levels": T.counts()}
    return report


def stover_command(A_expr: str, Y_expr: str, variant: str, cogroup: bool, out: Optional[str], caps: Caps) -> Report:
    A, Y = parse_object(A_expr), parse_object(Y_expr)
    if variant == "cogroup":
        L = stover_cogroup_variant(A, Y, caps.sigma_max, cogroup, caps.node_budget)
    else:
        L = stover_comonad(A, Y, caps.sigma_max, caps.node_budget)
    report = Report(command=f"stover --A {A_expr} --Y {Y_expr} --variant {variant}", caps=caps)
    problems = validate(L.result)
    report.checks.append(CheckResult(name="validate", verdict=_verdict(problems), witness=problems[:5] or None))
    counit_problems = check_map(L.counit)
    report.checks.append(CheckResult(name="counit_is_map", verdict=_verdict(counit_problems), witness=counit_problems[:5] or None))
    report.data = {
        "cells": L.result.cell_counts(),
        "pieces": [p.label for p in L.pieces],
        "classes": {str(i): len(t.classes) for i, t in L.tables.items()},
    }
    if out:
        directory = Path(out)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / "object.json").write_text(emit_object(L.result) + "\n")
        (directory / "counit.json").write_text(emit_map(L.counit) + "\n")
        tags = {
            cid: [[L.pieces[idx].label, cell] for idx, cell in members]
            for cid, members in sorted(L.presentation.tags.items())
        }
        (directory / "tags.json").write_text(json.dumps(tags, indent=2) + "\n")
        report.data["tags"] = tags
        report.data["out"] = str(directory)
    return report


def tower_command(kind: str, A_expr: str, Y_expr: str, stages: int, out: Optional[str], caps: Caps) -> Report:
    A, Y = parse_object(A_expr), parse_object(Y_expr)
    state = run_tower(KINDS[kind], A, Y, stages, caps.level_cap, caps.sigma_max, caps.node_budget)
    report = Report(
        command=f"tower --kind {kind} --A {A_expr} --Y {Y_expr} --stages {stages}", caps=caps,
    )
    for k, stage in enumerate(state.stages[1:], start=1):
        for name, problems in sorted(stage.checks.items()):
            if name == "inclusion_injective":
                verdict = "pass" if not problems else "conditional"
            else:
                verdict = _verdict(problems)
            report.checks.append(CheckResult(name=f"stage{k}.{name}", verdict=verdict, witness=problems[:5] or None))
    recovery = recovery_report(state)
    report.checks.append(CheckResult(
        name="recovery_surjective",
        verdict="pass" if all(recovery.surjective.values()) else "fail",
        witness={"lifts": recovery.lifts},
    ))
    if recovery.witnesses:
        report.checks.append(CheckResult(
            name="recovery_injectivity_witnesses",
            verdict="pass" if all(w.faces_ok for w in recovery.witnesses) else "fail",
            witness=[(w.stage, w.g, w.g_prime, w.sigma, w.tau, list(w.path), w.merged) for w in recovery.witnesses],
        ))
    if recovery.stabilized:
        report.checks.append(CheckResult(
            name="stabilized", verdict="conditional", witness={"by_degree": recovery.stabilized, "note": recovery.conditional},
        ))
    report.data = {
        "stages": [stage.Z.cell_counts() for stage in state.stages],
        "bijective_levels": recovery.bijective_levels,
    }
    if out:
        directory = Path(out)
        directory.mkdir(parents=True, exist_ok=True)
        for k, stage in enumerate(state.stages):
            (directory / f"stage{k}.json").write_text(emit_object(stage.Z) + "\n")
            (directory / f"stage{k}_lift.json").write_text(emit_map(stage.e) + "\n")
            if stage.i is not None:
                (directory / f"stage{k}_inclusion.json").write_text(emit_map(stage.i) + "\n")
        report.data["out"] = str(directory)
        (directory / "report.json").write_text(report.model_dump_json(indent=2) + "\n")
    return report


def check_laws_command(suite: str, A_expr: Optional[str], Y_expr: Optional[str], mutate: bool, caps: Caps):
    A = parse_object(A_expr) if A_expr else None
    Y = parse_object(Y_expr) if Y_expr else None
    params = {"mutate": mutate} if suite == "monad_algebra" else {}
    runner = check_laws(suite, caps, A, Y, **params)
    command = f"check-laws --suite {suite}" + (f" --A {A_expr}" if A_expr else "") + (f" --Y {Y_expr}" if Y_expr else "")
    if mutate:
        command += " --mutate"
    return Report(command=command, caps=caps, checks=runner.results), runner.errors

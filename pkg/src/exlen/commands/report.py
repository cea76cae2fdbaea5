"""
The report and selftest commands.

`report` runs every module's checks on one presentation and emits a single
summary; `selftest` replays the bundled corpus against its committed
expectations.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple

from . import exit_for
from ..errors import ExitCode
from ..models import CheckReport, CommandOutput, ExpectedOutcome, RunConfig, ValidationReport
from ..services import filt, lattice
from ..services.agent import Executor, Memory, Planner
from ..utils.dot import format_report

logger = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).parent.parent.parent.parent / "corpus"


def _as_reports(result: Any) -> List[CheckReport]:
    if isinstance(result, ValidationReport):
        return [CheckReport(name="validation", violations=result.violations)]
    if isinstance(result, CheckReport):
        return [result]
    if isinstance(result, list) and all(isinstance(r, CheckReport) for r in result) and result:
        return result
    return []


def collect_facts(context: Dict[str, Any]) -> Dict[str, Any]:
    """Comparable facts from a report run; absent tasks contribute nothing."""
    p = context.get("presentation")
    if p is None:
        return {}
    facts: Dict[str, Any] = {"indecs": p.n, "bricks": p.names(p.bricks)}
    if "validation" not in context:
        return facts

    facts["simples"] = p.names(filt.simples(p, p.full))
    if "strata" in context and context["strata"].data:
        data = context["strata"].data
        facts.update(theta1=data["theta1"], theta_inf=data["theta_inf"], length_wide=data["length_wide"])
    if "semibricks" in context:
        rows = context["semibricks"].data["semibricks"]
        facts["semibricks"] = len(rows)
        facts["proper_semibricks"] = sum(row["proper"] for row in rows)
    for kind in ("tors", "torf"):
        if kind in context:
            facts[f"{kind}_count"] = len(context[kind])
    if "tors" in context:
        facts["tors"] = [p.names(t) for t in context["tors"]]
    if "tors_lattice" in context:
        l = context["tors_lattice"]
        stats = lattice.hasse_stats(l)
        facts.update(arrows=stats["arrows"], jirr=stats["jirr"], mirr=stats["mirr"],
                     label_counts=stats["label_counts"])
        facts["brick_table"] = [[row.brick, row.jirr, row.mirr] for row in lattice.brick_table(p, l)]
    if "top_bottom_arrows" in context and "top_arrows" in context["top_bottom_arrows"].data:
        facts["top_arrows"] = context["top_bottom_arrows"].data["top_arrows"]
    if "tors_semidistributive" in context:
        facts["semidistributive"] = context["tors_semidistributive"].passed
    if "standard" in context:
        facts["standard"] = context["standard"].passed
    if "tautilt" in context:
        markings, bijections = context["tautilt"]
        facts.update(projectives=markings.data["projectives"], injectives=markings.data["injectives"])
        if bijections.data:
            facts.update(support=bijections.data["support"], stau_inverse=bijections.data["stau_inverse"])
    return facts


def _report_run(config: RunConfig, memory: Memory = None) -> Tuple[int, List[CheckReport], Dict[str, Any]]:
    tasks = Planner().plan_report(config.input)
    executor = Executor(config, memory)
    context = executor.execute_plan(tasks)

    reports = []
    for task in tasks:
        if task.name in context:
            reports += _as_reports(context[task.name])
    reports += executor.failure_reports()

    load_failure = executor.failures.get("presentation")
    exit_code = int(load_failure.exit_code) if load_failure else int(exit_for(reports))
    return exit_code, reports, collect_facts(context)


def run_report(config: RunConfig) -> CommandOutput:
    exit_code, reports, facts = _report_run(config)
    lines = []
    for report in reports:
        lines += format_report(report)
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} reports passed")
    return CommandOutput(command="report", name=config.input.stem, exit_code=exit_code,
                         text="\n".join(lines) + "\n", data={"facts": facts}, reports=reports)


def compare(expected: ExpectedOutcome, exit_code: int, reports: List[CheckReport],
            facts: Dict[str, Any]) -> List[str]:
    """Mismatch lines between an expectation and a run; empty when they agree."""
    problems = []
    if exit_code != expected.exit_code:
        problems.append(f"exit code {exit_code}, expected {expected.exit_code}")
    for key, value in expected.facts.items():
        if key not in facts:
            problems.append(f"fact {key} missing, expected {value}")
        elif facts[key] != value:
            problems.append(f"fact {key} is {facts[key]}, expected {value}")
    seen = {v.rule for r in reports for v in r.violations}
    for rule in expected.rules:
        if rule not in seen:
            problems.append(f"rule {rule!r} not reported")
    return problems


def run_selftest(config: RunConfig) -> CommandOutput:
    corpus_dir = config.corpus_dir or CORPUS_DIR
    expected_files = sorted((corpus_dir / "expected").glob("*.json"))
    if not expected_files:
        logger.error(f"No expectations found under {corpus_dir / 'expected'}")
        return CommandOutput(command="selftest", exit_code=ExitCode.SELFTEST,
                             text=f"no expectations under {corpus_dir}\n")

    memory = Memory()
    lines, results = [], {}
    for path in expected_files:
        expected = ExpectedOutcome.model_validate_json(path.read_text(encoding="utf-8"))
        run_config = config.model_copy(update={"command": "report", "input": corpus_dir / expected.corpus})
        exit_code, reports, facts = _report_run(run_config, memory)
        problems = compare(expected, exit_code, reports, facts)
        results[path.stem] = problems
        if problems:
            lines += [f"MISMATCH {path.stem}: {problem}" for problem in problems]
        else:
            lines.append(f"ok {path.stem} (exit {exit_code}, {len(expected.facts)} facts, {len(expected.rules)} rules)")

    failed = [name for name, problems in results.items() if problems]
    lines.append(f"{len(results) - len(failed)}/{len(results)} corpora match")
    return CommandOutput(
        command="selftest",
        exit_code=ExitCode.SELFTEST if failed else ExitCode.OK,
        text="\n".join(lines) + "\n",
        data={"corpora": results},
    )

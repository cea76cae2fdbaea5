"""
Command handlers for the exlen front end.

Every handler takes a RunConfig and returns a CommandOutput; the front end
decides whether to print its text or its JSON form.
"""

from typing import Any, Dict, List, Sequence, Tuple

from ..errors import ExitCode
from ..models import CheckReport, RunConfig
from ..services.agent import Executor, Memory, Planner
from ..services.presentation import CategoryPresentation


def prepare(config: RunConfig, kinds: Sequence[str] = (), memory: Memory = None) -> Tuple[CategoryPresentation, Dict[str, Any], Executor]:
    """
    Load, validate and optionally enumerate the input presentation.

    Raises the first task failure, so a broken input never reaches a handler.

    Returns:
        The presentation, the task context and the executor that built it
    """
    planner = Planner()
    executor = Executor(config, memory)
    tasks = planner.plan_load(config.input) + planner.plan_enumeration(kinds)
    context = executor.execute_plan(tasks)
    if executor.failures:
        raise next(iter(executor.failures.values()))
    return context["presentation"], context, executor


def exit_for(reports: List[CheckReport]) -> int:
    """Contract exit when any report fails, validation exit when validation does."""
    failed = [r for r in reports if not r.passed]
    if any(r.name == "validation" for r in failed):
        return ExitCode.VALIDATION
    if failed:
        return ExitCode.CONTRACT
    return ExitCode.OK


"""
Executor module for executing check tasks against the engine services.
"""

import logging
import time
from typing import Any, Dict, List

from .memory import Memory
from .planner import Task
from .. import filt, lattice, presentation, tautilt, torsion
from ...errors import ContractViolation, EnumerationLimitError, ExlenError, PresentationError, ValidationFailed
from ...models import CheckReport, RunConfig, Violation

logger = logging.getLogger(__name__)

# Params holding the name of another task whose result they refer to.
REFERENCES = ("lattice", "elements")


def failure_rule(error: ExlenError) -> str:
    if isinstance(error, PresentationError):
        return "presentation"
    if isinstance(error, EnumerationLimitError):
        return "enumeration bound"
    if isinstance(error, ContractViolation):
        return "contract"
    return "precondition"


class Executor:
    """Runs check plans against one presentation, recording failed steps."""

    def __init__(self, config: RunConfig, memory: Memory = None):
        self.config = config
        self.memory = memory or Memory()
        self.failures: Dict[str, ExlenError] = {}

    def execute_task(self, task: Task, context: Dict[str, Any]) -> Any:
        """
        Run one plan step on the engine service named by `task.tool`.

        Args:
            task: Plan step
            context: Results of earlier steps keyed by task name

        Returns:
            Whatever the service returns: a presentation, an enumeration, a
            lattice or one or more check reports
        """
        for dep in task.dependencies:
            if dep not in context:
                raise ValueError(f"Task {task.name} depends on {dep} which is not in context")

        params = self._resolve_params(task.params, context)

        if task.tool == "model":
            return self._execute_model_task(params)
        elif task.tool == "filt":
            return self._execute_filt_task(params)
        elif task.tool == "torsion":
            return self._execute_torsion_task(params)
        elif task.tool == "lattice":
            return self._execute_lattice_task(params)
        elif task.tool == "tautilt":
            return self._execute_tautilt_task(params)
        else:
            raise ValueError(f"Unknown tool: {task.tool}")

    def execute_plan(self, tasks: List[Task], context: Dict[str, Any] = None) -> Dict[str, Any]:
        """
        Run tasks in order; a failed task is recorded and its dependents skipped.

        Returns:
            Context of task results keyed by task name
        """
        context = dict(context or {})
        for task in tasks:
            blocked = [dep for dep in task.dependencies if dep not in context]
            if blocked:
                logger.info(f"Skipping {task.name}: {', '.join(blocked)} unavailable")
                continue
            started = time.perf_counter()
            try:
                context[task.name] = self.execute_task(task, context)
            except ExlenError as e:
                logger.warning(f"Task {task.name} failed: {e}")
                self.failures[task.name] = e
                continue
            logger.debug(f"Task {task.name} finished in {time.perf_counter() - started:.3f}s")
        return context

    def failure_reports(self) -> List[CheckReport]:
        """Failed tasks as reports, so every outcome reaches the summary."""
        reports = []
        for name, error in self.failures.items():
            if isinstance(error, ValidationFailed):
                reports.append(CheckReport(name="validation", violations=list(error.violations)))
            else:
                reports.append(CheckReport(
                    name=name,
                    violations=[Violation(rule=failure_rule(error), location=name, detail=str(error))],
                ))
        return reports

    def _resolve_params(self, params: Dict[str, Any], context: Dict[str, Any]) -> Dict[str, Any]:
        """Resolve parameter values from context."""
        resolved = {}
        for key, value in params.items():
            if value is None:
                resolved[key] = context.get(key)
            elif key in REFERENCES:
                resolved[key] = context[value]
            else:
                resolved[key] = value
        return resolved

    def _execute_model_task(self, params: Dict[str, Any]) -> Any:
        operation = params.get("operation")

        if operation == "load":
            return presentation.load(params["path"])
        elif operation == "validate":
            p = params["presentation"]
            report = presentation.validate(p)
            if not report.passed:
                raise ValidationFailed(p.name, report.violations)
            return report
        else:
            raise ValueError(f"Unknown model operation: {operation}")

    def _execute_filt_task(self, params: Dict[str, Any]) -> Any:
        operation = params.get("operation")
        p = params["presentation"]

        if operation == "strata":
            return filt.strata_report(p, self.config.mult_cap, self.config.stable_only)
        elif operation == "semibricks":
            return filt.semibrick_report(p, self.config.mult_cap)
        else:
            raise ValueError(f"Unknown filt operation: {operation}")

    def _execute_torsion_task(self, params: Dict[str, Any]) -> Any:
        operation = params.get("operation")
        p = params["presentation"]

        if operation in ("enumerate_tors", "enumerate_torf"):
            key = self.memory.get_artifact_key(operation, p, max_indecs=self.config.max_indecs)
            cached = self.memory.retrieve_artifact(key)
            if cached is not None:
                return cached
            enumerate_fn = torsion.enumerate_tors if operation == "enumerate_tors" else torsion.enumerate_torf
            elements = enumerate_fn(p, self.config.max_indecs, self.config.jobs)
            logger.info(f"{p.name}: closure cache holds {len(p.closures)} entries "
                        f"({p.closures.hits} hits, {p.closures.misses} misses)")
            self.memory.store_artifact(key, elements)
            return elements
        elif operation == "pairs":
            return torsion.torsion_report(p, params["tors"], params["torf"])
        else:
            raise ValueError(f"Unknown torsion operation: {operation}")

    def _execute_lattice_task(self, params: Dict[str, Any]) -> Any:
        operation = params.get("operation")
        l = params.get("lattice")

        if operation == "build":
            p = params["presentation"]
            key = self.memory.get_artifact_key("lattice", p, kind=params["kind"], max_indecs=self.config.max_indecs)
            cached = self.memory.retrieve_artifact(key)
            if cached is None:
                cached = lattice.build_lattice(p, params["elements"], params["kind"])
                self.memory.store_artifact(key, cached)
            return cached
        elif operation == "bounds":
            return lattice.check_bounds(l)
        elif operation == "labels":
            return lattice.check_labels(l)
        elif operation == "semidistributive":
            return lattice.check_semidistributive(l, self.config.sd_bound)
        elif operation == "algebraic":
            return lattice.check_algebraic(l)
        elif operation == "intervals":
            return lattice.check_intervals(l)
        elif operation == "standard":
            return lattice.standard_report(params["presentation"])
        elif operation == "irreducible_bijections":
            return lattice.check_irreducible_bijections(l)
        elif operation == "top_bottom_arrows":
            return lattice.top_bottom_arrows_check(params["presentation"], l, self.config.mult_cap)
        elif operation == "duality":
            return lattice.dual_lattice_check(params["presentation"], params["tors_lattice"], params["torf_lattice"])
        else:
            raise ValueError(f"Unknown lattice operation: {operation}")

    def _execute_tautilt_task(self, params: Dict[str, Any]) -> Any:
        operation = params.get("operation")

        if operation == "reports":
            return tautilt.tautilt_reports(params["presentation"], params["tors"], params["torf"])
        else:
            raise ValueError(f"Unknown tautilt operation: {operation}")

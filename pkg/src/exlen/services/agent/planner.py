"""
Planner module for breaking a run down into check tasks.
"""

from typing import Any, Dict, List, Sequence
from dataclasses import dataclass
from pathlib import Path


@dataclass
class Task:
    """
    One step of a check plan.

    `params` values of None are filled from the result of the task with the
    same name; `dependencies` lists the tasks whose results this step reads.
    """
    name: str
    tool: str  # engine service: model, filt, torsion, lattice or tautilt
    params: Dict[str, Any]
    dependencies: List[str] = None

    def __post_init__(self):
        if self.dependencies is None:
            self.dependencies = []


class Planner:
    """Plans the task graph for each command family."""

    def plan_load(self, path: Path) -> List[Task]:
        """Load the document, then validate it; later tasks depend on "validation"."""
        return [
            Task(
                name="presentation",
                tool="model",
                params={"operation": "load", "path": path},
            ),
            Task(
                name="validation",
                tool="model",
                params={"operation": "validate", "presentation": None},
                dependencies=["presentation"],
            ),
        ]

    def plan_enumeration(self, kinds: Sequence[str] = ("tors",)) -> List[Task]:
        """Plan enumeration and lattice construction for each requested side."""
        tasks = []
        for kind in kinds:
            tasks += [
                Task(
                    name=kind,
                    tool="torsion",
                    params={"operation": f"enumerate_{kind}", "presentation": None},
                    dependencies=["validation"],
                ),
                Task(
                    name=f"{kind}_lattice",
                    tool="lattice",
                    params={"operation": "build", "presentation": None, "kind": kind, "elements": kind},
                    dependencies=[kind],
                ),
            ]
        return tasks

    def plan_lattice_checks(self) -> List[Task]:
        """
        Plan every lattice report over both lattices.

        Returns:
            List of tasks, each producing one or more reports
        """
        tasks = []
        for kind in ("tors", "torf"):
            for check in ("bounds", "labels", "semidistributive", "algebraic", "intervals"):
                tasks.append(Task(
                    name=f"{kind}_{check}",
                    tool="lattice",
                    params={"operation": check, "lattice": f"{kind}_lattice"},
                    dependencies=[f"{kind}_lattice"],
                ))
        tasks += [
            Task(name="standard", tool="lattice",
                 params={"operation": "standard", "presentation": None}, dependencies=["validation"]),
            Task(name="irreducible_bijections", tool="lattice",
                 params={"operation": "irreducible_bijections", "lattice": "tors_lattice"},
                 dependencies=["tors_lattice"]),
            Task(name="top_bottom_arrows", tool="lattice",
                 params={"operation": "top_bottom_arrows", "presentation": None, "lattice": "tors_lattice"},
                 dependencies=["tors_lattice"]),
            Task(name="duality", tool="lattice",
                 params={"operation": "duality", "presentation": None, "tors_lattice": None, "torf_lattice": None},
                 dependencies=["tors_lattice", "torf_lattice"]),
        ]
        return tasks

    def plan_report(self, path: Path) -> List[Task]:
        """Plan the full report: load, strata, semibricks, both lattices, every check and τ-tilting."""
        return (
            self.plan_load(path)
            + [
                Task(name="strata", tool="filt",
                     params={"operation": "strata", "presentation": None}, dependencies=["validation"]),
                Task(name="semibricks", tool="filt",
                     params={"operation": "semibricks", "presentation": None}, dependencies=["validation"]),
            ]
            + self.plan_enumeration(["tors", "torf"])
            + [
                Task(name="torsion_pairs", tool="torsion",
                     params={"operation": "pairs", "presentation": None, "tors": None, "torf": None},
                     dependencies=["tors", "torf"]),
            ]
            + self.plan_lattice_checks()
            + [
                Task(name="tautilt", tool="tautilt",
                     params={"operation": "reports", "presentation": None, "tors": None, "torf": None},
                     dependencies=["tors", "torf"]),
            ]
        )

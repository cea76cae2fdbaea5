"""
Lattice commands: tors, hasse, check, intervals.
"""

import logging

from . import exit_for, prepare
from ..errors import ExitCode
from ..models import CommandOutput, RunConfig
from ..services import lattice, torsion
from ..services.agent import Planner
from ..utils.dot import format_hasse_dot, format_report, format_table

logger = logging.getLogger(__name__)


def run_tors(config: RunConfig) -> CommandOutput:
    p, context, _ = prepare(config, ["tors"])
    elements = context["tors"]
    data = {"count": len(elements), "tors": [p.names(t) for t in elements]}
    if config.count:
        text = f"{len(elements)}\n"
    elif config.pairs:
        pairs = [torsion.torsion_pair_of(p, t) for t in elements]
        data["pairs"] = [[p.names(t), p.names(f)] for t, f in pairs]
        text = "".join(f"{p.format(t)}\t{p.format(f)}\n" for t, f in pairs)
    else:
        text = "".join(f"{p.format(t)}\n" for t in elements)
    return CommandOutput(command="tors", name=p.name, text=text, data=data)


def run_hasse(config: RunConfig) -> CommandOutput:
    p, context, _ = prepare(config, ["tors"])
    l = context["tors_lattice"]
    nodes = [p.format(t) for t in l.elements]
    arrows = [(upper, lower, p.ids[l.labels[(upper, lower)]] if (upper, lower) in l.labels else "?")
              for upper, lower in l.covers]
    if config.dot:
        config.dot.write_text(format_hasse_dot(p.name, nodes, arrows), encoding="utf-8")
        logger.info(f"Wrote {len(arrows)} arrows to {config.dot}")

    report = lattice.check_labels(l)
    lines = [f"{nodes[upper]} -> {nodes[lower]}\t{label}" for upper, lower, label in arrows]
    if not report.passed:
        lines += format_report(report)
    data = lattice.hasse_stats(l)
    data["hasse"] = [[nodes[upper], nodes[lower], label] for upper, lower, label in arrows]
    return CommandOutput(command="hasse", name=p.name, exit_code=exit_for([report]),
                         text="\n".join(lines) + "\n", data=data, reports=[report])


def run_check(config: RunConfig) -> CommandOutput:
    p, context, executor = prepare(config, ["tors", "torf"])
    tasks = Planner().plan_lattice_checks()
    context = executor.execute_plan(tasks, context)
    reports = [context[task.name] for task in tasks if task.name in context] + executor.failure_reports()

    l = context["tors_lattice"]
    rows = lattice.brick_table(p, l)
    lines = []
    for report in reports:
        lines += format_report(report)
    text = "\n".join(lines) + "\n\n" + format_table(
        ["brick", "jirr", "mirr"],
        [[row.brick, p.format(p.subcat(row.jirr)), p.format(p.subcat(row.mirr))] for row in rows],
    )
    data = lattice.hasse_stats(l)
    data["brick_table"] = [row.model_dump() for row in rows]
    return CommandOutput(command="check", name=p.name, exit_code=exit_for(reports),
                         text=text, data=data, reports=reports)


def run_intervals(config: RunConfig) -> CommandOutput:
    p, context, _ = prepare(config, ["tors"])
    l = context["tors_lattice"]
    rows, reports = [], []
    for u in l.elements:
        for t in l.elements:
            if not u.issubset(t):
                continue
            report = lattice.interval_check(p, l, u, t)
            reports.append(report)
            rows.append([p.format(u), p.format(t), report.data["size"],
                         p.format(p.subcat(report.data["bricks"])), report.data.get("label", "")])
    failed = [r for r in reports if not r.passed]
    text = format_table(["lower", "upper", "size", "bricks", "label"], rows)
    for report in failed:
        text += "\n".join(format_report(report)) + "\n"
    return CommandOutput(
        command="intervals", name=p.name,
        exit_code=ExitCode.CONTRACT if failed else ExitCode.OK,
        text=text, data={"intervals": len(rows), "failed": len(failed)}, reports=failed,
    )

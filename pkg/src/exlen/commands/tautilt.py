"""
The tautilt command: support torsion classes, P(T), I(F) and bijection verdicts.
"""

from . import exit_for, prepare
from ..models import CommandOutput, RunConfig
from ..services import tautilt
from ..utils.dot import format_report, format_table, yes_no


def run_tautilt(config: RunConfig) -> CommandOutput:
    p, context, _ = prepare(config, ["tors", "torf"])
    rows = tautilt.tautilt_rows(p, context["tors"])
    reports = tautilt.tautilt_reports(p, context["tors"], context["torf"])

    def fmt(ids):
        return p.format(p.subcat(ids))

    if config.table:
        text = format_table(
            ["tors", "torf", "P(T)", "I(F)", "support", "cosupport"],
            [[fmt(r.tors), fmt(r.torf), fmt(r.projectives), fmt(r.injectives),
              yes_no(r.support), yes_no(r.cosupport)] for r in rows],
        )
    else:
        lines = [
            f"T={fmt(r.tors)}\tP(T)={fmt(r.projectives)}\tF={fmt(r.torf)}\tI(F)={fmt(r.injectives)}"
            f"\t{tautilt.FINITE_CASE}={yes_no(r.support and r.cosupport)}"
            for r in rows
        ]
        for report in reports:
            lines += format_report(report)
        text = "\n".join(lines) + "\n"
    data = {"rows": [r.model_dump() for r in rows]}
    return CommandOutput(command="tautilt", name=p.name, exit_code=exit_for(reports),
                         text=text, data=data, reports=reports)

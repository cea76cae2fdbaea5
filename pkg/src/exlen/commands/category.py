"""
Category-level commands: validate, strata, simples, semibricks.
"""

import logging

from . import exit_for, prepare
from ..errors import ExitCode, ValidationFailed
from ..models import CheckReport, CommandOutput, RunConfig
from ..services import filt
from ..utils.dot import format_report, yes_no

logger = logging.getLogger(__name__)


def run_validate(config: RunConfig) -> CommandOutput:
    try:
        p, _, _ = prepare(config)
    except ValidationFailed as e:
        report = CheckReport(name="validation", violations=e.violations)
        return CommandOutput(command="validate", name=config.input.stem, exit_code=ExitCode.VALIDATION,
                             text="\n".join(format_report(report)) + "\n", reports=[report])
    report = CheckReport(name="validation", data={"indecs": p.n, "conflations": len(p.conflations)})
    text = f"OK {p.name}: {p.n} indecomposables, {len(p.conflations)} conflations\n"
    return CommandOutput(command="validate", name=p.name, text=text, reports=[report])


def run_strata(config: RunConfig) -> CommandOutput:
    p, _, _ = prepare(config)
    report = filt.strata_report(p, config.mult_cap, config.stable_only)
    lines = []
    if report.data:
        lines.append(f"theta1\t{p.format(p.subcat(report.data['theta1']))}")
        for level, members in report.data["levels"][1:]:
            lines.append(f"level {level}\t{p.format(p.subcat(members))}")
        lines.append(f"theta_inf\t{p.format(p.subcat(report.data['theta_inf']))}")
        lines.append(f"length wide\t{yes_no(report.data['length_wide'])}")
    lines += format_report(report)
    return CommandOutput(command="strata", name=p.name, exit_code=exit_for([report]),
                         text="\n".join(lines) + "\n", data=report.data, reports=[report])


def run_simples(config: RunConfig) -> CommandOutput:
    p, _, _ = prepare(config)
    scope = p.subcat(config.sub) if config.sub else p.full
    result = filt.simples(p, scope)
    data = {"scope": p.names(scope), "simples": p.names(result)}
    return CommandOutput(command="simples", name=p.name, text=p.format(result) + "\n", data=data)


def run_semibricks(config: RunConfig) -> CommandOutput:
    p, _, _ = prepare(config)
    report = filt.semibrick_report(p, config.mult_cap)
    if config.count:
        text = f"{report.data['count']}\n"
    else:
        lines = [
            f"{p.format(p.subcat(row['members']))}\tsms={yes_no(row['sms'])}"
            f"\troundtrip={yes_no(row['roundtrip'])}\tproper={yes_no(row['proper'])}"
            for row in report.data["semibricks"]
        ]
        text = "\n".join(lines + format_report(report)) + "\n"
    return CommandOutput(command="semibricks", name=p.name, exit_code=exit_for([report]),
                         text=text, data=report.data, reports=[report])

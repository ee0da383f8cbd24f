"""Text and JSON rendering of run reports."""

import json

from core.reports.models import CheckResult, InfoReport, RunReport, SuiteReport
from core.settings.types import OutputFormat


def _status(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def _check_line(check: CheckResult) -> str:
    line = f"  [{'ok' if check.passed else '!!'}] {check.name}"
    if check.value is not None:
        line += f": {check.value}"
    if check.expected is not None:
        line += f" (expected {check.expected})"
    if check.detail:
        line += f" - {check.detail}"
    return line


def _info_lines(info: InfoReport) -> list[str]:
    data = info.model_dump(mode="json")
    flag = "ok" if info.satisfied or not info.applicable else "!!"
    line = f"  [{flag}] {info.quantity} = {data['value']} <= {data['bound']} (slack {data['slack']})"
    if not info.applicable:
        line += " [precondition not met]"
    lines = [line]
    if info.note:
        lines.append(f"       {info.note}")
    for name, value in data["terms"].items():
        lines.append(f"       {name} = {value}")
    return lines


def _suite_lines(suite: SuiteReport) -> list[str]:
    lines = [f"[{suite.suite}] {_status(suite.passed)}"]
    lines.extend(_check_line(c) for c in suite.checks)
    for info in suite.info:
        lines.extend(_info_lines(info))
    if suite.counts:
        lines.append("  counts: " + ", ".join(f"{k}={v}" for k, v in suite.counts.items()))
    if suite.channels:
        lines.append("  channels (branch | z -> Bob | x -> Bob | strategies | I(z) | from erasure(1/2)):")
        for row in suite.channels:
            data = row.model_dump(mode="json")
            z = row.z_channel if row.z_parameter is None else f"{row.z_channel}({row.z_parameter})"
            x = row.x_channel if row.x_parameter is None else f"{row.x_channel}({row.x_parameter})"
            lines.append(
                f"    {row.branch} | {z} | {x} | {row.strategies} | {data['mutual_information']} | "
                f"{'yes' if row.erasure_postprocessing else 'no'}"
            )
    for example in suite.counterexamples:
        lines.append("  counterexample: " + json.dumps(example, sort_keys=True))
    lines.extend(f"  note: {note}" for note in suite.notes)
    return lines


def render_text(report: RunReport) -> str:
    """Human-readable report; identical reports render identically."""
    lines = [f"racbox {report.command}: {_status(report.passed)}"]
    if report.config:
        lines.append("config: " + " ".join(f"{k}={v}" for k, v in sorted(report.config.items())))
    for name, table in report.tables.items():
        lines.append(f"{name}:")
        lines.extend(f"  {row}" for row in table)
    for suite in report.suites:
        lines.extend(_suite_lines(suite))
    if report.skipped:
        lines.append("skipped: " + ", ".join(report.skipped))
    return "\n".join(lines) + "\n"


def render_json(report: RunReport) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"


def render(report: RunReport, output_format: OutputFormat) -> str:
    """Render a report in the configured format."""
    if output_format == OutputFormat.JSON:
        return render_json(report)
    return render_text(report)

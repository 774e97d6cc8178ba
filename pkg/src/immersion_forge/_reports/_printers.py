from __future__ import annotations

import logging
import typing as t
from abc import ABC, abstractmethod

from ._models import PipelineOutcome, PipelineReport

logger = logging.getLogger("immersion_forge")

PRINTERS = t.Literal["rich", "list", "logger"]

FORMAT_HEADER: t.Final = "format: 1"


class Titles:
    stage: t.Final = "Stage"
    status: t.Final = "Status"
    summary: t.Final = "Summary"
    strategy: t.Final = "Strategy"
    fins: t.Final = "Fins (#)"
    reason: t.Final = "Reason"


def _status(ok: bool) -> str:
    return "[green]ok[/green]" if ok else "[red]failed[/red]"


def _outcome_color(outcome: PipelineOutcome) -> str:
    if outcome is PipelineOutcome.FOUND:
        return "green"
    if outcome is PipelineOutcome.EXHAUSTED:
        return "yellow"

    return "red"


def report_lines(report: PipelineReport) -> t.List[str]:
    """The structured text trace written next to the immersion map"""
    lines = [
        FORMAT_HEADER,
        f"outcome: {report.outcome.value}",
        f"g: {report.g}",
        f"roots: {' '.join(str(s) for s in report.roots)}",
    ]

    for record in report.stages:
        lines.append(f"stage {record.stage.value} {'ok' if record.ok else 'failed'}: {record.summary}")
        lines.extend(f"  {detail}" for detail in record.details)

    for step in report.augmentations:
        lines.append(f"augment {step.root} {'ok' if step.ok else 'failed'}{': ' + step.reason if step.reason else ''}")

    for record, (primary, secondary) in zip(report.lifts, report.measures[1:]):
        lines.append(f"{record} measure {primary} {secondary}")

    for attempt in report.attempts:
        if attempt.failure is None:
            lines.append(f"strategy {attempt.strategy} fins {attempt.fins} ok")
        else:
            lines.append(f"strategy {attempt.strategy} fins {attempt.fins} failed: {attempt.failure.reason}")

    if report.certificate is not None:
        lines.append("oracle: a rooted immersion exists (the pipeline did not construct it)")

    return lines


class BasePrinter(ABC):
    @abstractmethod
    def print_report(self, report: PipelineReport) -> t.Any:
        pass


class RichPrinter(BasePrinter):
    def print_report(self, report: PipelineReport) -> None:
        from rich.console import Console
        from rich.table import Table

        console = Console()
        color = _outcome_color(report.outcome)
        table = Table(title=f"Grid immersion of J_{report.g}: [{color}]{report.outcome.value}[/{color}]")

        table.add_column(Titles.stage)
        table.add_column(Titles.status, justify="center")
        table.add_column(Titles.summary, overflow="fold")

        for record in report.stages:
            table.add_row(record.stage.value, _status(record.ok), record.summary)

        console.print(table)

        if not report.attempts:
            return

        attempts = Table(title="Strategy attempts")
        attempts.add_column(Titles.strategy)
        attempts.add_column(Titles.fins, justify="right")
        attempts.add_column(Titles.reason, overflow="fold")
        for attempt in report.attempts:
            reason = "" if attempt.failure is None else attempt.failure.reason
            attempts.add_row(attempt.strategy, f"{attempt.fins:,}", reason or _status(True))

        console.print(attempts)


class ListPrinter(BasePrinter):
    def print_report(self, report: PipelineReport) -> None:
        for line in report_lines(report):
            print(line)


class LoggerPrinter(BasePrinter):
    def print_report(self, report: PipelineReport) -> None:
        if report.found:
            logger.info(
                f"J_{report.g} immersed rooted at {len(report.roots)} vertices "
                f"after {len(report.lifts)} lift(s) and {len(report.attempts)} strategy attempt(s)"
            )
            return

        failed = report.failed_stage
        logger.warning(
            f"No rooted J_{report.g} constructed ({report.outcome.value})"
            + (f", stopped at {failed.stage.value}: {failed.summary}" if failed else "")
        )

        if report.certificate is not None:
            logger.info("The small-instance oracle still found a rooted immersion")


def print_report(report: PipelineReport, method: PRINTERS) -> t.Any:
    printer: t.Optional[BasePrinter] = None
    if method == "rich":
        printer = RichPrinter()
    elif method == "list":
        printer = ListPrinter()
    elif method == "logger":
        printer = LoggerPrinter()

    if printer:
        return printer.print_report(report)

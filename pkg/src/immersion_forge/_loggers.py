from __future__ import annotations

import logging
import typing as t
from enum import Enum

from ._models import LOG_EVENT_TYPE, LogEvent
from ._types import Unset

logger = logging.getLogger("immersion_forge")


class SafeDict(t.Dict[str, str]):
    def __missing__(self, key: str):
        return "{" + key + "}"


class DefaultLogMessage(str, Enum):
    STAGE = "Stage {STAGE} finished: {OUTCOME}"

    AUGMENT_DONE = "Root {ROOT} rewired with a fresh fin ({DONE}/{TOTAL} roots carry fins)"
    AUGMENT_FAILED = "Root {ROOT} could not be rewired: {REASON}"

    LIFT = (
        "Lifted edges {EDGE1},{EDGE2} at {VERTEX} into {EDGE0}; "
        "overlaps left {PRIMARY}, fin length {SECONDARY}"
    )

    STRATEGY_ATTEMPT = "Trying {STRATEGY} on {FINS} fins"
    STRATEGY_FAILED = "{STRATEGY} gave up: {REASON}"
    STRATEGY_DONE = "{STRATEGY} produced a verified immersion of J_{G}"

    OUTCOME = "Grid immersion search finished as {OUTCOME}"


def resolve_event(event: LOG_EVENT_TYPE, default: LogEvent) -> LogEvent | None:
    if isinstance(event, Unset):
        return default

    return event


def do_log(
    logevent: LogEvent | None,
    defaultmsg: str,
    format_args: dict[str, t.Any],
):
    if logevent is None:
        return

    # Let's protect ourselves against potential customizations with undefined {key}
    safe_format_args = SafeDict(**{k: str(v) for k, v in format_args.items()})

    if logevent.custom_message:
        if isinstance(logevent.custom_message, str):
            message = logevent.custom_message.format_map(safe_format_args)
        else:
            message = logevent.custom_message(format_args).format_map(safe_format_args)
    else:
        message = defaultmsg.format_map(safe_format_args)

    logger.log(logevent.level, message, extra=format_args)


def process_log_stage(logevent: LogEvent | None, stage: str, outcome: str) -> None:
    do_log(logevent, DefaultLogMessage.STAGE, dict(STAGE=stage, OUTCOME=outcome))


def process_log_augment(
    logevent: LogEvent | None,
    root: int,
    done: int,
    total: int,
    reason: str | None = None,
) -> None:
    format_args: t.Dict[str, t.Any] = dict(ROOT=root, DONE=done, TOTAL=total)

    if reason is None:
        do_log(logevent, DefaultLogMessage.AUGMENT_DONE, format_args)
    else:
        do_log(logevent, DefaultLogMessage.AUGMENT_FAILED, dict(**format_args, REASON=reason))


def process_log_lift(
    logevent: LogEvent | None,
    vertex: int,
    removed: t.Tuple[int, int],
    added: int,
    primary: int,
    secondary: int,
) -> None:
    format_args = dict(
        VERTEX=vertex,
        EDGE1=removed[0],
        EDGE2=removed[1],
        EDGE0=added,
        PRIMARY=primary,
        SECONDARY=secondary,
    )
    do_log(logevent, DefaultLogMessage.LIFT, format_args)


def process_log_strategy(
    logevent: LogEvent | None,
    defaultmsg: str,
    strategy: str,
    fins: int = 0,
    reason: str = "",
    g: int = 0,
) -> None:
    format_args = dict(STRATEGY=strategy, FINS=fins, REASON=reason, G=g)
    do_log(logevent, defaultmsg, format_args)


def process_log_outcome(logevent: LogEvent | None, outcome: str) -> None:
    do_log(logevent, DefaultLogMessage.OUTCOME, dict(OUTCOME=outcome))

from __future__ import annotations

import copy
import dataclasses
import logging
import typing as t
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum, IntEnum

from ._types import UNSET_VALUE, T, Unset
from .exceptions import ParameterError

if t.TYPE_CHECKING:
    from .wallgeom import FinSystem


class LogLevel(IntEnum):
    CRITICAL = logging.CRITICAL
    ERROR = logging.ERROR
    WARNING = logging.WARNING
    INFO = logging.INFO
    DEBUG = logging.DEBUG
    NOTSET = logging.NOTSET


@dataclass
class LogEvent:
    level: LogLevel
    custom_message: t.Callable[[t.Dict[str, t.Any]], str] | str | None = None
    """You can add some placeholders to be injected in the log.

    e.g.
      - `{STAGE} finished with {OUTCOME}`
      - `Lifted at {VERTEX}, crossings left: {PRIMARY}`
      - `{STRATEGY} gave up: {REASON}`

    Placeholders depend on the event. Callables receive the raw format args.
    """


LOG_EVENT_TYPE = t.Union[None, Unset, LogEvent]


class SearchStatus(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SearchResult(t.Generic[T]):
    status: SearchStatus
    value: T | None = None
    expansions: int = 0
    detail: str = ""

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    @property
    def exhausted(self) -> bool:
        return self.status is SearchStatus.BUDGET_EXHAUSTED

    def unwrap(self) -> T:
        if self.value is None:
            raise ValueError(f"Search finished as {self.status.value}, nothing to unwrap")  # noqa: TRY003

        return self.value


class BudgetExhausted(Exception):
    """Internal unwinding signal, never leaves the searching function"""


class Budget:
    """Counts backtracking-node expansions against a fixed limit"""

    def __init__(self, limit: int) -> None:
        if limit <= 0:
            raise ParameterError("budget", limit, "must be positive")

        self.limit = limit
        self.spent = 0

    def spend(self, amount: int = 1) -> None:
        self.spent += amount
        if self.spent > self.limit:
            raise BudgetExhausted()

    @property
    def left(self) -> int:
        return max(self.limit - self.spent, 0)


@dataclass(frozen=True)
class Violation:
    condition: t.Union[int, str]
    message: str
    witnesses: t.Tuple[t.Any, ...] = ()

    def __str__(self) -> str:
        return f"[{self.condition}] {self.message} {self.witnesses or ''}".rstrip()


@dataclass(frozen=True)
class Verdict:
    violations: t.Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    @property
    def conditions(self) -> t.Set[t.Union[int, str]]:
        return {v.condition for v in self.violations}

    def first(self, condition: t.Union[int, str]) -> Violation | None:
        for violation in self.violations:
            if violation.condition == condition:
                return violation

        return None

    @classmethod
    def of(cls, violations: t.Iterable[Violation]) -> Verdict:
        return cls(tuple(violations))


@dataclass(frozen=True)
class StrategyFailure:
    strategy: str
    reason: str
    detail: t.Tuple[t.Any, ...] = ()

    def __str__(self) -> str:
        return f"{self.strategy}: {self.reason}"


class StrategyPrecondition(ABC):
    """
    Run `check` raises `HypothesisViolated` in case the fins do not fit the strategy.
    """

    @abstractmethod
    def check(self, fs: FinSystem, config: PipelineConfig) -> None:
        """Returns `None` to pass or raise exception"""
        pass


@dataclass
class PipelineConfig:
    g: int = 2
    """Side of the grid J_g to immerse"""

    a1: int = 4
    """Separation required by the long-jumps routing (fin ends pairwise at least this far)"""

    a2: int = 4
    """Fins whose target is at least this far from their root count as far-target fins"""

    a3: int = 4
    """Separation required between roots by the short-jumps routing"""

    c: int = 4
    """Short-jumps accepts fins whose target is at most this far from their root"""

    wall_budget: int = 10**7
    immersion_budget: int = 10**7
    routing_budget: int = 10**7

    b_long: int | None = None
    """Minimum fins for long-jumps. `None` derives g'^2 + 1 (g' the even-promoted side)"""

    b_blob: int | None = None
    """Minimum degree-one roots for external-blob. `None` derives 2 * b_long"""

    b_short: int | None = None
    """Minimum fins for short-jumps. `None` derives g^2"""

    hub_min: int | None = None
    """How many other fins must touch one fin's interior to try external-blob. `None` derives 2 * b_long"""

    carve_radius_max: int | None = None
    """Largest branch radius short-jumps may carve around a root. `None` uses `c`"""

    oracle_max_vertices: int = 8
    """Hosts up to this size get a direct oracle answer when the pipeline fails"""

    log_stage: LOG_EVENT_TYPE = UNSET_VALUE
    log_augment: LOG_EVENT_TYPE = UNSET_VALUE
    log_lift: LOG_EVENT_TYPE = UNSET_VALUE
    log_strategy: LOG_EVENT_TYPE = UNSET_VALUE
    log_outcome: LOG_EVENT_TYPE = UNSET_VALUE

    def validate(self) -> PipelineConfig:
        if self.g < 2:
            raise ParameterError("g", self.g, "the grid side must be at least 2")

        for name in ("a1", "a2", "a3", "c"):
            if getattr(self, name) < 1:
                raise ParameterError(name, getattr(self, name), "thresholds must be >= 1")

        for name in ("wall_budget", "immersion_budget", "routing_budget"):
            if getattr(self, name) <= 0:
                raise ParameterError(name, getattr(self, name), "budgets must be > 0")

        for name in ("b_long", "b_blob", "b_short", "hub_min", "carve_radius_max"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ParameterError(name, value, "must be >= 1 when set")

        return self

    @property
    def even_g(self) -> int:
        return self.g + (self.g % 2)

    @property
    def long_fins_needed(self) -> int:
        if self.b_long is not None:
            return self.b_long

        return self.even_g**2 + 1

    @property
    def blob_roots_needed(self) -> int:
        if self.b_blob is not None:
            return self.b_blob

        return 2 * self.long_fins_needed

    @property
    def short_fins_needed(self) -> int:
        if self.b_short is not None:
            return self.b_short

        return self.g**2

    @property
    def hub_threshold(self) -> int:
        if self.hub_min is not None:
            return self.hub_min

        return 2 * self.long_fins_needed

    @property
    def separation(self) -> int:
        """The dispatcher selects roots pairwise at least this far apart"""
        return max(self.a1, self.a2, self.a3)

    @property
    def carve_limit(self) -> int:
        return self.carve_radius_max if self.carve_radius_max is not None else self.c

    def replace(self, **changes: t.Any) -> PipelineConfig:
        return dataclasses.replace(self, **changes).validate()

    @classmethod
    def merge_config(cls, base: PipelineConfig, modifier: PipelineConfig) -> PipelineConfig:
        """Fields the modifier leaves unset (or at their default) keep the base value"""
        new_obj = copy.copy(base)

        for f in dataclasses.fields(cls):
            value = getattr(modifier, f.name)
            if isinstance(value, Unset) or value == getattr(DEFAULT_CONFIG, f.name):
                continue

            setattr(new_obj, f.name, value)

        return new_obj.validate()

    @classmethod
    def from_pairs(
        cls, pairs: t.Iterable[str], base: PipelineConfig | None = None
    ) -> PipelineConfig:
        """Builds a config out of `key=value` overrides, as given to `--set`"""
        base = base or DEFAULT_CONFIG
        known = {f.name: f for f in dataclasses.fields(cls) if not f.name.startswith("log_")}
        changes: t.Dict[str, t.Any] = {}

        for pair in pairs:
            key, sep, raw = pair.partition("=")
            key = key.strip()
            if not sep or key not in known:
                raise ParameterError("set", pair, f"expected key=value with key in {sorted(known)}")

            raw = raw.strip()
            if raw.lower() in ("none", "") and key in _OPTIONAL_INT_KEYS:
                changes[key] = None
                continue

            try:
                changes[key] = int(raw.replace("_", ""))
            except ValueError as exc:
                raise ParameterError(key, raw, "expected an integer") from exc

        return base.replace(**changes)


_OPTIONAL_INT_KEYS: t.Final = frozenset(
    {"b_long", "b_blob", "b_short", "hub_min", "carve_radius_max"}
)


@dataclass(frozen=True)
class DefaultLogEvents:
    stage: LogEvent = field(default_factory=lambda: LogEvent(LogLevel.DEBUG))
    augment: LogEvent = field(default_factory=lambda: LogEvent(LogLevel.DEBUG))
    lift: LogEvent = field(default_factory=lambda: LogEvent(LogLevel.DEBUG))
    strategy: LogEvent = field(default_factory=lambda: LogEvent(LogLevel.INFO))
    outcome: LogEvent = field(default_factory=lambda: LogEvent(LogLevel.INFO))


DEFAULT_LOG_EVENTS: t.Final = DefaultLogEvents()

DEFAULT_CONFIG: t.Final = PipelineConfig()

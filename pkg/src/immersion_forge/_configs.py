from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar

from ._models import DEFAULT_CONFIG, PipelineConfig

custom_config_context: ContextVar[PipelineConfig | None] = ContextVar(
    "forge_context", default=None
)


@contextmanager
def custom_forge_config(config: PipelineConfig):
    token = custom_config_context.set(config.validate())

    try:
        yield
    finally:
        try:
            custom_config_context.reset(token)
        except Exception:
            pass  # Best effort


def active_config(config: PipelineConfig | None = None) -> PipelineConfig:
    """Explicit argument first, then the surrounding `custom_forge_config`, then defaults"""
    if config is not None:
        return config.validate()

    return custom_config_context.get() or DEFAULT_CONFIG

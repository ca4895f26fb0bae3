"""Run configuration: defaults, environment overrides and CLI arguments."""

from __future__ import annotations

import os
from dataclasses import dataclass

from src.fields import FieldCtx, field_new

DEFAULT_COLUMN_BUDGET = 10 ** 7
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"

BUDGET_ENV = "GLCODE_BUDGET"
WORKERS_ENV = "GLCODE_WORKERS"
LOG_LEVEL_ENV = "GLCODE_LOG_LEVEL"

OUTPUT_FORMATS = ("json", "csv", "text")
VERIFY_LEVELS = ("fast", "full")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _positive_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if not value:
        return default
    try:
        parsed = int(value)
    except ValueError:
        raise ValueError(f"{name}={value!r} is not an integer") from None
    if parsed < 1:
        raise ValueError(f"{name}={parsed} must be at least 1")
    return parsed


def column_budget() -> int:
    return _positive_int(BUDGET_ENV, DEFAULT_COLUMN_BUDGET)


def default_workers() -> int:
    return _positive_int(WORKERS_ENV, DEFAULT_WORKERS)


def log_level() -> str:
    value = os.getenv(LOG_LEVEL_ENV, DEFAULT_LOG_LEVEL).upper()
    if value not in LOG_LEVELS:
        raise ValueError(f"{LOG_LEVEL_ENV}={value!r} is not one of {', '.join(LOG_LEVELS)}")
    return value


def parse_modulus(text: str | None) -> tuple[int, ...] | None:
    """'1,1,1' -> (1, 1, 1), lowest coefficient first."""
    if text is None:
        return None
    try:
        coefficients = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"--poly {text!r} is not a comma-separated list of integers") from None
    if not coefficients:
        raise ValueError("--poly needs at least one coefficient")
    return coefficients


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    q: int | None = None
    modulus: tuple[int, ...] | None = None
    format: str = "json"
    budget: int = DEFAULT_COLUMN_BUDGET
    workers: int = DEFAULT_WORKERS
    out: str | None = None
    level: str = "fast"
    full_c: bool = False

    def __post_init__(self):
        if self.format not in OUTPUT_FORMATS:
            raise ValueError(f"format {self.format!r} is not one of {', '.join(OUTPUT_FORMATS)}")
        if self.level not in VERIFY_LEVELS:
            raise ValueError(f"level {self.level!r} is not one of {', '.join(VERIFY_LEVELS)}")
        if self.workers < 1:
            raise ValueError(f"workers={self.workers} must be at least 1")
        if self.budget < 1:
            raise ValueError(f"budget={self.budget} must be at least 1")

    def field(self) -> FieldCtx:
        if self.q is None:
            raise ValueError(f"{self.command} needs --q")
        return field_new(self.q, self.modulus)

    @classmethod
    def from_args(cls, args) -> RunConfig:
        """Overlay parsed arguments on the environment defaults."""
        return cls(
            command=args.command,
            n=getattr(args, "n", None),
            q=getattr(args, "q", None),
            modulus=parse_modulus(getattr(args, "poly", None)),
            format=getattr(args, "format", None) or "json",
            budget=args.budget if getattr(args, "budget", None) is not None else column_budget(),
            workers=args.workers if getattr(args, "workers", None) is not None else default_workers(),
            out=getattr(args, "out", None),
            level=getattr(args, "level", None) or "fast",
            full_c=bool(getattr(args, "full_c", False)),
        )

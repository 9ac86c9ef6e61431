"""Logging setup for experiment runs.

Console records go to stderr because stdout carries query results. Every
record is stamped with the run context (subcommand and master seed) so the
JSON log of a run can be joined with its manifest.
"""

import json
import logging
import logging.handlers
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

_STANDARD_ATTRS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {
    "message",
    "asctime",
}


class RunContextFilter(logging.Filter):
    """Attach the current run context to every record passing a handler."""

    def __init__(self) -> None:
        super().__init__()
        self.context: dict[str, Any] = {}

    def filter(self, record: logging.LogRecord) -> bool:
        for key, value in self.context.items():
            if not hasattr(record, key):
                setattr(record, key, value)
        return True


_RUN_CONTEXT = RunContextFilter()


def bind_run_context(**context: Any) -> None:
    """Replace the run context stamped on subsequent records."""
    _RUN_CONTEXT.context = {k: v for k, v in context.items() if v is not None}


def _record_context(record: logging.LogRecord) -> dict[str, Any]:
    return {k: v for k, v in vars(record).items() if k not in _STANDARD_ATTRS}


class JSONFormatter(logging.Formatter):
    """One JSON object per record; run context and extra= fields under "context"."""

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "time": datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        context = _record_context(record)
        if context:
            entry["context"] = context
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


class ConsoleFormatter(logging.Formatter):
    """Short human-readable lines, colored on a terminal."""

    COLORS = {
        "DEBUG": "\033[2m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[1;31m",
    }
    RESET = "\033[0m"

    def __init__(self, use_colors: bool = False) -> None:
        super().__init__()
        self.use_colors = use_colors

    def format(self, record: logging.LogRecord) -> str:
        level = f"{record.levelname:<7}"
        if self.use_colors:
            level = f"{self.COLORS.get(record.levelname, '')}{level}{self.RESET}"
        stamp = datetime.fromtimestamp(record.created).strftime("%H:%M:%S")
        module = record.name.rsplit(".", 1)[-1]
        line = f"{stamp} {level} {module}: {record.getMessage()}"
        context = _record_context(record)
        if "seed" in context:
            line += f" [seed={context['seed']}]"
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line


def setup_logging(
    level: str = "INFO",
    log_format: str = "simple",
    log_file: str | Path | None = None,
    max_size_mb: int = 10,
    backup_count: int = 3,
) -> None:
    """Install the console handler and an optional rotating JSON file handler.

    Args:
        level: Root level name
        log_format: "simple" or "structured" (JSON) console output
        log_file: Optional JSON log file
        max_size_mb: Rotation size of the log file
        backup_count: Rotated files kept
    """
    root = logging.getLogger()
    root.setLevel(getattr(logging, level.upper(), logging.INFO))
    for handler in list(root.handlers):
        root.removeHandler(handler)

    console = logging.StreamHandler(sys.stderr)
    if log_format == "structured":
        console.setFormatter(JSONFormatter())
    else:
        console.setFormatter(ConsoleFormatter(use_colors=sys.stderr.isatty()))
    console.addFilter(_RUN_CONTEXT)
    root.addHandler(console)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        rotating = logging.handlers.RotatingFileHandler(
            path, maxBytes=max_size_mb * 1024 * 1024, backupCount=backup_count, encoding="utf-8"
        )
        rotating.setFormatter(JSONFormatter())
        rotating.addFilter(_RUN_CONTEXT)
        root.addHandler(rotating)

"""Run manifest: one JSON record per experiment."""

import hashlib
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from .. import __version__

logger = logging.getLogger(__name__)


def file_digest(path: str | Path) -> str:
    """SHA-256 hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _now() -> datetime:
    return datetime.now(timezone.utc)


class RunManifest(BaseModel):
    """Command line, resolved configuration and output digests of one run."""

    command: list[str]
    subcommand: str
    config: dict[str, Any]
    seed: int
    version: str = __version__
    started_at: datetime = Field(default_factory=_now)
    finished_at: datetime | None = None
    status: str = "running"
    exit_code: int | None = None
    outputs: dict[str, str] = Field(default_factory=dict)
    error: dict[str, Any] | None = None

    def add_output(self, path: str | Path) -> None:
        self.outputs[str(path)] = file_digest(path)

    def finish(self, exit_code: int, error: dict[str, Any] | None = None) -> None:
        self.finished_at = _now()
        self.exit_code = int(exit_code)
        self.status = "ok" if exit_code == 0 else "failed"
        self.error = error

    def stale_outputs(self) -> list[str]:
        """Outputs whose current digest differs from the recorded one."""
        stale = []
        for name, recorded in self.outputs.items():
            if not Path(name).exists() or file_digest(name) != recorded:
                stale.append(name)
        return stale

    def write(self, path: str | Path) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.debug("Manifest written to %s", target)
        return target

    @classmethod
    def read(cls, path: str | Path) -> "RunManifest":
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))

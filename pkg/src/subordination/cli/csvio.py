"""CSV artifacts with one metadata comment line.

Layout of every file:

    # key=value;key=value
    col_a,col_b
    ...

Floats are written with 17 significant digits so reruns are byte-identical.
"""

import csv
import io
import math
import sys
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ConfigurationError

FLOAT_FORMAT = "%.17g"


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float | np.floating):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return FLOAT_FORMAT % v
    if value is None:
        return ""
    return str(value)


def format_meta(meta: Mapping[str, Any]) -> str:
    """Metadata comment line (without newline)."""
    pairs = (f"{key}={format_value(value)}" for key, value in meta.items())
    return "# " + ";".join(pairs)


def parse_meta(line: str) -> dict[str, str]:
    body = line.lstrip("#").strip()
    out: dict[str, str] = {}
    for pair in filter(None, body.split(";")):
        key, _, value = pair.partition("=")
        out[key] = value
    return out


class _Sink:
    """Open a path for writing, or wrap stdout for None / '-'."""

    def __init__(self, path: str | Path | None) -> None:
        self.path = None if path in (None, "-") else Path(path)  # type: ignore[arg-type]
        self._handle: IO[str] | None = None

    def __enter__(self) -> IO[str]:
        if self.path is None:
            return sys.stdout
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = self.path.open("w", encoding="utf-8", newline="")
        return self._handle

    def __exit__(self, *exc: object) -> None:
        if self._handle is not None:
            self._handle.close()


def write_table(
    path: str | Path | None,
    columns: Mapping[str, ArrayLike],
    meta: Mapping[str, Any],
) -> Path | None:
    """Write equal-length numeric columns; path None writes to stdout."""
    names = list(columns)
    data = np.column_stack([np.asarray(columns[name], dtype=np.float64) for name in names])
    header = format_meta(meta) + "\n" + ",".join(names)
    with _Sink(path) as handle:
        np.savetxt(handle, data, fmt=FLOAT_FORMAT, delimiter=",", header=header, comments="")
    return None if path in (None, "-") else Path(path)


def write_rows(
    path: str | Path | None,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    meta: Mapping[str, Any],
) -> Path | None:
    """Write rows of mixed numbers and labels."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    with _Sink(path) as handle:
        handle.write(format_meta(meta) + "\n")
        handle.write(buffer.getvalue())
    return None if path in (None, "-") else Path(path)


@dataclass(frozen=True)
class Table:
    """A numeric CSV artifact read back from disk."""

    meta: dict[str, str]
    columns: dict[str, NDArray[np.float64]]

    def __getitem__(self, name: str) -> NDArray[np.float64]:
        return self.columns[name]


def read_table(path: str | Path) -> Table:
    """Read a numeric artifact written by write_table.

    Raises:
        ConfigurationError: If the file is missing or has no header
    """
    source = Path(path)
    try:
        lines = source.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise ConfigurationError(f"Cannot read table {source}", cause=e) from e

    meta: dict[str, str] = {}
    if lines and lines[0].startswith("#"):
        meta = parse_meta(lines.pop(0))
    if not lines:
        raise ConfigurationError(f"Table {source} has no header", details={"path": str(source)})
    names = lines[0].split(",")
    body = [line for line in lines[1:] if line.strip()]
    data = np.loadtxt(body, delimiter=",", ndmin=2) if body else np.empty((0, len(names)))
    if data.shape[1] != len(names):
        raise ConfigurationError(
            f"Table {source} rows do not match its header",
            details={"columns": len(names), "values": data.shape[1]},
        )
    return Table(meta, {name: data[:, i] for i, name in enumerate(names)})


def sibling(path: str | Path, suffix: str) -> Path:
    """`out.csv` -> `out.<suffix>.csv` next to the original artifact."""
    p = Path(path)
    stem = p.name[: -len(p.suffix)] if p.suffix else p.name
    return p.with_name(f"{stem}.{suffix}.csv")

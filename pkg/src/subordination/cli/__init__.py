"""Command suite: argument parsing, CSV artifacts and run manifests."""

from .app import build_parser, run
from .csvio import Table, read_table, write_rows, write_table
from .manifest import RunManifest, file_digest

__all__ = [
    "build_parser",
    "run",
    "Table",
    "read_table",
    "write_rows",
    "write_table",
    "RunManifest",
    "file_digest",
]

"""Command suite entry point.

Usage:
    python -m subordination <command> [options]

Run `python -m subordination --help` for the list of commands.
"""

import sys

from .cli.app import run


def main() -> int:
    """Entry point of the `subordination` console script."""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())

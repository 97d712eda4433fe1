"""Small CSV writing helpers shared by the harness and the CLI."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Sequence

__all__ = ["write_table"]


def write_table(
    path: Path | str,
    header_comments: Sequence[str],
    columns: Sequence[str],
    rows: Sequence[Sequence[str]],
) -> None:
    """Write a delimited table with `# `-prefixed provenance lines."""
    path = Path(path)
    buf = io.StringIO()
    for line in header_comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(columns))
    for row in rows:
        writer.writerow(list(row))
    path.write_text(buf.getvalue(), encoding="utf-8")

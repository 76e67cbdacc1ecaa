#!/usr/bin/env python3
"""
Output helpers: JSON payloads on stdout, status lines on stderr.
"""

import csv
import io
import json
from typing import Any, Iterable, List, Sequence, Union

import click
from pydantic import BaseModel

ICONS = {
    "error": "❌",
    "warning": "⚠️ ",
    "ok": "✅",
    "progress": "🔧",
    "summary": "📋",
}


def stream_status(message: str, level: str = "progress") -> None:
    """
    Print one diagnostic line to stderr.

    Args:
        message: The text to show
        level: One of error, warning, ok, progress, summary
    """
    click.echo(f"{ICONS.get(level, '')} {message}", err=True)


def stream_json(payload: Union[BaseModel, Any], compact: bool = False) -> None:
    """Print a payload as JSON on stdout."""
    if isinstance(payload, BaseModel):
        text = payload.model_dump_json(indent=None if compact else 2, by_alias=True)
    else:
        text = json.dumps(payload, indent=None if compact else 2)
    click.echo(text)


def stream_table(rows: Iterable[Sequence[Any]], headers: Sequence[str]) -> None:
    """Print an aligned text table to stderr."""
    rows = [[str(cell) for cell in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    click.echo(line, err=True)
    click.echo("=" * len(line), err=True)
    for row in rows:
        click.echo("  ".join(cell.ljust(w) for cell, w in zip(row, widths)), err=True)


def csv_text(rows: Iterable[Sequence[Any]], headers: List[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()

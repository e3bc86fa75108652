"""Rendering of command results as rich text or versioned JSON."""

import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from rich.console import Console
from rich.table import Table
from rich.text import Text

SCHEMA_VERSION = 1


@dataclass
class Report:
    """A command result: summary lines, an optional table and a JSON mirror."""

    lines: List[str]
    data: Dict[str, Any]
    title: Optional[str] = None
    columns: Sequence[str] = ()
    rows: List[Sequence[Any]] = field(default_factory=list)

    def to_json(self, schema: int = SCHEMA_VERSION) -> str:
        return json.dumps({"schema": schema, **self.data}, sort_keys=True)

    def to_text(self, width: int = 100) -> str:
        buffer = io.StringIO()
        console = Console(file=buffer, width=width, no_color=True, highlight=False, emoji=False, soft_wrap=True)
        for line in self.lines:
            console.print(line, markup=False)
        if self.columns:
            table = Table(title=Text(self.title) if self.title else None)
            for column in self.columns:
                table.add_column(column)
            for row in self.rows:
                table.add_row(*(Text(str(cell)) for cell in row))
            console.print(table)
        return buffer.getvalue().rstrip("\n")

    def render(self, as_json: bool, schema: int = SCHEMA_VERSION) -> str:
        return self.to_json(schema) if as_json else self.to_text()


def error_console() -> Console:
    return Console(stderr=True, highlight=False)

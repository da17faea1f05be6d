"""Deterministic CSV/JSON rendering of result tables."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

SIG_DIGITS = 12


def fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "1" if value else "0"
    text = f"{float(value):.{SIG_DIGITS}g}"
    # avoid "-0" so that sign noise at zero cannot change the bytes
    return "0" if text in ("-0", "0") else text


def _json_number(value):
    if isinstance(value, str):
        return value
    value = float(fmt(value))
    return None if value != value else value


@dataclass
class Table:
    """A header of metadata, named columns, rows and optional footer sections."""

    kind: str
    metadata: list  # (key, value) pairs
    columns: list
    rows: list
    footer: dict = field(default_factory=dict)  # name -> list of values

    def to_csv(self) -> str:
        lines = [f"# command = {self.kind}"]
        lines += [f"# {key} = {fmt(value)}" for key, value in self.metadata]
        lines.append(",".join(self.columns))
        lines += [",".join(fmt(v) for v in row) for row in self.rows]
        for name, values in self.footer.items():
            lines.append(f"# {name} = " + " ".join(fmt(v) for v in values))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "command": self.kind,
            "config": {key: _json_number(value) for key, value in self.metadata},
            "columns": list(self.columns),
            "rows": [[_json_number(v) for v in row] for row in self.rows],
        }
        if self.footer:
            doc["footer"] = {name: [_json_number(v) for v in values]
                             for name, values in self.footer.items()}
        return json.dumps(doc, indent=1, allow_nan=False) + "\n"

    def render(self, fmt_name: str) -> str:
        if fmt_name == "csv":
            return self.to_csv()
        if fmt_name == "json":
            return self.to_json()
        raise ValueError(f"unknown output format {fmt_name!r}")

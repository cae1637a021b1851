# ttfkit/report.py
"""
The report every CLI command prints.

Reports are line oriented: ``key: value`` pairs, nested mappings indented by
two spaces, sequences as ``- item`` lines. Only exact values are rendered
(integers, fractions, strings, booleans), and mappings keep the insertion
order the commands build them in, so identical inputs give identical bytes.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from ttfkit import __version__

INDENT = "  "


@dataclass(frozen=True)
class Report:
    command: str
    status: str
    payload: dict = field(default_factory=dict)
    version: str = __version__
    seed: int = 0

    def render(self):
        lines = [f"command: {self.command}",
                 f"status: {self.status}",
                 f"version: {self.version}",
                 f"seed: {self.seed}"]
        if self.payload:
            lines.append("payload:")
            lines += _render_mapping(self.payload, 1)
        return "\n".join(lines) + "\n"


def scalar(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, float):
        raise TypeError("reports only carry exact values")
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, tuple):
        return "(" + ", ".join(scalar(x) for x in value) + ")"
    return str(value)


def _render_mapping(mapping, depth):
    pad = INDENT * depth
    lines = []
    for key, value in mapping.items():
        if isinstance(value, dict):
            if value:
                lines.append(f"{pad}{key}:")
                lines += _render_mapping(value, depth + 1)
            else:
                lines.append(f"{pad}{key}: {{}}")
        elif isinstance(value, list):
            if value:
                lines.append(f"{pad}{key}:")
                lines += _render_sequence(value, depth + 1)
            else:
                lines.append(f"{pad}{key}: []")
        else:
            lines.append(f"{pad}{key}: {scalar(value)}")
    return lines


def _render_sequence(items, depth):
    pad = INDENT * depth
    lines = []
    for item in items:
        if isinstance(item, dict):
            nested = _render_mapping(item, depth + 1)
            first = nested[0].lstrip() if nested else "{}"
            lines.append(f"{pad}- {first}")
            lines += nested[1:]
        elif isinstance(item, list):
            lines.append(f"{pad}-")
            lines += _render_sequence(item, depth + 1)
        else:
            lines.append(f"{pad}- {scalar(item)}")
    return lines

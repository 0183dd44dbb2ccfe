"""Deterministic CSV tables with trailing ``#`` comment lines."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

_NUMBER = re.compile(r"^-?\d+\.\d+$")


def format_number(x: float, precision: int) -> str:
    """Fixed-point, locale independent; never emits a negative zero."""
    s = f"{float(x) + 0.0:.{precision}f}"
    if s.startswith("-") and set(s[1:]) <= {"0", "."}:
        s = s[1:]
    return s


@dataclass
class Table:
    header: list
    rows: list = field(default_factory=list)
    comments: list = field(default_factory=list)
    precision: int = 9

    def format_cell(self, v) -> str:
        if isinstance(v, str):
            return v
        return format_number(v, self.precision)

    def to_text(self) -> str:
        lines = [",".join(self.header)]
        lines += [",".join(self.format_cell(v) for v in row) for row in self.rows]
        lines += [f"# {c}" for c in self.comments]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> Table:
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        header = lines[0].split(",")
        rows, comments, precision = [], [], None
        for line in lines[1:]:
            if line.startswith("#"):
                comments.append(line[2:] if line.startswith("# ") else line[1:])
                continue
            if comments:
                raise ValueError("data row after comment block")
            row = []
            for cell in line.split(","):
                if _NUMBER.match(cell):
                    digits = len(cell.split(".")[1])
                    if precision is None:
                        precision = digits
                    elif digits != precision:
                        raise ValueError(f"mixed precision in cell {cell!r}")
                    row.append(float(cell))
                else:
                    row.append(cell)
            rows.append(row)
        return cls(header, rows, comments, 9 if precision is None else precision)

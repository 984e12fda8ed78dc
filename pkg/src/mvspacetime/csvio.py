"""CSV with a header row, 17-significant-digit values and ``#`` footer comments."""
import io
from pathlib import Path

import numpy as np

from .errors import ValidationError


def _fmt(x):
    return f"{x:.17g}"


def format_csv(header, rows, footer=None):
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(float(x)) for x in row) + "\n")
    for key, value in (footer or {}).items():
        value = _fmt(value) if isinstance(value, float) else str(value)
        out.write(f"# {key} = {value}\n")
    return out.getvalue()


def write_csv(path, header, rows, footer=None):
    Path(path).write_text(format_csv(header, rows, footer), encoding="utf-8")


def parse_csv(text):
    """Inverse of ``format_csv``: returns ``(header, rows, footer)``."""
    lines = text.splitlines()
    if not lines:
        raise ValidationError("empty CSV")
    header = lines[0].split(",")
    rows, footer = [], {}
    for line in lines[1:]:
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            footer[key.strip()] = value.strip()
        elif line.strip():
            rows.append([float(x) for x in line.split(",")])
    data = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return header, data, footer


def read_csv(path):
    return parse_csv(Path(path).read_text(encoding="utf-8"))

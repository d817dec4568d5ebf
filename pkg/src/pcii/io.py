"""Matrix CSV formats and the structured analysis document.

``csv-full`` holds all ``n`` rows of ``n`` values. ``csv-upper`` holds only
the upper triangle: ``n - 1`` lines of shrinking length, so line ``i`` has
``n - 1 - i`` values and the lower triangle follows by reciprocity.

Structured documents are JSON. Floats are written with 17 significant digits
so that every double survives the round trip unchanged.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

from . import __version__
from .core import PCMatrix, from_upper_triangle, new_pc_matrix
from .errors import ParseError, ValidationError

FORMATS = ("csv-full", "csv-upper")


def _number(token: str, line: int, column: int) -> float:
    token = token.strip()
    if not token:
        raise ParseError("empty cell", line, column)
    try:
        return float(token)
    except ValueError:
        pass
    try:
        return float(Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {token!r}", line, column) from None


def _rows(text: str) -> list[list[float]]:
    lines = text.rstrip("\r\n \t").splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("file contains no values", 1)
    rows = []
    for lineno, fields in enumerate(csv.reader(lines), start=1):
        if not fields or all(not f.strip() for f in fields):
            raise ParseError("blank line inside matrix", lineno)
        rows.append([_number(tok, lineno, col) for col, tok in enumerate(fields, start=1)])
    return rows


def parse_matrix_text(text: str, fmt: str = "csv-full") -> PCMatrix:
    """Parse CSV text in ``fmt``; see :func:`parse_matrix`."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    rows = _rows(text)
    if fmt == "csv-full":
        n = len(rows)
        for lineno, row in enumerate(rows, start=1):
            if len(row) != n:
                raise ParseError(f"expected {n} values per row, found {len(row)}", lineno)
        return new_pc_matrix(rows)

    n = len(rows[0]) + 1
    if len(rows) != n - 1:
        raise ParseError(f"first line implies {n - 1} lines for n={n}, found {len(rows)}", len(rows))
    for lineno, row in enumerate(rows, start=1):
        if len(row) != n - lineno:
            raise ParseError(f"expected {n - lineno} values, found {len(row)}", lineno)
    return from_upper_triangle(n, [v for row in rows for v in row])


def parse_matrix(path: str | Path, fmt: str = "csv-full") -> PCMatrix:
    """Read a PC matrix from a UTF-8 CSV file.

    Cells accept decimal numbers (``.`` as the decimal point) and plain
    fractions such as ``1/3``.

    Raises:
        ParseError: malformed CSV; carries 1-based ``line`` and ``column``.
        ValidationError: parsed values do not form a PC matrix; carries the
            0-based ``cell`` of the first offending entry.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_matrix_text(text, fmt)
    except ValidationError as exc:
        exc.args = (f"{path}: {exc.args[0]}",)
        raise


def serialize_matrix(m: PCMatrix, fmt: str = "csv-full") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = m.tolist()
    if fmt == "csv-full":
        writer.writerows([repr(v) for v in row] for row in rows)
    else:
        writer.writerows([repr(v) for v in row[i + 1:]] for i, row in enumerate(rows[:-1]))
    return buf.getvalue()


def write_matrix(m: PCMatrix, path: str | Path, fmt: str = "csv-full") -> None:
    Path(path).write_text(serialize_matrix(m, fmt), encoding="utf-8")


def format_float(v: float) -> str:
    """17-significant-digit JSON literal; non-finite values become ``null``."""
    if not math.isfinite(v):
        return "null"
    s = format(v, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _emit(obj, level: int, out: list[str]) -> None:
    pad = "  " * (level + 1)
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for n, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(key))}: ")
            _emit(value, level + 1, out)
            out.append(",\n" if n < len(obj) - 1 else "\n")
        out.append("  " * level + "}")
    elif isinstance(obj, (list, tuple)):
        # flat numeric rows stay on one line
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            out.append("[")
            for n, value in enumerate(obj):
                if n:
                    out.append(", ")
                _emit(value, level, out)
            out.append("]")
            return
        out.append("[\n")
        for n, value in enumerate(obj):
            out.append(pad)
            _emit(value, level + 1, out)
            out.append(",\n" if n < len(obj) - 1 else "\n")
        out.append("  " * level + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_document(doc: dict) -> str:
    out: list[str] = []
    _emit(doc, 0, out)
    out.append("\n")
    return "".join(out)


def loads_document(text: str) -> dict:
    return json.loads(text)


def document_header(command: str, parameters: dict) -> dict:
    return {"tool": "pcii", "version": __version__, "command": command, "parameters": parameters}


def analysis_document(m: PCMatrix, report, parameters: dict) -> dict:
    """Structured form of an :class:`~pcii.indicators.IndicatorReport`."""
    doc = document_header("analyze", parameters)
    doc["input"] = {"n": m.n, "matrix": m.tolist()}
    doc["triads"] = [
        {
            "indices": list(r.indices),
            "x": r.x,
            "y": r.y,
            "z": r.z,
            "kii": r.kii,
            "distance": r.distance,
            "relative_error": r.relative_error,
        }
        for r in report.per_triad
    ]
    doc["matrix_kii"] = report.matrix_kii
    doc["worst_triad"] = list(report.worst_triad)
    doc["ci"] = report.ci
    doc["tolerance"] = report.tolerance
    doc["consistent"] = report.consistent
    return doc

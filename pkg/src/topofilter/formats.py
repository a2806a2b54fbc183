"""Plain-text file formats used by the command line.

Coefficient file::

    # comments and blank lines are ignored
    b: 1 2 1
    a: -1.0 0.5

``a`` lists a_1..a_N (a_0 = 1 is implied) and may be omitted.

Signal CSV: one sample per line, with an optional first line ``sample``.

Section file::

    section order=2 vertices=3
    v0: 0 0 1
    v1: 0 1 0
    v2: 1 0.5 0
    e0: 0 1
    e1: 1 0.5

Vertex lines come first, then edge lines, each tagged with its simplex id.
Floats are written with 17 significant digits so they read back bit-exactly.
"""

from __future__ import annotations

import math
import re
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .errors import TopoFilterError
from .filters import FilterCoefficients, normalize_coefficients
from .sheaf import StateSection

PathLike = Union[str, Path]

__all__ = [
    "ParseError",
    "format_float",
    "parse_coefficients",
    "read_coefficients",
    "format_coefficients",
    "parse_signal",
    "read_signal",
    "write_signal",
    "format_section",
    "parse_section",
    "read_section",
    "write_section",
]


class ParseError(TopoFilterError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _floats(fields: Iterable[str], line: int, source: str | None) -> list[float]:
    out = []
    for f in fields:
        try:
            v = float(f)
        except ValueError:
            raise ParseError(f"not a number: {f!r}", line, source) from None
        if not math.isfinite(v):
            raise ParseError(f"non-finite value {f!r}", line, source)
        out.append(v)
    return out


def parse_coefficients(text: str, source: str | None = None) -> FilterCoefficients:
    found: dict[str, list[float]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("a", "b"):
            raise ParseError(f"expected 'b: ...' or 'a: ...', got {raw.strip()!r}", lineno, source)
        if key in found:
            raise ParseError(f"duplicate '{key}' line", lineno, source)
        found[key] = _floats(rest.split(), lineno, source)
    if "b" not in found:
        raise ParseError("missing 'b:' line", None, source)
    return normalize_coefficients(found["b"], found.get("a", []))


def read_coefficients(path: PathLike) -> FilterCoefficients:
    return parse_coefficients(Path(path).read_text(), source=str(path))


def format_coefficients(coeffs: FilterCoefficients) -> str:
    lines = ["b: " + " ".join(format_float(x) for x in coeffs.b)]
    if coeffs.a:
        lines.append("a: " + " ".join(format_float(x) for x in coeffs.a))
    return "\n".join(lines) + "\n"


def parse_signal(text: str, source: str | None = None) -> np.ndarray:
    samples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if lineno == 1 and line == "sample":
            continue
        if not line:
            # tolerate trailing blank lines only
            continue
        samples.extend(_floats([line], lineno, source))
    return np.array(samples, dtype=np.float64)


def read_signal(path: PathLike) -> np.ndarray:
    return parse_signal(Path(path).read_text(), source=str(path))


def write_signal(path: PathLike, samples, header: bool = False) -> None:
    body = "".join(format_float(x) + "\n" for x in np.asarray(samples, dtype=np.float64))
    Path(path).write_text(("sample\n" if header else "") + body)


def format_section(section: StateSection) -> str:
    lines = [f"section order={section.consistency_dim} vertices={section.vertex_count}"]
    for prefix, rows in (("v", section.vertex_states), ("e", section.edge_values)):
        for t, row in enumerate(rows):
            values = " ".join(format_float(x) for x in row)
            lines.append(f"{prefix}{t}: {values}".rstrip())
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"section\s+order=(\d+)\s+vertices=(\d+)$")
_ENTRY = re.compile(r"([ve])(\d+):(.*)$")


def parse_section(text: str, source: str | None = None) -> StateSection:
    lines = [(n, l.strip()) for n, l in enumerate(text.splitlines(), start=1) if l.strip() and not l.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty section file", None, source)
    lineno, head = lines[0]
    m = _HEADER.match(head)
    if not m:
        raise ParseError("expected 'section order=<N> vertices=<T>'", lineno, source)
    order, n_vertices = int(m.group(1)), int(m.group(2))
    n_edges = max(n_vertices - 1, 0)
    expected = [("v", t, order + 1) for t in range(n_vertices)] + [("e", t, order) for t in range(n_edges)]
    body = lines[1:]
    if len(body) != len(expected):
        raise ParseError(
            f"expected {n_vertices} vertex and {n_edges} edge lines, got {len(body)} lines",
            body[len(expected)][0] if len(body) > len(expected) else None,
            source,
        )
    vertex_rows, edge_rows = [], []
    for (lineno, line), (prefix, t, dim) in zip(body, expected):
        m = _ENTRY.match(line)
        if not m or m.group(1) != prefix or int(m.group(2)) != t:
            raise ParseError(f"expected entry '{prefix}{t}:'", lineno, source)
        values = _floats(m.group(3).split(), lineno, source)
        if len(values) != dim:
            raise ParseError(f"{prefix}{t} needs {dim} values, got {len(values)}", lineno, source)
        (vertex_rows if prefix == "v" else edge_rows).append(values)
    return StateSection(
        np.array(vertex_rows, dtype=np.float64).reshape(n_vertices, order + 1),
        np.array(edge_rows, dtype=np.float64).reshape(n_edges, order),
    )


def read_section(path: PathLike) -> StateSection:
    return parse_section(Path(path).read_text(), source=str(path))


def write_section(path: PathLike, section: StateSection) -> None:
    Path(path).write_text(format_section(section))

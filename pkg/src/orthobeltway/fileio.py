"""Text formats for signals and invariant sets.

Signal files:  first line "n k", then k lines "w t1 ... tn".
Invariant files:  first line "k", then k(k+1)/2 lines "a b c wprod" in
sorted order.  '#' starts a comment; blank lines are ignored.  All numbers
are written with 12 significant digits, so writing is canonical and
re-reading a written file reproduces it byte for byte.
"""
from __future__ import annotations

import numpy as np

from .errors import FileFormatError, InvalidInvariantSet
from .invariants import InvariantEntry, InvariantSet, OrbitTriple
from .signals import SparseSignal


def format_float(x: float) -> str:
    return f"{float(x):.12g}"


def _data_lines(text: str) -> list:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _floats(line: str, count: int, what: str) -> list:
    parts = line.split()
    if len(parts) != count:
        raise FileFormatError(f"expected {count} fields on a {what} line, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise FileFormatError(f"non-numeric field on a {what} line: {exc}") from exc


def write_signal(signal: SparseSignal) -> str:
    lines = [f"{signal.dim} {signal.k}"]
    for w, point in zip(signal.weights, signal.points):
        lines.append(" ".join([format_float(w)] + [format_float(x) for x in point]))
    return "\n".join(lines) + "\n"


def read_signal(text: str) -> SparseSignal:
    lines = _data_lines(text)
    if not lines:
        raise FileFormatError("empty signal file")
    header = lines[0].split()
    if len(header) != 2:
        raise FileFormatError("signal header must be 'n k'")
    try:
        n, k = int(header[0]), int(header[1])
    except ValueError as exc:
        raise FileFormatError(f"bad signal header: {exc}") from exc
    if len(lines) != k + 1:
        raise FileFormatError(f"expected {k} point lines, got {len(lines) - 1}")
    weights = np.empty(k)
    points = np.empty((k, n))
    for i, line in enumerate(lines[1:]):
        row = _floats(line, n + 1, "signal point")
        weights[i] = row[0]
        points[i] = row[1:]
    try:
        return SparseSignal(weights, points)
    except ValueError as exc:
        raise FileFormatError(f"invalid signal: {exc}") from exc


def write_invariants(inv: InvariantSet) -> str:
    # sort by the values as written: 12-digit rounding can merge entries that
    # differ only in invisible bits, and the file order must survive a
    # read/write round trip
    rows = [
        tuple(format_float(v) for v in (e.triple.a, e.triple.b, e.triple.c, e.wprod))
        for e in inv.entries
    ]
    rows.sort(key=lambda r: tuple(float(v) for v in r))
    return "\n".join([str(inv.k)] + [" ".join(r) for r in rows]) + "\n"


def read_invariants(text: str) -> InvariantSet:
    lines = _data_lines(text)
    if not lines:
        raise FileFormatError("empty invariant file")
    try:
        k = int(lines[0])
    except ValueError as exc:
        raise FileFormatError(f"bad invariant header: {exc}") from exc
    entries = []
    for line in lines[1:]:
        a, b, c, wprod = _floats(line, 4, "invariant entry")
        entries.append(InvariantEntry(OrbitTriple(a, b, c), wprod))
    try:
        return InvariantSet(k, tuple(entries))
    except InvalidInvariantSet as exc:
        raise FileFormatError(f"invalid invariant set: {exc}") from exc

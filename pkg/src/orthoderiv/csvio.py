"""CSV readers and writers for signals, derivatives and frequency sweeps."""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import numpy as np

from .differentiator import SampledSignal

SPACING_RTOL = 1e-9
SIGNAL_HEADER = ("x", "value")
DERIVATIVE_HEADER = ("x", "derivative")
SWEEP_HEADER = ("omega", "re", "im", "modulus", "log10_omega", "log10_modulus")


class CSVFormatError(ValueError):
    pass


def fmt_float(v: float) -> str:
    v = float(v)
    if v == 0.0:
        return "0"  # folds -0.0 so output is stable
    return "%.17g" % v


def fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return fmt_float(v)


def write_rows(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt_value(v) for v in r])


def rows_to_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    write_rows(buf, header, rows)
    return buf.getvalue()


def read_signal(stream: TextIO) -> SampledSignal:
    """Parse an ``x,value`` CSV into a :class:`SampledSignal`.

    The abscissae must be strictly increasing and equispaced to a relative
    tolerance of ``SPACING_RTOL`` on the step.
    """
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise CSVFormatError("empty input") from None
    if tuple(h.strip() for h in header) != SIGNAL_HEADER:
        raise CSVFormatError(f"expected header 'x,value', got {','.join(header)!r}")
    xs, vs = [], []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise CSVFormatError(f"line {lineno}: expected 2 fields, got {len(row)}")
        try:
            xs.append(float(row[0]))
            vs.append(float(row[1]))
        except ValueError:
            raise CSVFormatError(f"line {lineno}: non-numeric field") from None
    if len(xs) < 2:
        raise CSVFormatError("a signal needs at least two samples")
    x = np.array(xs)
    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(vs)):
        raise CSVFormatError("non-finite sample")
    d = np.diff(x)
    step = (x[-1] - x[0]) / (len(x) - 1)
    if step <= 0 or np.any(d <= 0):
        raise CSVFormatError("x must be strictly increasing")
    if np.max(np.abs(d - step)) > SPACING_RTOL * step:
        raise CSVFormatError("x is not equispaced")
    return SampledSignal(float(x[0]), float(step), np.array(vs))


def read_signal_file(path: str) -> SampledSignal:
    with open(path, newline="") as fh:
        return read_signal(fh)


def write_signal(stream: TextIO, signal: SampledSignal) -> None:
    write_rows(stream, SIGNAL_HEADER, zip(signal.x, signal.values))


def write_derivatives(stream: TextIO, xs: Sequence[float], ds: Sequence[float]) -> None:
    write_rows(stream, DERIVATIVE_HEADER, zip(xs, ds))


def write_sweep(stream: TextIO, rows: Iterable[Sequence]) -> None:
    write_rows(stream, SWEEP_HEADER, rows)


def read_sweep(stream: TextIO) -> list:
    """Inverse of :func:`write_sweep`; empty log fields come back as None."""
    reader = csv.reader(stream)
    header = next(reader)
    if tuple(header) != SWEEP_HEADER:
        raise CSVFormatError("unexpected sweep header")
    out = []
    for row in reader:
        out.append(tuple(float(c) if c != "" else None for c in row))
    return out


def is_finite_number(v) -> bool:
    return v is not None and math.isfinite(v)

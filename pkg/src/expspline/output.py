"""Deterministic CSV / JSON writers.

Every file starts with ``#``-prefixed metadata lines (tool version and the
parameters, never a timestamp) and is written through a temporary file in the
target directory followed by an atomic rename, so a failed command leaves no
partial output behind.
"""
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__


def format_number(v, decimals=None):
    """Fixed ``decimals`` places, or shortest round-trip repr when ``None``.

    Negative zero is printed as zero so that output does not depend on
    signed-zero noise.
    """
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"refusing to write non-finite value {v}")
    if decimals is None:
        s = repr(v + 0.0)
        return "0.0" if s == "-0.0" else s
    s = f"{v:.{decimals}f}"
    if s.startswith("-") and float(s) == 0.0:
        s = s[1:]
    return s


def metadata_lines(meta):
    lines = [f"# expspline {__version__}"]
    for key in sorted(meta):
        lines.append(f"# {key}: {json.dumps(meta[key], sort_keys=True)}")
    return lines


def curve_to_csv(curve, decimals=None):
    rows = metadata_lines(curve.meta)
    fmt = lambda v: format_number(v, decimals)  # noqa: E731
    if curve.is_complex:
        rows.append("xi,re,im")
        rows += [f"{fmt(x)},{fmt(v.real)},{fmt(v.imag)}" for x, v in zip(curve.abscissae, curve.values)]
    else:
        rows.append("x,value")
        rows += [f"{fmt(x)},{fmt(v)}" for x, v in zip(curve.abscissae, curve.values)]
    return "\n".join(rows) + "\n"


def table_to_csv(header, rows, meta, decimals=None):
    lines = metadata_lines(meta)
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(str(c) if isinstance(c, (int, np.integer)) else format_number(c, decimals) for c in row))
    return "\n".join(lines) + "\n"


def to_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def curve_to_json(curve):
    return to_json({"version": __version__, **curve.to_dict()})


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a sibling temp file and ``os.replace``."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text, path=None, stream=None):
    """Atomic file write when ``path`` is given, else write to ``stream``."""
    if path:
        atomic_write(path, text)
    else:
        (stream or sys.stdout).write(text)


def read_csv_curve(text):
    """Parse a CSV produced by :func:`curve_to_csv` back into arrays (used by tests)."""
    body = [ln for ln in io.StringIO(text).read().splitlines() if ln and not ln.startswith("#")]
    header = body[0].split(",")
    data = np.array([[float(c) for c in ln.split(",")] for ln in body[1:]])
    return header, data

"""CSV, JSON and SVG writers/readers used by the command-line pipeline.

Floats are written with ``repr`` (shortest round-trip form), so reading a
file back gives the in-memory array bit for bit.
"""

from __future__ import annotations

import contextlib
import csv
import json
import math
import sys

import numpy as np

__all__ = [
    "write_csv",
    "read_csv",
    "split_columns",
    "write_json",
    "write_svg",
    "render_svg",
    "color_ramp",
]


def _fmt(v) -> str:
    return repr(float(v))


def write_csv(path, header, columns) -> None:
    """Write ``columns`` (2-D array or a list of 1-D/2-D blocks) under ``header``.

    ``path`` of ``"-"`` writes to stdout.
    """
    if not isinstance(columns, (list, tuple)):
        columns = [columns]
    blocks = [np.asarray(c) for c in columns]
    blocks = [b[:, None] if b.ndim == 1 else b for b in blocks]
    # integer blocks (e.g. pass indices) are written without a decimal point
    is_int = np.concatenate(
        [np.full(b.shape[1], np.issubdtype(b.dtype, np.integer)) for b in blocks]
    )
    table = np.hstack([b.astype(np.float64) for b in blocks])
    if table.ndim != 2 or table.shape[1] != len(header):
        raise ValueError(f"header has {len(header)} names but table has shape {table.shape}")
    if path in (None, "-"):
        target = contextlib.nullcontext(sys.stdout)
    else:
        target = open(path, "w", encoding="utf-8", newline="")
    with target as fh:
        fh.write(",".join(header) + "\n")
        for row in table:
            fh.write(
                ",".join(str(int(v)) if f else _fmt(v) for v, f in zip(row, is_int)) + "\n"
            )


def read_csv(path):
    """Return ``(header, table)`` from a headered numeric CSV."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(
                    f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric field") from None
    table = np.array(rows, dtype=np.float64).reshape(len(rows), len(header))
    return header, table


def split_columns(header, table, prefix: str):
    """Pick the columns named ``<prefix><int>`` in index order, plus the ``p*`` params.

    Returns ``(selected, params)``; ``params`` is ``None`` when absent.
    """

    def pick(pfx):
        cols = [
            (int(h[len(pfx):]), j)
            for j, h in enumerate(header)
            if h.startswith(pfx) and h[len(pfx):].isdigit()
        ]
        cols.sort()
        return [j for _, j in cols]

    sel = pick(prefix)
    par = pick("p")
    selected = table[:, sel] if sel else None
    params = table[:, par] if par else None
    return selected, params


def write_json(path, obj) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, allow_nan=False)
    if path in (None, "-"):
        print(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


# sampled from a perceptually uniform blue-green-yellow ramp
_RAMP = [
    (68, 1, 84),
    (59, 82, 139),
    (33, 145, 140),
    (94, 201, 98),
    (253, 231, 37),
]


def color_ramp(u: float) -> str:
    """Hex color for ``u`` in [0, 1] by piecewise-linear interpolation."""
    if not math.isfinite(u):
        u = 0.0
    u = min(max(u, 0.0), 1.0)
    pos = u * (len(_RAMP) - 1)
    i = min(int(pos), len(_RAMP) - 2)
    f = pos - i
    rgb = [round(a + (b - a) * f) for a, b in zip(_RAMP[i], _RAMP[i + 1])]
    return "#%02x%02x%02x" % tuple(rgb)


def render_svg(coords, values=None, *, size: int = 480, margin: int = 24, radius: float = 2.5, title=None) -> str:
    """Static SVG 1.1 scatter of ``coords[:, :2]`` colored by ``values``."""
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[1] < 1:
        raise ValueError(f"coords must be 2-D, got shape {coords.shape}")
    xs = coords[:, 0]
    ys = coords[:, 1] if coords.shape[1] > 1 else np.zeros_like(xs)
    n = xs.size
    if values is None:
        values = np.arange(n, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64).ravel()

    def scale(v):
        lo, hi = (float(v.min()), float(v.max())) if v.size else (0.0, 1.0)
        span = hi - lo
        return (v - lo) / span if span > 0 else np.full_like(v, 0.5)

    inner = size - 2 * margin
    px = margin + scale(xs) * inner
    py = size - margin - scale(ys) * inner
    cv = scale(values)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
    ]
    if title:
        safe = str(title).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f"<title>{safe}</title>")
    out.append(f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>')
    out.append(
        f'<rect x="{margin}" y="{margin}" width="{inner}" height="{inner}" '
        'fill="none" stroke="#bbbbbb" stroke-width="1"/>'
    )
    for x, y, c in zip(px, py, cv):
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{radius}" fill="{color_ramp(c)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, coords, values=None, **kwargs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(coords, values, **kwargs))

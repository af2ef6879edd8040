"""CSV and report serialization shared by the command-line entry points.

Point-cloud files are one point per row, comma-separated decimals, with
an optional single header row (detected by a non-numeric first row).
Cost matrices and plans are dense comma-separated rows without headers.
Plans are written with full round-trip precision and exact zeros as the
literal ``0``.

Reports are line-oriented ``key=value`` text, key-sorted for stable
diffs, plus a JSON sidecar with the same fields.
"""

import hashlib
import json

import numpy as np

from .errors import FormatError


def _parse_numeric_row(line: str):
    try:
        return [float(tok) for tok in line.split(",")]
    except ValueError:
        return None


def read_point_cloud(path) -> np.ndarray:
    """Read a point cloud CSV, skipping an optional header row.

    Returns an array of shape (k, d); a header-only file yields (0, d).
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise FormatError(f"{path}: empty point-cloud file")
    first = _parse_numeric_row(lines[0])
    if first is None:
        dim = len(lines[0].split(","))
        data_lines = lines[1:]
    else:
        dim = len(first)
        data_lines = lines
    rows = []
    for ln in data_lines:
        row = _parse_numeric_row(ln)
        if row is None:
            raise FormatError(f"{path}: non-numeric data row {ln!r}")
        if len(row) != dim:
            raise FormatError(f"{path}: ragged row with {len(row)} fields, expected {dim}")
        rows.append(row)
    pts = np.array(rows, dtype=float).reshape(len(rows), dim)
    if not np.all(np.isfinite(pts)):
        raise FormatError(f"{path}: non-finite coordinates")
    return pts


def read_cost_matrix(path) -> np.ndarray:
    """Read a dense cost matrix CSV; entries must be finite and nonnegative."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise FormatError(f"{path}: empty cost file")
    rows = []
    width = None
    for ln in lines:
        row = _parse_numeric_row(ln)
        if row is None:
            raise FormatError(f"{path}: non-numeric row {ln!r}")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"{path}: ragged row with {len(row)} fields, expected {width}")
        rows.append(row)
    gamma = np.array(rows, dtype=float)
    if not np.all(np.isfinite(gamma)):
        raise FormatError(f"{path}: non-finite cost entries")
    if np.any(gamma < 0.0):
        raise FormatError(f"{path}: negative cost entries")
    return gamma


def format_value(v: float) -> str:
    """Shortest round-trip decimal; exact zeros become the literal '0'."""
    if v == 0.0:
        return "0"
    return repr(float(v))


def write_point_cloud(path, points: np.ndarray, header: bool = True):
    """Write a point cloud with a coordinate header row (x0, x1, ...)."""
    points = np.asarray(points, dtype=float)
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(",".join(f"x{i}" for i in range(points.shape[1])) + "\n")
        for row in points:
            fh.write(",".join(format_value(v) for v in row) + "\n")


def write_matrix(path, mat: np.ndarray):
    """Write a dense matrix row-major at full round-trip precision."""
    mat = np.asarray(mat, dtype=float)
    with open(path, "w", encoding="utf-8") as fh:
        for row in mat:
            fh.write(",".join(format_value(v) for v in row) + "\n")


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_value(v)
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def render_report(fields: dict) -> str:
    """Key-sorted ``key=value`` lines; None values are omitted."""
    lines = []
    for key in sorted(fields):
        if fields[key] is None:
            continue
        lines.append(f"{key}={_render_value(fields[key])}")
    return "\n".join(lines) + "\n"


def write_report(path, fields: dict):
    """Write the textual report to ``path`` and a JSON sidecar to ``path + '.json'``."""
    text = render_report(fields)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    clean = {k: v for k, v in fields.items() if v is not None}
    with open(str(path) + ".json", "w", encoding="utf-8") as fh:
        json.dump(clean, fh, sort_keys=True, indent=2)
        fh.write("\n")


def read_truth(path) -> set[int]:
    """Read ground-truth outlier indices: integers separated by commas/newlines."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    tokens = [tok for chunk in text.split() for tok in chunk.split(",") if tok]
    try:
        return {int(tok) for tok in tokens}
    except ValueError as exc:
        raise FormatError(f"{path}: truth file must contain integer indices") from exc

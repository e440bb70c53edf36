"""Point-cloud ingestion, synthetic generators, and min-max normalization.

Everything here produces or consumes :class:`DataSet`: an immutable bundle of
row-major coordinates with optional integer class labels and string row ids.
The generators are pure functions of their arguments (including the seed), so
repeated calls reproduce the same sample exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .exceptions import InputError, ParseError

__all__ = [
    "DataSet",
    "load_csv",
    "save_csv",
    "generate_blobs",
    "blob_centers",
    "generate_rings",
    "minmax_scale",
    "minmax_normalize",
]


@dataclass(frozen=True)
class DataSet:
    """N points in m-dimensional real space, row-major.

    Parameters
    ----------
    points : (N, m) array of finite reals. Copied and frozen at construction.
    labels : optional length-N vector of non-negative integer class ids.
    ids : optional length-N sequence of string row identifiers.

    Duplicate rows are legal; every downstream operation stays well defined
    on them.
    """

    points: np.ndarray
    labels: Optional[np.ndarray] = None
    ids: Optional[tuple] = None

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2:
            raise InputError(f"points must be a 2-D array, got shape {pts.shape}")
        n, m = pts.shape
        if n < 1 or m < 1:
            raise InputError(f"need at least one point and one dimension, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise InputError("points contain NaN or infinite coordinates")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

        if self.labels is not None:
            labels = np.array(self.labels, dtype=np.int64, copy=True)
            if labels.shape != (n,):
                raise InputError(f"labels must have length {n}, got shape {labels.shape}")
            if np.any(labels < 0):
                raise InputError("labels must be non-negative integers")
            labels.setflags(write=False)
            object.__setattr__(self, "labels", labels)

        if self.ids is not None:
            ids = tuple(str(v) for v in self.ids)
            if len(ids) != n:
                raise InputError(f"ids must have length {n}, got {len(ids)}")
            object.__setattr__(self, "ids", ids)

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def n_dims(self) -> int:
        return self.points.shape[1]


def load_csv(
    path,
    has_header: bool = False,
    label_column: Union[str, int, None] = None,
    id_column: bool = False,
) -> DataSet:
    """Read a comma-separated point cloud into a :class:`DataSet`.

    Parameters
    ----------
    path : file path. UTF-8, comma-separated, decimal-point reals.
    has_header : consume a single header row of column names.
    label_column : column holding integer class labels, selected by header
        name or by zero-based position; it is excluded from the coordinates.
    id_column : treat the first column as string row identifiers.

    Raises
    ------
    ParseError : empty file, ragged rows (named by row), or cells that do not
        parse as finite numbers (named by row and column). Row numbers are
        1-based file line numbers.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        raw = [(lineno, row) for lineno, row in enumerate(csv.reader(fh), start=1) if row]
    if not raw:
        raise ParseError(f"{path}: file contains no data")

    header = None
    if has_header:
        header = [c.strip() for c in raw[0][1]]
        raw = raw[1:]
        if not raw:
            raise ParseError(f"{path}: no data rows after header")

    width = len(raw[0][1])
    for lineno, row in raw:
        if len(row) != width:
            raise ParseError(f"{path}: row {lineno} has {len(row)} fields, expected {width}")

    label_idx = None
    if label_column is not None:
        if isinstance(label_column, int):
            label_idx = label_column
        elif header is not None and label_column in header:
            label_idx = header.index(label_column)
        elif isinstance(label_column, str) and label_column.lstrip("-").isdigit():
            label_idx = int(label_column)
        else:
            raise InputError(
                f"label column {label_column!r} not found"
                + ("" if header is not None else " (selecting by name requires a header)")
            )
        if not 0 <= label_idx < width:
            raise InputError(f"label column index {label_idx} out of range for {width} columns")

    coord_cols = [
        c for c in range(width) if c != label_idx and not (id_column and c == 0)
    ]
    if not coord_cols:
        raise ParseError(f"{path}: no coordinate columns remain")

    points = np.empty((len(raw), len(coord_cols)))
    labels = np.empty(len(raw), dtype=np.int64) if label_idx is not None else None
    ids = [] if id_column else None
    for r, (lineno, row) in enumerate(raw):
        if ids is not None:
            ids.append(row[0])
        for k, c in enumerate(coord_cols):
            cell = row[c]
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: row {lineno}, column {c + 1}: {cell!r} is not a number"
                ) from None
            if not np.isfinite(value):
                raise ParseError(f"{path}: row {lineno}, column {c + 1}: {cell!r} is not finite")
            points[r, k] = value
        if labels is not None:
            cell = row[label_idx]
            try:
                label = int(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: row {lineno}, column {label_idx + 1}: {cell!r} is not an integer label"
                ) from None
            if label < 0:
                raise ParseError(
                    f"{path}: row {lineno}, column {label_idx + 1}: label {label} is negative"
                )
            labels[r] = label

    return DataSet(points, labels=labels, ids=tuple(ids) if ids is not None else None)


def save_csv(data: DataSet, path, header: bool = False) -> None:
    """Write a :class:`DataSet` as CSV: ids first (if any), coordinates, label last.

    Floats are written in shortest round-trip form, so reading the file back
    recovers the coordinates exactly.
    """
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            cols = []
            if data.ids is not None:
                cols.append("id")
            cols += [f"x{j}" for j in range(data.n_dims)]
            if data.labels is not None:
                cols.append("label")
            fh.write(",".join(cols) + "\n")
        for i in range(data.n_points):
            cells = []
            if data.ids is not None:
                cells.append(data.ids[i])
            cells += [repr(float(v)) for v in data.points[i]]
            if data.labels is not None:
                cells.append(str(int(data.labels[i])))
            fh.write(",".join(cells) + "\n")


def blob_centers(k: int, m: int, separation: float) -> np.ndarray:
    """Deterministic cluster centers with pairwise distance >= separation.

    Center 0 sits at the origin; the rest are placed on axis-aligned rings
    (axis cycling, ring radius growing by `separation`), which keeps every
    pairwise distance at or above `separation` for any k and m.
    """
    centers = np.zeros((k, m))
    for i in range(1, k):
        axis = (i - 1) % m
        ring = 1 + (i - 1) // m
        centers[i, axis] = ring * separation
    return centers


def generate_blobs(
    k: int,
    n_per: int,
    m: int = 2,
    spread: float = 1.0,
    separation: float = 6.0,
    seed: int = 0,
) -> DataSet:
    """Sample k isotropic Gaussian clusters of n_per points each.

    Labels record the generating cluster. Deterministic given the seed.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    if n_per < 1:
        raise InputError(f"n_per must be >= 1, got {n_per}")
    if m < 1:
        raise InputError(f"m must be >= 1, got {m}")
    if not spread > 0:
        raise InputError(f"spread must be > 0, got {spread}")
    if separation < 0:
        raise InputError(f"separation must be >= 0, got {separation}")
    rng = np.random.default_rng(seed)
    centers = blob_centers(k, m, separation)
    points = np.concatenate(
        [centers[i] + rng.normal(0.0, spread, size=(n_per, m)) for i in range(k)]
    )
    labels = np.repeat(np.arange(k), n_per)
    return DataSet(points, labels=labels)


def generate_rings(
    n_inner: int,
    n_outer: int,
    r_inner: float = 1.0,
    r_outer: float = 3.0,
    noise: float = 0.0,
    seed: int = 0,
) -> DataSet:
    """Sample two concentric 2-D circles with radial Gaussian noise.

    Labels are 0 for the inner ring, 1 for the outer. With noise=0 every
    point lies exactly on its circle (up to rounding in cos/sin).
    """
    if n_inner < 1 or n_outer < 1:
        raise InputError("both rings need at least one point")
    if not 0 < r_inner < r_outer:
        raise InputError(f"need 0 < r_inner < r_outer, got {r_inner}, {r_outer}")
    if noise < 0:
        raise InputError(f"noise must be >= 0, got {noise}")
    rng = np.random.default_rng(seed)
    chunks = []
    for n, radius in ((n_inner, r_inner), (n_outer, r_outer)):
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
        r = radius + rng.normal(0.0, noise, size=n)
        chunks.append(np.column_stack([r * np.cos(theta), r * np.sin(theta)]))
    labels = np.concatenate([np.zeros(n_inner, dtype=np.int64), np.ones(n_outer, dtype=np.int64)])
    return DataSet(np.concatenate(chunks), labels=labels)


def minmax_scale(points) -> np.ndarray:
    """Affine map of each column onto [0, 1]; zero-range columns map to 0.5.

    Idempotent: a second application is exactly the identity.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    lo = pts.min(axis=0)
    span = pts.max(axis=0) - lo
    flat = span == 0
    out = (pts - lo) / np.where(flat, 1.0, span)
    out[:, flat] = 0.5
    return out


def minmax_normalize(data: DataSet) -> DataSet:
    """Min-max normalize a DataSet's coordinates onto the unit hypercube."""
    return DataSet(minmax_scale(data.points), labels=data.labels, ids=data.ids)

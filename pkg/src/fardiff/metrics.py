"""External cluster-quality scores computed from a contingency table."""

from __future__ import annotations

from math import comb

import numpy as np

from .exceptions import InputError

__all__ = ["contingency_table", "adjusted_rand_index", "purity"]


def _as_labels(x) -> np.ndarray:
    arr = np.asarray(getattr(x, "category", x))
    if arr.ndim != 1:
        raise InputError(f"labels must be 1-D, got shape {arr.shape}")
    return arr


def _paired_labels(pred, truth):
    p = _as_labels(pred)
    t = _as_labels(truth)
    if p.shape[0] != t.shape[0]:
        raise InputError(f"length mismatch: {p.shape[0]} predictions vs {t.shape[0]} labels")
    return p, t


def contingency_table(pred, truth) -> np.ndarray:
    """K x C co-occurrence counts between predicted categories and labels.

    Rows follow the sorted distinct predicted values, columns the sorted
    distinct reference labels; entries sum to N.
    """
    p, t = _paired_labels(pred, truth)
    _, pi = np.unique(p, return_inverse=True)
    _, ti = np.unique(t, return_inverse=True)
    table = np.zeros((pi.max() + 1, ti.max() + 1), dtype=np.int64)
    np.add.at(table, (pi, ti), 1)
    return table


def adjusted_rand_index(pred, truth) -> float:
    """Rand index corrected for chance under the permutation model.

    1.0 for identical partitions (up to relabeling), ~0 for independent ones;
    can go negative. Needs at least two points.
    """
    p, t = _paired_labels(pred, truth)
    n = p.shape[0]
    if n < 2:
        raise InputError("adjusted Rand index needs at least two points")
    table = contingency_table(p, t)
    index = sum(comb(int(v), 2) for v in table.ravel())
    row_pairs = sum(comb(int(v), 2) for v in table.sum(axis=1))
    col_pairs = sum(comb(int(v), 2) for v in table.sum(axis=0))
    expected = row_pairs * col_pairs / comb(n, 2)
    max_index = (row_pairs + col_pairs) / 2.0
    if max_index == expected:
        # Both partitions induce the same trivial pair structure.
        return 1.0
    return float((index - expected) / (max_index - expected))


def purity(pred, truth) -> float:
    """Fraction of points whose category's majority label matches their own.

    (1/N) sum_k max_c counts(k, c). Degenerate by design: all-singleton
    predictions score 1.0.
    """
    p, t = _paired_labels(pred, truth)
    table = contingency_table(p, t)
    return float(table.max(axis=1).sum() / p.shape[0])

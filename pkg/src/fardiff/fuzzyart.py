"""Fuzzy adaptive resonance clustering.

Patterns live in the unit hypercube and are, by default, complement coded:
x -> (x, 1 - x), which fixes the L1 norm at the pre-coding dimension and
prevents prototypes from eroding toward zero. Committed category prototypes
compete for each pattern through the choice function

    T_j = |x ^ w_j| / (alpha + |w_j|),

where ^ is the componentwise minimum (fuzzy AND) and |.| the L1 norm. The
winner resonates if it passes the vigilance test |x ^ w_j| / |x| >= rho and
then learns

    w_j <- beta (x ^ w_j) + (1 - beta) w_j,

which only ever shrinks components, so prototypes are componentwise
non-increasing over a whole run. A winner that fails vigilance is reset:
disabled for the remainder of this presentation, after which the competition
repeats among the others. A pattern that resets every committed category
recruits a fresh one, whose prototype starts as the all-ones vector (the
uncommitted state, which any pattern matches perfectly) and learns the
pattern; with fast learning (beta = 1) the new prototype is the pattern
itself. Training cycles through the inputs in order, epoch after epoch, until
an epoch leaves every assignment unchanged or `max_epochs` is hit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exceptions import InputError

__all__ = [
    "NO_MATCH",
    "ArtParams",
    "ArtModel",
    "Assignment",
    "complement_code",
    "fuzzy_and",
    "choice",
    "vigilance_pass",
    "learn",
    "train",
    "predict",
    "model_to_json",
    "model_from_json",
    "save_model",
    "load_model",
]

# Category marker for patterns that fail vigilance against every committed
# category during prediction.
NO_MATCH = -1


@dataclass(frozen=True)
class ArtParams:
    """Clustering knobs: choice alpha > 0, learning rate beta in [0, 1],
    vigilance rho in [0, 1], complement coding on/off, and the epoch cap."""

    alpha: float = 0.001
    beta: float = 1.0
    rho: float = 0.5
    complement_coding: bool = True
    max_epochs: int = 100

    def __post_init__(self):
        if not self.alpha > 0:
            raise InputError(f"alpha must be > 0, got {self.alpha}")
        if not 0.0 <= self.beta <= 1.0:
            raise InputError(f"beta must be in [0, 1], got {self.beta}")
        if not 0.0 <= self.rho <= 1.0:
            raise InputError(f"rho must be in [0, 1], got {self.rho}")
        if not (isinstance(self.max_epochs, (int, np.integer)) and self.max_epochs >= 1):
            raise InputError(f"max_epochs must be a positive integer, got {self.max_epochs}")


@dataclass(frozen=True)
class ArtModel:
    """Committed category prototypes plus the parameters that shaped them.

    `weights` is an (n_categories, d) array where d is the input dimension
    after coding (2 * input_dim under complement coding). Immutable once
    constructed; prediction never mutates it.
    """

    weights: np.ndarray
    params: ArtParams
    input_dim: int

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64, copy=True)
        if w.ndim != 2:
            raise InputError(f"weights must be 2-D, got shape {w.shape}")
        if w.size and not (np.all(w >= 0.0) and np.all(w <= 1.0)):
            raise InputError("weight components must lie in [0, 1]")
        expected = 2 * self.input_dim if self.params.complement_coding else self.input_dim
        if w.shape[1] != expected:
            raise InputError(
                f"weights have {w.shape[1]} components, expected {expected} "
                f"for input_dim={self.input_dim}"
            )
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def n_categories(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class Assignment:
    """Per-pattern category indices and the committed-category total.

    `epochs` is the number of training epochs actually run (None for
    prediction results). Prediction may assign NO_MATCH (-1).
    """

    category: np.ndarray
    n_categories: int
    epochs: Optional[int] = None

    def __post_init__(self):
        cat = np.array(self.category, dtype=np.int64, copy=True)
        if cat.ndim != 1:
            raise InputError(f"category must be 1-D, got shape {cat.shape}")
        if np.any((cat >= self.n_categories) | ((cat < 0) & (cat != NO_MATCH))):
            raise InputError("category indices must be NO_MATCH or < n_categories")
        cat.setflags(write=False)
        object.__setattr__(self, "category", cat)


def complement_code(x) -> np.ndarray:
    """Concatenate (x, 1 - x); the output L1 norm is always the input length."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise InputError(f"expected a 1-D vector, got shape {x.shape}")
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise InputError("components must lie in [0, 1]")
    return np.concatenate([x, 1.0 - x])


def fuzzy_and(y, y2) -> np.ndarray:
    """Componentwise minimum of two equal-length vectors."""
    y = np.asarray(y, dtype=np.float64)
    y2 = np.asarray(y2, dtype=np.float64)
    if y.shape != y2.shape:
        raise InputError(f"length mismatch: {y.shape} vs {y2.shape}")
    return np.minimum(y, y2)


def choice(x, w, alpha: float) -> float:
    """Category choice T = |x ^ w| / (alpha + |w|), L1 norms."""
    if not alpha > 0:
        raise InputError(f"alpha must be > 0, got {alpha}")
    overlap = fuzzy_and(x, w)
    return float(overlap.sum() / (alpha + np.asarray(w, dtype=np.float64).sum()))


def vigilance_pass(x, w, rho: float) -> bool:
    """True iff the match ratio |x ^ w| / |x| reaches the vigilance rho."""
    x = np.asarray(x, dtype=np.float64)
    norm = x.sum()
    if norm == 0.0:
        raise InputError("vigilance ratio undefined for a zero-norm pattern")
    return rho <= float(fuzzy_and(x, w).sum() / norm)


def learn(w_old, x, beta: float) -> np.ndarray:
    """Move a prototype toward the pattern: beta (x ^ w) + (1 - beta) w."""
    if not 0.0 <= beta <= 1.0:
        raise InputError(f"beta must be in [0, 1], got {beta}")
    w_old = np.asarray(w_old, dtype=np.float64)
    return beta * fuzzy_and(x, w_old) + (1.0 - beta) * w_old


def _choice_all(x: np.ndarray, weights: np.ndarray, alpha: float) -> np.ndarray:
    # Vectorized twin of choice(); must use the same arithmetic.
    return np.minimum(x, weights).sum(axis=1) / (alpha + weights.sum(axis=1))


def _match(x: np.ndarray, weights: np.ndarray, params: ArtParams):
    """Winner-take-all with vigilance-gated reset over committed categories.

    Returns (winner, tried): the first category, in descending choice order
    (ties to the lowest index), that passes vigilance, plus the reset trail.
    Winner is NO_MATCH when every committed category fails; each category is
    tried at most once per presentation.
    """
    tried = []
    if weights.shape[0] == 0:
        return NO_MATCH, tried
    T = _choice_all(x, weights, params.alpha)
    active = np.ones(weights.shape[0], dtype=bool)
    while active.any():
        j = int(np.argmax(np.where(active, T, -np.inf)))
        tried.append(j)
        if vigilance_pass(x, weights[j], params.rho):
            return j, tried
        active[j] = False
    return NO_MATCH, tried


def _coded_inputs(inputs, params: ArtParams, input_dim: Optional[int] = None):
    X = np.asarray(inputs, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] == 0 or X.shape[1] == 0:
        raise InputError(f"expected a non-empty sequence of vectors, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise InputError("patterns contain NaN or infinite components")
    if np.any(X < 0.0) or np.any(X > 1.0):
        raise InputError("patterns must lie in the unit hypercube [0, 1]^m")
    if input_dim is not None and X.shape[1] != input_dim:
        raise InputError(f"patterns have dimension {X.shape[1]}, model expects {input_dim}")
    if params.complement_coding:
        coded = np.hstack([X, 1.0 - X])
    else:
        coded = X.copy()
    return X, coded


def train(inputs, params: Optional[ArtParams] = None):
    """Cluster a pattern sequence; returns (ArtModel, Assignment).

    Presentation order is input order. Each epoch presents every pattern
    once; training stops after the first epoch that changes no assignment,
    or after `max_epochs`. The returned assignment is the last epoch's, and
    its `epochs` field counts epochs actually run.
    """
    if params is None:
        params = ArtParams()
    X, coded = _coded_inputs(inputs, params)
    n, d = coded.shape

    prototypes: list[np.ndarray] = []
    assign = np.full(n, -1, dtype=np.int64)
    epochs_run = 0
    for _ in range(params.max_epochs):
        epochs_run += 1
        changed = False
        for i in range(n):
            x = coded[i]
            weights = np.array(prototypes) if prototypes else np.empty((0, d))
            j, _ = _match(x, weights, params)
            if j == NO_MATCH:
                prototypes.append(learn(np.ones(d), x, params.beta))
                j = len(prototypes) - 1
            else:
                prototypes[j] = learn(prototypes[j], x, params.beta)
            if assign[i] != j:
                assign[i] = j
                changed = True
        if not changed:
            break

    model = ArtModel(weights=np.vstack(prototypes), params=params, input_dim=X.shape[1])
    return model, Assignment(category=assign, n_categories=len(prototypes), epochs=epochs_run)


def predict(model: ArtModel, inputs) -> Assignment:
    """Assign patterns to a trained model's categories without learning.

    Runs the same winner-take-all/reset loop as training but never updates
    weights and never commits: patterns that fail vigilance against every
    committed category get NO_MATCH.
    """
    if model.n_categories == 0:
        raise InputError("model has no committed categories; train it first")
    _, coded = _coded_inputs(inputs, model.params, input_dim=model.input_dim)
    out = np.empty(coded.shape[0], dtype=np.int64)
    for i, x in enumerate(coded):
        out[i], _ = _match(x, model.weights, model.params)
    return Assignment(category=out, n_categories=model.n_categories)


def model_to_json(model: ArtModel) -> str:
    """Serialize a model to JSON; floats round-trip exactly."""
    doc = {
        "params": {
            "alpha": model.params.alpha,
            "beta": model.params.beta,
            "rho": model.params.rho,
            "complement_coding": model.params.complement_coding,
            "max_epochs": model.params.max_epochs,
        },
        "input_dim": model.input_dim,
        "weights": [[float(v) for v in row] for row in model.weights],
    }
    return json.dumps(doc, indent=2) + "\n"


def model_from_json(text: str) -> ArtModel:
    """Inverse of model_to_json."""
    try:
        doc = json.loads(text)
        params = ArtParams(**doc["params"])
        weights = np.asarray(doc["weights"], dtype=np.float64)
        input_dim = int(doc["input_dim"])
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"malformed model document: {exc}") from exc
    if weights.size == 0:
        raise InputError("model document has no category weights")
    return ArtModel(weights=weights, params=params, input_dim=input_dim)


def save_model(model: ArtModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(model_to_json(model))


def load_model(path) -> ArtModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_json(fh.read())

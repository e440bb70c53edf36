"""End-to-end composition: affinity -> Markov -> spectrum -> embedding -> clustering.

The pipeline embeds a point cloud with the diffusion map, min-max normalizes
the embedding coordinates onto the unit hypercube (the clustering stage's
domain), and trains the fuzzy resonance engine on the result. A RunReport
records every resolved value so a run can be reproduced exactly.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dataset import DataSet, minmax_scale
from .diffusion import (
    DiffusionEmbedding,
    MarkovModel,
    Spectrum,
    embed,
    gaussian_affinity,
    markov_normalize,
    median_sigma,
    spectral_decompose,
)
from .exceptions import InputError, NumericError
from .fuzzyart import ArtModel, ArtParams, Assignment, train

__all__ = [
    "FardiffConfig",
    "RunReport",
    "embed_dataset",
    "fardiff_cluster",
    "write_assignment_csv",
]


@dataclass(frozen=True)
class FardiffConfig:
    """Pipeline knobs: kernel width (None -> median pairwise distance),
    diffusion time, embedding dimension, whether to drop the constant
    component, and the clustering parameters."""

    sigma: Optional[float] = None
    t: int = 1
    n_components: int = 2
    skip_trivial: bool = False
    art: ArtParams = field(default_factory=ArtParams)


@dataclass(frozen=True)
class RunReport:
    """Resolved values and outcomes of one pipeline run."""

    n_points: int
    n_dims: int
    sigma: float
    t: int
    n_components: int
    skip_trivial: bool
    art: ArtParams
    eigenvalues: tuple
    epochs: int
    n_categories: int

    def to_dict(self) -> dict:
        return {
            "n_points": self.n_points,
            "n_dims": self.n_dims,
            "sigma": self.sigma,
            "t": self.t,
            "L": self.n_components,
            "skip_trivial": self.skip_trivial,
            "art": {
                "alpha": self.art.alpha,
                "beta": self.art.beta,
                "rho": self.art.rho,
                "complement_coding": self.art.complement_coding,
                "max_epochs": self.art.max_epochs,
            },
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "epochs": self.epochs,
            "n_categories": self.n_categories,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


@contextmanager
def _stage(name: str):
    # Tag propagated errors with the pipeline stage that raised them.
    try:
        yield
    except (InputError, NumericError) as exc:
        raise type(exc)(f"{name}: {exc}") from exc


# Embedding columns whose spread is below this fraction of the embedding's
# overall magnitude are numerically constant (the eigensolver residual
# contract cannot distinguish them from flat) and are pinned to their mean
# before min-max normalization, which would otherwise stretch solver jitter
# across the whole unit interval.
_FLAT_COLUMN_RTOL = 1e-8


def _pin_flat_columns(coords: np.ndarray) -> np.ndarray:
    scale = float(np.max(np.abs(coords)))
    if scale == 0.0:
        return coords
    span = coords.max(axis=0) - coords.min(axis=0)
    flat = span <= _FLAT_COLUMN_RTOL * scale
    if not flat.any():
        return coords
    out = coords.copy()
    out[:, flat] = coords[:, flat].mean(axis=0)
    return out


def _resolve_sigma(data: DataSet, sigma: Optional[float]) -> float:
    if sigma is not None:
        if not sigma > 0:
            raise InputError(f"sigma must be a positive real, got {sigma}")
        return float(sigma)
    if data.n_points < 2:
        # A single point has no pairwise distances and any width gives the
        # same one-node walk.
        return 1.0
    return median_sigma(data)


def embed_dataset(
    data: DataSet,
    sigma: Optional[float] = None,
    t: int = 1,
    n_components: int = 2,
    skip_trivial: bool = False,
    clamp: bool = False,
):
    """Diffusion-embed a dataset; returns (embedding, markov, spectrum, sigma).

    With `clamp`, the component count is reduced to the largest value the
    dataset supports (and the trivial component is kept when N == 1, where
    it is the only one); the embedding records what was actually used.
    """
    with _stage("sigma"):
        sigma_used = _resolve_sigma(data, sigma)
    if clamp:
        skip_trivial = skip_trivial and data.n_points > 1
        n_components = min(n_components, data.n_points - (1 if skip_trivial else 0))
    with _stage("affinity"):
        W = gaussian_affinity(data, sigma_used)
    with _stage("markov"):
        markov = markov_normalize(W, sigma=sigma_used)
    with _stage("spectral"):
        spectrum = spectral_decompose(markov)
    with _stage("embed"):
        embedding = embed(spectrum, t=t, n_components=n_components, skip_trivial=skip_trivial)
    return embedding, markov, spectrum, sigma_used


def fardiff_cluster(data: DataSet, config: Optional[FardiffConfig] = None):
    """Run the full pipeline; returns (embedding, model, assignment, report).

    Stages: Gaussian affinity, Markov normalization, eigendecomposition,
    truncated embedding, min-max normalization, resonance training. Errors
    carry the name of the stage that raised them. Identical inputs and
    config produce bitwise-identical results.
    """
    if config is None:
        config = FardiffConfig()
    embedding, _, spectrum, sigma_used = embed_dataset(
        data,
        sigma=config.sigma,
        t=config.t,
        n_components=config.n_components,
        skip_trivial=config.skip_trivial,
        clamp=True,
    )
    with _stage("normalize"):
        unit = minmax_scale(_pin_flat_columns(embedding.coords))
    with _stage("train"):
        model, assignment = train(unit, config.art)
    report = RunReport(
        n_points=data.n_points,
        n_dims=data.n_dims,
        sigma=sigma_used,
        t=embedding.t,
        n_components=embedding.n_components,
        skip_trivial=embedding.skip_trivial,
        art=config.art,
        eigenvalues=tuple(float(v) for v in spectrum.eigenvalues),
        epochs=assignment.epochs,
        n_categories=assignment.n_categories,
    )
    return embedding, model, assignment, report


def write_assignment_csv(path, assignment: Assignment, ids=None) -> None:
    """Write per-point categories as `id,category` rows under a header."""
    n = assignment.category.shape[0]
    if ids is not None and len(ids) != n:
        raise InputError(f"ids must have length {n}, got {len(ids)}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("id,category\n")
        for i in range(n):
            row_id = str(ids[i]) if ids is not None else str(i)
            fh.write(f"{row_id},{int(assignment.category[i])}\n")

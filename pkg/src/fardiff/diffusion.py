"""Gaussian-affinity Markov models, their spectra, and diffusion-map embeddings.

A point cloud defines a weighted graph with edge weights
``w(i, j) = exp(-||x_i - x_j||^2 / sigma^2)``. Row-normalizing the affinity
matrix by the degrees ``d(i) = sum_j w(i, j)`` gives a row-stochastic
transition matrix P whose entry (i, j) is the one-step random-walk
probability from point i to point j. Powers of P integrate paths of length t,
and the diffusion distance at time t is the Euclidean distance between rows
of P^t: small when many short paths connect two points.

The embedding scales the leading right eigenvectors of P by the t-th powers
of their eigenvalues, so that Euclidean distance in the reduced coordinates
approximates the diffusion distance. Decomposition goes through the symmetric
conjugate S = D^(-1/2) W D^(-1/2), which shares eigenvalues with P and keeps
the solver on the stable symmetric path; right eigenvectors are recovered as
Phi_k = D^(-1/2) u_k.

Everything is dense; desk scale (a few thousand points) is the target.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg
from scipy.spatial.distance import pdist, squareform

from .dataset import DataSet
from .exceptions import InputError, NumericError

__all__ = [
    "MarkovModel",
    "Spectrum",
    "DiffusionEmbedding",
    "gaussian_affinity",
    "median_sigma",
    "markov_normalize",
    "spectral_decompose",
    "embed",
    "diffusion_distance_bruteforce",
    "weighted_diffusion_distance_bruteforce",
    "embedding_distance",
    "export_embedding",
]

# Max-norm eigenpair residual the decomposition must meet.
RESIDUAL_TOL = 1e-8


def _as_points(data) -> np.ndarray:
    if isinstance(data, DataSet):
        return data.points
    pts = np.asarray(data, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise InputError(f"expected an (N, m) point array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise InputError("points contain NaN or infinite coordinates")
    return pts


@dataclass(frozen=True)
class MarkovModel:
    """Affinity matrix, degree vector, and row-stochastic transition matrix.

    `affinity` is symmetric with unit diagonal and entries in (0, 1] (distant
    pairs may underflow to exactly 0). `degree` holds its row sums, always
    >= 1 thanks to the unit diagonal, and `transition` is affinity divided
    row-wise by degree. `sigma` records the kernel width used to build the
    affinity, when known.
    """

    affinity: np.ndarray
    degree: np.ndarray
    transition: np.ndarray
    sigma: Optional[float] = None

    def __post_init__(self):
        for name in ("affinity", "degree", "transition"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_points(self) -> int:
        return self.affinity.shape[0]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (descending) and right eigenvectors of a transition matrix.

    Column k of `vectors` is the right eigenvector for `eigenvalues[k]`.
    `sqrt_degree` records the conjugation used to recover them from the
    symmetric solve; it also carries the stationary distribution, which is
    proportional to the squared entries.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    sqrt_degree: np.ndarray

    def __post_init__(self):
        for name in ("eigenvalues", "vectors", "sqrt_degree"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_points(self) -> int:
        return self.vectors.shape[0]

    def stationary_normalized(self) -> "Spectrum":
        """Rescale eigenvectors to unit norm against the stationary distribution.

        After rescaling, sum_x phi_k(x)^2 d(x) / sum(d) == 1 for every column;
        with all components kept, Euclidean embedding distances then equal the
        degree-weighted diffusion distances exactly.
        """
        total = float(np.sum(self.sqrt_degree**2))
        return Spectrum(self.eigenvalues, self.vectors * np.sqrt(total), self.sqrt_degree)


@dataclass(frozen=True)
class DiffusionEmbedding:
    """N points in eigenvalue-scaled eigenvector coordinates at diffusion time t."""

    coords: np.ndarray
    t: int
    n_components: int
    skip_trivial: bool

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=np.float64)
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def n_points(self) -> int:
        return self.coords.shape[0]


def gaussian_affinity(data, sigma: float) -> np.ndarray:
    """Pairwise Gaussian similarities exp(-||x_i - x_j||^2 / sigma^2).

    The result is exactly symmetric with unit diagonal. Entries are positive,
    though widely separated pairs can underflow to 0 in double precision.
    """
    pts = _as_points(data)
    if not sigma > 0:
        raise InputError(f"sigma must be a positive real, got {sigma}")
    sq = squareform(pdist(pts, "sqeuclidean"))
    return np.exp(-sq / (sigma * sigma))


def median_sigma(data) -> float:
    """Median of all pairwise Euclidean distances; the default kernel width.

    A middle-of-the-road width: small enough that the affinity matrix decays
    across cluster gaps, large enough that neighbors keep appreciable weight.
    """
    pts = _as_points(data)
    if pts.shape[0] < 2:
        raise InputError("median_sigma needs at least two points")
    med = float(np.median(pdist(pts)))
    if med == 0.0:
        raise InputError(
            "median pairwise distance is zero (too many duplicate points); pass an explicit sigma"
        )
    return med


def markov_normalize(W, sigma: Optional[float] = None) -> MarkovModel:
    """Row-normalize an affinity matrix into a Markov transition model.

    Requires W square and symmetric with unit diagonal and entries in
    [0, 1 + eps]; the unit diagonal keeps every degree >= 1, so the division
    is always safe. Each row of the result sums to 1 within 1e-12.
    """
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise InputError(f"affinity matrix must be square, got shape {W.shape}")
    if not np.all(np.isfinite(W)):
        raise InputError("affinity matrix contains NaN or infinite entries")
    if np.max(np.abs(W - W.T), initial=0.0) > 1e-12:
        raise InputError("affinity matrix must be symmetric")
    if np.any(W < 0.0):
        raise InputError("affinity entries must be non-negative")
    if np.any(W > 1.0 + 1e-12):
        raise InputError("affinity entries must not exceed 1")
    if np.max(np.abs(np.diagonal(W) - 1.0)) > 1e-12:
        raise InputError("affinity matrix must have unit diagonal")
    d = W.sum(axis=1)
    P = W / d[:, None]
    return MarkovModel(affinity=W, degree=d, transition=P, sigma=sigma)


def spectral_decompose(model: MarkovModel) -> Spectrum:
    """Eigenvalues and right eigenvectors of the transition matrix.

    Solves the symmetric conjugate S = D^(-1/2) W D^(-1/2) and maps its
    orthonormal eigenvectors back with Phi_k = D^(-1/2) u_k. Eigenvalues come
    out sorted descending (ties keep solver order); each eigenvector's sign
    is fixed so its first largest-magnitude component is positive.

    Raises NumericError if the solver fails or the eigenpair residual
    max_k ||P phi_k - lambda_k phi_k||_inf exceeds 1e-8.
    """
    inv_sqrt = 1.0 / np.sqrt(model.degree)
    S = model.affinity * np.outer(inv_sqrt, inv_sqrt)
    try:
        evals, U = scipy.linalg.eigh(S)
    except scipy.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed to converge: {exc}") from exc

    order = np.argsort(-evals, kind="stable")
    evals = evals[order]
    vectors = U[:, order] * inv_sqrt[:, None]
    for k in range(vectors.shape[1]):
        lead = np.argmax(np.abs(vectors[:, k]))
        if vectors[lead, k] < 0:
            vectors[:, k] = -vectors[:, k]

    residual = float(np.max(np.abs(model.transition @ vectors - vectors * evals[None, :])))
    if residual > RESIDUAL_TOL:
        raise NumericError(
            f"eigenpair residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e}", residual=residual
        )
    return Spectrum(eigenvalues=evals, vectors=vectors, sqrt_degree=np.sqrt(model.degree))


def embed(
    spectrum: Spectrum,
    t: int = 1,
    n_components: int = 2,
    skip_trivial: bool = False,
) -> DiffusionEmbedding:
    """Truncated diffusion map: columns lambda_k^t * phi_k for the top components.

    Components start at the leading eigenvalue (the constant eigenvector at
    lambda = 1) unless `skip_trivial` drops it. Requires
    1 <= n_components <= N (N - 1 with skip_trivial) and integer t >= 0.
    """
    if isinstance(t, bool) or not isinstance(t, (int, np.integer)):
        raise InputError(f"diffusion time t must be a non-negative integer, got {t!r}")
    if t < 0:
        raise InputError(f"diffusion time t must be >= 0, got {t}")
    n = spectrum.n_points
    start = 1 if skip_trivial else 0
    if not 1 <= n_components <= n - start:
        raise InputError(
            f"n_components must be in [1, {n - start}] "
            f"(N={n}, skip_trivial={skip_trivial}), got {n_components}"
        )
    cols = slice(start, start + n_components)
    coords = spectrum.vectors[:, cols] * spectrum.eigenvalues[cols] ** t
    return DiffusionEmbedding(
        coords=coords, t=int(t), n_components=n_components, skip_trivial=skip_trivial
    )


def _transition_power(P: np.ndarray, t: int) -> np.ndarray:
    # Repeated multiplication on purpose: keeps this oracle independent of
    # the spectral path.
    out = np.eye(P.shape[0])
    for _ in range(t):
        out = out @ P
    return out


def _check_index(n: int, i: int, name: str) -> None:
    if not 0 <= i < n:
        raise InputError(f"{name}={i} out of range for {n} points")


def diffusion_distance_bruteforce(model: MarkovModel, t: int, i: int, j: int) -> float:
    """t-step diffusion distance via dense powers of the transition matrix.

    Euclidean distance between rows i and j of P^t. This is the reference
    implementation; the embedding is the fast path it checks against.
    """
    n = model.n_points
    _check_index(n, i, "i")
    _check_index(n, j, "j")
    Pt = _transition_power(model.transition, t)
    return float(np.linalg.norm(Pt[i] - Pt[j]))


def weighted_diffusion_distance_bruteforce(model: MarkovModel, t: int, i: int, j: int) -> float:
    """Degree-weighted t-step diffusion distance via dense powers.

    Weights each coordinate x by sum(d) / d(x). With eigenvectors normalized
    against the stationary distribution and every component kept, this equals
    the embedding distance exactly, which makes it the oracle for the
    spectral identity.
    """
    n = model.n_points
    _check_index(n, i, "i")
    _check_index(n, j, "j")
    Pt = _transition_power(model.transition, t)
    diff = Pt[i] - Pt[j]
    weight = model.degree.sum() / model.degree
    return float(np.sqrt(np.sum(diff * diff * weight)))


def embedding_distance(embedding: DiffusionEmbedding, i: int, j: int) -> float:
    """Euclidean distance between two rows of the embedding coordinates."""
    n = embedding.n_points
    _check_index(n, i, "i")
    _check_index(n, j, "j")
    return float(np.linalg.norm(embedding.coords[i] - embedding.coords[j]))


def export_embedding(
    embedding: DiffusionEmbedding,
    csv_path,
    meta_path,
    sigma: Optional[float] = None,
    eigenvalues=None,
    ids=None,
) -> None:
    """Write embedding coordinates as CSV plus a JSON metadata sidecar.

    The CSV holds one row per point with the coordinate columns (prefixed by
    the row id when `ids` is given), floats in shortest round-trip form. The
    sidecar records sigma, t, L, skip_trivial, and the eigenvalue list.
    """
    if ids is not None and len(ids) != embedding.n_points:
        raise InputError(f"ids must have length {embedding.n_points}, got {len(ids)}")
    with open(csv_path, "w", encoding="utf-8") as fh:
        for i in range(embedding.n_points):
            cells = [] if ids is None else [str(ids[i])]
            cells += [repr(float(v)) for v in embedding.coords[i]]
            fh.write(",".join(cells) + "\n")
    meta = {
        "sigma": None if sigma is None else float(sigma),
        "t": embedding.t,
        "L": embedding.n_components,
        "skip_trivial": embedding.skip_trivial,
        "eigenvalues": None if eigenvalues is None else [float(v) for v in eigenvalues],
    }
    with open(meta_path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(meta, indent=2) + "\n")

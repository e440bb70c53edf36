"""fardiff: diffusion-map embedding composed with fuzzy adaptive resonance clustering.

The library splits into five layers: `dataset` (ingestion, generators,
normalization), `diffusion` (Gaussian-affinity Markov models, spectra,
embeddings, distance oracles), `fuzzyart` (the resonance clustering engine),
`pipeline` (the composed algorithm plus run reports), and `metrics`
(label-based scoring). `cli` binds them into the `fardiff` command.
"""

from .dataset import (
    DataSet,
    blob_centers,
    generate_blobs,
    generate_rings,
    load_csv,
    minmax_normalize,
    minmax_scale,
    save_csv,
)
from .diffusion import (
    DiffusionEmbedding,
    MarkovModel,
    Spectrum,
    diffusion_distance_bruteforce,
    embed,
    embedding_distance,
    export_embedding,
    gaussian_affinity,
    markov_normalize,
    median_sigma,
    spectral_decompose,
    weighted_diffusion_distance_bruteforce,
)
from .exceptions import FardiffError, InputError, NumericError, ParseError
from .fuzzyart import (
    NO_MATCH,
    ArtModel,
    ArtParams,
    Assignment,
    choice,
    complement_code,
    fuzzy_and,
    learn,
    load_model,
    model_from_json,
    model_to_json,
    predict,
    save_model,
    train,
    vigilance_pass,
)
from .metrics import adjusted_rand_index, contingency_table, purity
from .pipeline import (
    FardiffConfig,
    RunReport,
    embed_dataset,
    fardiff_cluster,
    write_assignment_csv,
)

__version__ = "0.1.0"

__all__ = [
    "DataSet",
    "blob_centers",
    "generate_blobs",
    "generate_rings",
    "load_csv",
    "minmax_normalize",
    "minmax_scale",
    "save_csv",
    "DiffusionEmbedding",
    "MarkovModel",
    "Spectrum",
    "diffusion_distance_bruteforce",
    "embed",
    "embedding_distance",
    "export_embedding",
    "gaussian_affinity",
    "markov_normalize",
    "median_sigma",
    "spectral_decompose",
    "weighted_diffusion_distance_bruteforce",
    "FardiffError",
    "InputError",
    "NumericError",
    "ParseError",
    "NO_MATCH",
    "ArtModel",
    "ArtParams",
    "Assignment",
    "choice",
    "complement_code",
    "fuzzy_and",
    "learn",
    "load_model",
    "model_from_json",
    "model_to_json",
    "predict",
    "save_model",
    "train",
    "vigilance_pass",
    "adjusted_rand_index",
    "contingency_table",
    "purity",
    "FardiffConfig",
    "RunReport",
    "embed_dataset",
    "fardiff_cluster",
    "write_assignment_csv",
    "__version__",
]

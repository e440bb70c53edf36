"""Acceptance suite: one test per release criterion, at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one pass line per
criterion. Parameter points for the synthetic experiments were fixed by a
coarse grid run and are frozen here with their exact configuration.
"""

import json
import subprocess
import sys
import time

import numpy as np

from fardiff import (
    ArtParams,
    DataSet,
    FardiffConfig,
    adjusted_rand_index,
    embed,
    embedding_distance,
    fardiff_cluster,
    gaussian_affinity,
    generate_blobs,
    generate_rings,
    markov_normalize,
    minmax_scale,
    spectral_decompose,
    train,
)
from fardiff.diffusion import (
    _transition_power,
    diffusion_distance_bruteforce,
    weighted_diffusion_distance_bruteforce,
)
from fardiff.fuzzyart import learn


def _report(n, started, message):
    print(f"[criterion {n}] PASS ({time.perf_counter() - started:.1f}s): {message}")


def _random_dataset(rng, max_n, max_m):
    n = int(rng.integers(2, max_n + 1))
    m = int(rng.integers(1, max_m + 1))
    return DataSet(rng.uniform(-2.0, 2.0, size=(n, m)))


def test_criterion_1_row_stochasticity():
    started = time.perf_counter()
    rng = np.random.default_rng(1001)
    worst = 0.0
    for _ in range(100):
        data = _random_dataset(rng, 300, 20)
        sigma = float(rng.uniform(0.1, 10.0))
        model = markov_normalize(gaussian_affinity(data, sigma), sigma=sigma)
        err = float(np.max(np.abs(model.transition.sum(axis=1) - 1.0)))
        worst = max(worst, err)
        assert err <= 1e-12
    assert time.perf_counter() - started < 30
    _report(1, started, f"100 random models row-stochastic, worst row-sum error {worst:.2e}")


def test_criterion_2_spectral_contract():
    started = time.perf_counter()
    rng = np.random.default_rng(1002)
    worst_residual = 0.0
    for _ in range(25):
        data = _random_dataset(rng, 100, 8)
        sigma = float(rng.uniform(0.3, 5.0))
        model = markov_normalize(gaussian_affinity(data, sigma), sigma=sigma)
        spec = spectral_decompose(model)
        lam, V = spec.eigenvalues, spec.vectors
        assert np.all(np.diff(lam) <= 0.0)
        assert abs(lam[0] - 1.0) <= 1e-10
        assert lam[-1] >= -1e-10
        residual = float(np.max(np.abs(model.transition @ V - V * lam[None, :])))
        worst_residual = max(worst_residual, residual)
        assert residual <= 1e-8
    assert time.perf_counter() - started < 30
    _report(2, started, f"25 spectra meet the contract, worst eigenpair residual {worst_residual:.2e}")


def test_criterion_3_diffusion_distance_oracle():
    started = time.perf_counter()
    rng = np.random.default_rng(1003)
    worst_spectral = 0.0
    worst_rowdist = 0.0
    for _ in range(20):
        data = _random_dataset(rng, 50, 5)
        n = data.n_points
        sigma = float(rng.uniform(0.5, 4.0))
        model = markov_normalize(gaussian_affinity(data, sigma), sigma=sigma)
        spec = spectral_decompose(model).stationary_normalized()
        weight = model.degree.sum() / model.degree
        for t in (0, 1, 2, 5):
            Pt = _transition_power(model.transition, t)
            emb = embed(spec, t=t, n_components=n, skip_trivial=False)
            # all pairs, same arithmetic as the per-pair operations
            diff = Pt[:, None, :] - Pt[None, :, :]
            weighted = np.sqrt(np.einsum("ijk,k->ij", diff * diff, weight))
            plain = np.sqrt((diff * diff).sum(axis=2))
            spectral = np.sqrt(
                ((emb.coords[:, None, :] - emb.coords[None, :, :]) ** 2).sum(axis=2)
            )
            worst_spectral = max(worst_spectral, float(np.max(np.abs(weighted - spectral))))
            assert np.max(np.abs(weighted - spectral)) <= 1e-8
            rowdist = np.sqrt(((Pt[:, None, :] - Pt[None, :, :]) ** 2).sum(axis=2))
            worst_rowdist = max(worst_rowdist, float(np.max(np.abs(rowdist - plain))))
            assert np.max(np.abs(rowdist - plain)) <= 1e-12
            # tie the vectorized sweep back to the per-pair operations
            for _ in range(5):
                i, j = int(rng.integers(n)), int(rng.integers(n))
                assert abs(
                    weighted_diffusion_distance_bruteforce(model, t, i, j) - weighted[i, j]
                ) <= 1e-12
                assert abs(diffusion_distance_bruteforce(model, t, i, j) - plain[i, j]) <= 1e-12
                assert abs(embedding_distance(emb, i, j) - spectral[i, j]) <= 1e-12
    assert time.perf_counter() - started < 60
    _report(
        3,
        started,
        "20 models x t in {0,1,2,5}: weighted oracle vs stationary-normalized embedding "
        f"worst gap {worst_spectral:.2e}; row-distance identity worst gap {worst_rowdist:.2e}",
    )


def test_criterion_4_fuzzy_art_endpoints():
    started = time.perf_counter()
    rng = np.random.default_rng(1004)
    for _ in range(50):
        n = int(rng.integers(2, 201))
        m = int(rng.integers(1, 5))
        X = rng.uniform(size=(n, m))

        _, a0 = train(X, ArtParams(rho=0.0, beta=1.0))
        assert a0.n_categories == 1

        _, a1 = train(X, ArtParams(rho=1.0, beta=1.0, complement_coding=True))
        distinct = len(np.unique(X, axis=0))
        assert a1.n_categories == distinct
        # identical patterns share a category
        rep = np.vstack([X[:3], X[:3]])
        _, arep = train(rep, ArtParams(rho=1.0, beta=1.0))
        np.testing.assert_array_equal(arep.category[:3], arep.category[3:])

        model0, _ = train(X, ArtParams(rho=float(rng.uniform(0, 1)), beta=0.0))
        assert np.all(model0.weights == 1.0)
        w = rng.uniform(size=2 * m)
        np.testing.assert_array_equal(learn(w, rng.uniform(size=2 * m), 0.0), w)
    assert time.perf_counter() - started < 30
    _report(4, started, "50 corpora: rho=0 -> 1 category, rho=1 -> one per distinct pattern, "
                        "beta=0 leaves weights untouched")


def test_criterion_5_fa_stability():
    started = time.perf_counter()
    rng = np.random.default_rng(1005)
    max_epochs_seen = 0
    for k in range(30):
        n = int(rng.integers(5, 151))
        m = int(rng.integers(1, 7))
        X = rng.uniform(size=(n, m))
        rho = float(rng.uniform(0.1, 0.95))
        _, assign = train(X, ArtParams(rho=rho, beta=1.0, max_epochs=100))
        max_epochs_seen = max(max_epochs_seen, assign.epochs)
        assert assign.epochs < 100

        if k < 8:
            # Weight monotonicity across the run: prototypes at a later epoch
            # cap are componentwise <= the same prototype earlier. Commit
            # order is deterministic, so indices align between runs.
            prev = None
            for cap in range(1, assign.epochs + 1):
                model, _ = train(X, ArtParams(rho=rho, beta=1.0, max_epochs=cap))
                if prev is not None:
                    shared = min(len(prev), model.n_categories)
                    assert np.all(model.weights[:shared] <= prev[:shared] + 1e-15)
                prev = model.weights
    assert time.perf_counter() - started < 60
    _report(5, started, f"30 corpora stable (max {max_epochs_seen} epochs); weights "
                        "componentwise non-increasing across runs")


# Frozen by grid run: rings(100, 100, r=1/3, noise=0.05, seed=7); pipeline at
# sigma=0.3, t=3, L=2, trivial component kept, beta=1; rho grid below. The
# pipeline scores ARI 1.0 at every grid point while raw-coordinate clustering
# peaks at 0.315 (rho=0.70).
RINGS_SEED = 7
RINGS_RHO_GRID = (0.70, 0.75, 0.80, 0.85, 0.90)
RINGS_CONFIG = FardiffConfig(
    sigma=0.3, t=3, n_components=2, skip_trivial=False,
    art=ArtParams(alpha=0.001, beta=1.0, rho=0.75),
)


def test_criterion_6_rings_separation():
    started = time.perf_counter()
    rings = generate_rings(100, 100, r_inner=1.0, r_outer=3.0, noise=0.05, seed=RINGS_SEED)

    _, _, assign, _ = fardiff_cluster(rings, RINGS_CONFIG)
    pipeline_ari = adjusted_rand_index(assign, rings.labels)
    assert pipeline_ari >= 0.9

    raw = minmax_scale(rings.points)
    raw_best = max(
        adjusted_rand_index(
            train(raw, ArtParams(alpha=0.001, beta=1.0, rho=rho))[1], rings.labels
        )
        for rho in RINGS_RHO_GRID
    )
    assert raw_best <= 0.5
    assert time.perf_counter() - started < 120
    _report(6, started, f"pipeline ARI {pipeline_ari:.3f} >= 0.9 vs raw-coordinate best "
                        f"{raw_best:.3f} <= 0.5 over rho grid {RINGS_RHO_GRID}")


# Frozen by grid run: blobs(k=3, n_per=50, spread=0.1, separation=10, seed=7)
# through the pipeline with default (median) sigma, t=1, L=2 with the trivial
# component dropped, rho=0.65, beta=1.
BLOBS_SEED = 7
BLOBS_CONFIG = FardiffConfig(
    sigma=None, t=1, n_components=2, skip_trivial=True,
    art=ArtParams(alpha=0.001, beta=1.0, rho=0.65),
)


def test_criterion_7_blobs_sanity():
    started = time.perf_counter()
    blobs = generate_blobs(k=3, n_per=50, m=2, spread=0.1, separation=10.0, seed=BLOBS_SEED)
    _, _, assign, report = fardiff_cluster(blobs, BLOBS_CONFIG)
    ari = adjusted_rand_index(assign, blobs.labels)
    assert ari >= 0.95
    assert time.perf_counter() - started < 60
    _report(7, started, f"blobs pipeline ARI {ari:.3f} >= 0.95 "
                        f"({report.n_categories} categories, sigma {report.sigma:.3f})")


def test_criterion_8_cli_determinism(tmp_path):
    started = time.perf_counter()
    outputs = []
    for run in ("one", "two"):
        out = tmp_path / f"assign_{run}.csv"
        report = tmp_path / f"report_{run}.json"
        cmd = [
            sys.executable, "-m", "fardiff.cli", "pipeline",
            "--generate", "rings:n_inner=100,n_outer=100,r_inner=1,r_outer=3,noise=0.05",
            "--seed", str(RINGS_SEED),
            "--sigma", "0.3", "--t", "3", "--L", "2", "--no-skip-trivial",
            "--rho", "0.75", "--beta", "1",
            "--out", str(out), "--report", str(report),
        ]
        proc = subprocess.run(cmd, capture_output=True)
        assert proc.returncode == 0, proc.stderr.decode()
        outputs.append((out.read_bytes(), report.read_bytes()))
    assert outputs[0][0] == outputs[1][0]
    assert outputs[0][1] == outputs[1][1]
    doc = json.loads(outputs[0][1].decode())
    assert doc["n_categories"] == 2
    assert time.perf_counter() - started < 30
    _report(8, started, "two CLI pipeline runs byte-identical (assignment CSV and report JSON)")

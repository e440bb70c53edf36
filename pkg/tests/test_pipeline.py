import numpy as np
import pytest

from fardiff import (
    ArtParams,
    DataSet,
    FardiffConfig,
    InputError,
    adjusted_rand_index,
    fardiff_cluster,
    generate_rings,
    write_assignment_csv,
)

from .oracles import pair_counting_ari


class TestFardiffCluster:
    def test_single_point_dataset(self):
        emb, model, assign, report = fardiff_cluster(DataSet([[3.0, 4.0]]))
        assert assign.n_categories == 1
        assert report.n_points == 1
        # only the trivial component exists for one point
        assert report.n_components == 1
        assert report.sigma == 1.0

    def test_duplicated_rows_get_identical_categories(self):
        base = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 4.0]])
        data = DataSet(np.vstack([base, base]))
        _, _, assign, _ = fardiff_cluster(data, FardiffConfig(art=ArtParams(rho=0.6, beta=1.0)))
        np.testing.assert_array_equal(assign.category[:3], assign.category[3:])

    def test_rings_headline_parameter_point(self):
        # Grid-derived: sigma=0.3, t=3, L=2 with the trivial component kept
        # separates the rings with rho anywhere in [0.7, 0.9]; see the
        # acceptance suite for the full comparison against raw clustering.
        rings = generate_rings(100, 100, 1.0, 3.0, 0.05, seed=7)
        cfg = FardiffConfig(
            sigma=0.3, t=3, n_components=2, skip_trivial=False,
            art=ArtParams(rho=0.75, beta=1.0),
        )
        _, _, assign, _ = fardiff_cluster(rings, cfg)
        assert adjusted_rand_index(assign, rings.labels) >= 0.9

    def test_rings_two_component_tuned_point(self):
        # Grid-derived companion point with the trivial component dropped:
        # best rho over the [0.5, 0.9] tuning range is 0.5.
        rings = generate_rings(100, 100, 1.0, 3.0, 0.05, seed=7)
        cfg = FardiffConfig(
            sigma=0.3, t=3, n_components=2, skip_trivial=True,
            art=ArtParams(rho=0.5, beta=1.0),
        )
        _, _, assign, _ = fardiff_cluster(rings, cfg)
        ari = adjusted_rand_index(assign, rings.labels)
        assert ari == pytest.approx(pair_counting_ari(assign.category, rings.labels), abs=1e-12)
        assert ari >= 0.9

    def test_deterministic_report_and_assignment(self):
        rings = generate_rings(30, 30, 1.0, 3.0, 0.05, seed=2)
        cfg = FardiffConfig(t=2, n_components=2, skip_trivial=True)
        _, _, a1, r1 = fardiff_cluster(rings, cfg)
        _, _, a2, r2 = fardiff_cluster(rings, cfg)
        np.testing.assert_array_equal(a1.category, a2.category)
        assert r1.to_json() == r2.to_json()

    def test_report_records_resolved_values(self):
        rings = generate_rings(20, 20, 1.0, 3.0, 0.05, seed=4)
        cfg = FardiffConfig(sigma=0.5, t=2, n_components=3, skip_trivial=True,
                            art=ArtParams(rho=0.6))
        _, _, assign, report = fardiff_cluster(rings, cfg)
        doc = report.to_dict()
        assert doc["sigma"] == 0.5
        assert doc["t"] == 2 and doc["L"] == 3 and doc["skip_trivial"] is True
        assert doc["art"]["rho"] == 0.6
        assert len(doc["eigenvalues"]) == 40
        assert doc["n_categories"] == assign.n_categories
        assert doc["epochs"] == assign.epochs

    def test_component_count_clamped_to_dataset_size(self):
        data = DataSet([[0.0], [1.0], [2.0]])
        _, _, _, report = fardiff_cluster(data, FardiffConfig(n_components=10, skip_trivial=True))
        assert report.n_components == 2  # N - 1 with the trivial component dropped

    def test_normalized_embedding_feeds_unit_hypercube(self):
        from fardiff import minmax_scale

        rings = generate_rings(15, 15, 1.0, 3.0, 0.05, seed=6)
        emb, _, _, _ = fardiff_cluster(rings, FardiffConfig(n_components=2, skip_trivial=True))
        unit = minmax_scale(emb.coords)
        assert np.all(unit >= 0.0) and np.all(unit <= 1.0)

    def test_single_category_assignment_is_permutation_invariant(self):
        # With rho=0 the engine is order-insensitive by construction: every
        # pattern lands in the lone category.
        rng = np.random.default_rng(8)
        pts = rng.uniform(size=(20, 2))
        cfg = FardiffConfig(art=ArtParams(rho=0.0, beta=1.0))
        _, _, a, _ = fardiff_cluster(DataSet(pts), cfg)
        perm = rng.permutation(20)
        _, _, ap, _ = fardiff_cluster(DataSet(pts[perm]), cfg)
        np.testing.assert_array_equal(a.category[perm], ap.category)

    def test_stage_tagging_sigma(self):
        with pytest.raises(InputError, match="^sigma:"):
            fardiff_cluster(DataSet([[0.0], [1.0]]), FardiffConfig(sigma=-1.0))

    def test_stage_tagging_embed(self):
        with pytest.raises(InputError, match="^embed:"):
            fardiff_cluster(DataSet([[0.0], [1.0]]), FardiffConfig(n_components=0))

    def test_all_identical_points_need_explicit_sigma(self):
        with pytest.raises(InputError, match="^sigma:"):
            fardiff_cluster(DataSet([[1.0]] * 5))
        # explicit sigma makes the degenerate case legal: one category
        _, _, assign, _ = fardiff_cluster(DataSet([[1.0]] * 5), FardiffConfig(sigma=1.0))
        assert assign.n_categories == 1


class TestWriteAssignment:
    def test_file_format(self, tmp_path):
        from fardiff.fuzzyart import Assignment

        path = tmp_path / "assign.csv"
        write_assignment_csv(path, Assignment(category=np.array([1, 0]), n_categories=2),
                             ids=["a", "b"])
        assert path.read_text() == "id,category\na,1\nb,0\n"

    def test_default_integer_ids(self, tmp_path):
        from fardiff.fuzzyart import Assignment

        path = tmp_path / "assign.csv"
        write_assignment_csv(path, Assignment(category=np.array([0, 0, 1]), n_categories=2))
        assert path.read_text().splitlines()[1] == "0,0"

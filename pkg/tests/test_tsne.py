import numpy as np
import pytest
from scipy.spatial.distance import cdist

from podium.tsne import TsneParams, active_kernel, get_kernels, tsne


def knn_purity(coords, labels, k=5):
    d = cdist(coords, coords)
    np.fill_diagonal(d, np.inf)
    hits = [(labels[np.argsort(d[i])[:k]] == labels[i]).mean() for i in range(len(labels))]
    return float(np.mean(hits))


def test_seed_determinism(cluster_fixture):
    x, _ = cluster_fixture
    a = tsne(x, TsneParams(seed=3))
    b = tsne(x, TsneParams(seed=3))
    assert np.array_equal(a.coords, b.coords)


def test_different_seeds_differ(cluster_fixture):
    x, _ = cluster_fixture
    a = tsne(x, TsneParams(seed=1))
    b = tsne(x, TsneParams(seed=2))
    assert not np.array_equal(a.coords, b.coords)


def test_entropy_calibration(cluster_fixture):
    x, _ = cluster_fixture
    res = tsne(x, TsneParams(seed=3))
    assert np.max(np.abs(res.entropies - np.log2(10.0))) < 1e-4


def test_cluster_purity(cluster_fixture):
    x, labels = cluster_fixture
    res = tsne(x, TsneParams(seed=3))
    assert knn_purity(res.coords, labels, k=5) >= 0.9


def test_affinities_form_symmetric_distribution(cluster_fixture):
    x, _ = cluster_fixture
    kern = get_kernels()
    d = kern.pairwise_sq_dists(np.ascontiguousarray(x))
    p_cond, _ = kern.conditional_affinities(d, np.log2(10.0))
    n = x.shape[0]
    p = (p_cond + p_cond.T) / (2 * n)
    assert np.allclose(p, p.T)
    assert np.all(p >= 0)
    assert p.sum() == pytest.approx(1.0, abs=1e-9)


def test_kl_positive_and_decreasing_late(cluster_fixture):
    x, _ = cluster_fixture
    res = tsne(x, TsneParams(seed=3))
    assert all(k > 0 for k in res.kl_trace)
    late = res.kl_trace[-100:]
    assert all(late[i + 1] - late[i] <= 1e-3 for i in range(len(late) - 1))


def test_permutation_equivariance_exact():
    rng = np.random.default_rng(1)
    x = rng.normal(0, 1, (12, 4))
    base = tsne(x, TsneParams(seed=5))
    perm = rng.permutation(12)
    permuted = tsne(x[perm], TsneParams(seed=5))
    assert np.array_equal(permuted.coords, base.coords[perm])


def test_row_keys_permutation_equivariance(cluster_fixture):
    x, _ = cluster_fixture
    keys = [f"id{i:02d}" for i in range(len(x))]
    base = tsne(x, TsneParams(seed=3), row_keys=keys)
    perm = np.random.default_rng(9).permutation(len(x))
    permuted = tsne(x[perm], TsneParams(seed=3), row_keys=[keys[i] for i in perm])
    assert np.array_equal(permuted.coords, base.coords[perm])


def test_too_few_rows_rejected():
    with pytest.raises(ValueError, match="at least 3"):
        tsne(np.zeros((1, 4)))
    with pytest.raises(ValueError, match="at least 3"):
        tsne(np.zeros((2, 4)))


def test_non_finite_rejected():
    x = np.zeros((5, 3))
    x[2, 1] = np.nan
    with pytest.raises(ValueError, match="non-finite"):
        tsne(x)


def test_perplexity_clamped_with_warning():
    x = np.random.default_rng(0).normal(0, 1, (6, 3))
    with pytest.warns(UserWarning, match="clamped"):
        res = tsne(x, TsneParams(perplexity=10.0, seed=0))
    assert res.perplexity_used == pytest.approx(5 / 3)


def test_coincident_pair_stays_together():
    x = np.array([[0.0, 0.0], [0.0, 0.0], [5.0, 5.0]])
    with pytest.warns(UserWarning):
        res = tsne(x, TsneParams(seed=0))
    d01 = np.linalg.norm(res.coords[0] - res.coords[1])
    d02 = np.linalg.norm(res.coords[0] - res.coords[2])
    assert d01 < d02


def test_iterations_floor():
    with pytest.raises(ValueError, match="250"):
        TsneParams(iterations=100)


class TestKernelAgreement:
    """The compiled and fallback kernels must agree numerically."""

    def setup_method(self):
        rng = np.random.default_rng(0)
        self.x = np.ascontiguousarray(rng.normal(0, 1, (30, 5)))
        self.y = np.ascontiguousarray(rng.normal(0, 1, (30, 2)))

    def test_both_importable_and_distinct(self):
        assert get_kernels("numpy") is not None
        if active_kernel() == "cython":
            assert get_kernels("cython") is not get_kernels("numpy")

    def test_distances_agree(self):
        if active_kernel() != "cython":
            pytest.skip("compiled kernel not built")
        d1 = get_kernels("numpy").pairwise_sq_dists(self.x.copy())
        d2 = get_kernels("cython").pairwise_sq_dists(self.x.copy())
        m = np.isfinite(d1)
        assert np.allclose(d1[m], d2[m], atol=1e-12)

    def test_affinities_agree(self):
        if active_kernel() != "cython":
            pytest.skip("compiled kernel not built")
        d = get_kernels("numpy").pairwise_sq_dists(self.x.copy())
        p1, h1 = get_kernels("numpy").conditional_affinities(d, np.log2(10.0))
        p2, h2 = get_kernels("cython").conditional_affinities(d, np.log2(10.0))
        assert np.allclose(p1, p2, atol=1e-12)
        assert np.allclose(h1, h2, atol=1e-12)

    def test_gradients_agree(self):
        if active_kernel() != "cython":
            pytest.skip("compiled kernel not built")
        knp = get_kernels("numpy")
        d = knp.pairwise_sq_dists(self.x.copy())
        p_cond, _ = knp.conditional_affinities(d, np.log2(10.0))
        p = (p_cond + p_cond.T) / 60.0
        p = np.ascontiguousarray(np.maximum(p, 1e-12))
        np.fill_diagonal(p, 0.0)
        kl1, g1 = knp.kl_and_gradient(p, p, self.y.copy())
        kl2, g2 = get_kernels("cython").kl_and_gradient(p, p, self.y.copy())
        assert kl1 == pytest.approx(kl2, abs=1e-12)
        assert np.allclose(g1, g2, atol=1e-12)

    def test_gradient_matches_finite_differences(self):
        kern = get_kernels()
        rng = np.random.default_rng(4)
        y = np.ascontiguousarray(rng.normal(0, 1, (8, 2)))
        p_cond, _ = kern.conditional_affinities(kern.pairwise_sq_dists(np.ascontiguousarray(rng.normal(0, 1, (8, 3)))), np.log2(2.0))
        p = (p_cond + p_cond.T) / 16.0
        p = np.ascontiguousarray(np.maximum(p, 1e-12))
        np.fill_diagonal(p, 0.0)
        _, grad = kern.kl_and_gradient(p, p, y)
        eps = 1e-6
        for i in range(8):
            for dim in range(2):
                yp, ym = y.copy(), y.copy()
                yp[i, dim] += eps
                ym[i, dim] -= eps
                klp, _ = kern.kl_and_gradient(p, p, np.ascontiguousarray(yp))
                klm, _ = kern.kl_and_gradient(p, p, np.ascontiguousarray(ym))
                num = (klp - klm) / (2 * eps)
                assert grad[i, dim] == pytest.approx(num, abs=1e-6, rel=1e-5)

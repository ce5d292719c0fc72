import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from lnpe.datasets import generate_swiss_roll
from lnpe.exceptions import SingularSystemError
from lnpe.neighbors import NeighborGraph, knn_graph
from lnpe.propagation import (
    PropagationConfig,
    accumulate_objective,
    matrix_product_chain,
    run_propagation,
)
from lnpe.weights import solve_local_weights
from oracles import dense_lnpe_objective, exact_hop_support

TOY = np.array(
    [[0.0, 0.0], [1.0, 0.1], [2.0, -0.1], [3.0, 0.2], [1.5, 1.0], [0.5, 0.8]]
)


def test_toy_matches_dense_oracle():
    g = knn_graph(TOY, 2)
    m, trace = run_propagation(TOY, g, PropagationConfig(t=2, k=2, sigma=1e-3))
    ref_m, ref_w, ref_p, _ = dense_lnpe_objective(TOY, 2, 1e-3, 2)
    np.testing.assert_allclose(m, ref_m, atol=1e-9, rtol=0)
    for rec, w, p in zip(trace, ref_w, ref_p):
        np.testing.assert_allclose(rec.weights.toarray(), w, atol=1e-9)
        np.testing.assert_allclose(rec.product.toarray(), p, atol=1e-9)


def test_toy_sparsity_is_exact_hop_reachability():
    g = knn_graph(TOY, 2)
    _, trace = run_propagation(TOY, g, PropagationConfig(t=2, k=2, sigma=1e-3))
    for e, rec in enumerate(trace, start=1):
        support = rec.product.toarray() != 0
        np.testing.assert_array_equal(support, exact_hop_support(g.indices, e))


def test_random_sparsity_growth():
    data = np.random.default_rng(4).normal(size=(40, 3))
    g = knn_graph(data, 3)
    _, trace = run_propagation(data, g, PropagationConfig(t=3, k=3, sigma=1e-3))
    for e, rec in enumerate(trace, start=1):
        np.testing.assert_array_equal(rec.product.toarray() != 0, exact_hop_support(g.indices, e))
    assert np.all(np.diff(trace.densities) >= 0)


def test_t0_is_lle_objective():
    data = generate_swiss_roll(200, 0).points
    g = knn_graph(data, 7)
    m, trace = run_propagation(data, g, PropagationConfig(t=0, k=7, sigma=1e-4))
    assert len(trace) == 1
    a = solve_local_weights(data, data, g, 1e-4).toarray() - np.eye(200)
    np.testing.assert_allclose(m, a @ a.T, atol=1e-12)


@pytest.mark.parametrize("t", [0, 1, 3])
def test_products_column_stochastic_and_objective_invariants(t):
    data = generate_swiss_roll(300, 2).points
    g = knn_graph(data, 6)
    m, trace = run_propagation(data, g, PropagationConfig(t=t, k=6, sigma=1e-3))
    assert len(trace) == t + 1
    for rec in trace:
        np.testing.assert_allclose(np.asarray(rec.product.sum(axis=0)).ravel(), 1, atol=1e-9)
        np.testing.assert_allclose(rec.weights.column_sums(), 1, atol=1e-9)
        assert np.isfinite(rec.residual) and rec.residual >= 0
        assert 0 < rec.density <= 1
    assert np.abs(m - m.T).max() <= 1e-10
    assert np.linalg.eigvalsh(m).min() >= -1e-8
    assert np.abs(m @ np.ones(300)).max() <= 1e-8


def test_residual_is_reconstruction_error():
    data = np.random.default_rng(1).normal(size=(30, 3))
    g = knn_graph(data, 4)
    _, trace = run_propagation(data, g, PropagationConfig(t=2, k=4, sigma=1e-2))
    for rec in trace:
        recon = (data.T @ rec.product.toarray()).T
        assert rec.residual == pytest.approx(np.linalg.norm(recon - data), rel=1e-12)
    assert trace.final_residual == trace[-1].residual


def test_later_pass_depends_on_reconstruction():
    data = np.random.default_rng(8).normal(size=(30, 3))
    g = knn_graph(data, 4)
    _, trace = run_propagation(data, g, PropagationConfig(t=1, k=4, sigma=1e-3))
    basis = (data.T @ trace[0].product.toarray()).T
    w2 = solve_local_weights(data, basis, g, 1e-3)
    np.testing.assert_allclose(trace[1].weights.values, w2.values, atol=1e-12)
    assert not np.allclose(trace[1].weights.values, trace[0].weights.values)


def test_singular_error_carries_pass_index():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [5.0, 5.0]])
    rows = np.array([[1, 2], [2, 0], [1, 0], [1, 2]])
    g = NeighborGraph(2, rows, np.zeros((4, 2)))
    with pytest.raises(SingularSystemError) as exc:
        run_propagation(pts, g, PropagationConfig(t=1, k=2, sigma=0.0))
    assert exc.value.pass_index == 1
    assert str(exc.value).startswith("pass 1:")


@pytest.mark.parametrize("bad", [dict(t=-1), dict(k=0), dict(sigma=-1.0), dict(t=1.5)])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        PropagationConfig(**bad)


def test_chain_upto_one_is_first_matrix():
    data = np.random.default_rng(0).normal(size=(12, 2))
    g = knn_graph(data, 3)
    w = solve_local_weights(data, data, g, 1e-3)
    p = matrix_product_chain([w, w], 1)
    np.testing.assert_array_equal(p.toarray(), w.toarray())


def test_chain_of_permutations():
    rng = np.random.default_rng(0)
    a, b = rng.permutation(7), rng.permutation(7)
    pa = sp.csc_matrix(np.eye(7)[:, a])
    pb = sp.csc_matrix(np.eye(7)[:, b])
    p = matrix_product_chain([pa, pb], 2).toarray()
    np.testing.assert_array_equal(p, np.eye(7)[:, a[b]])


def test_chain_matches_dense_multiply():
    rng = np.random.default_rng(9)
    mats = []
    for _ in range(2):
        dense = rng.random((8, 8)) * (rng.random((8, 8)) < 0.4)
        dense[rng.integers(0, 8, 8), np.arange(8)] += 0.5
        dense /= dense.sum(axis=0)
        mats.append(dense)
    p = matrix_product_chain([sp.csc_matrix(x) for x in mats], 2).toarray()
    np.testing.assert_allclose(p, mats[0] @ mats[1], atol=1e-12, rtol=0)
    np.testing.assert_allclose(p.sum(axis=0), 1, atol=1e-12)


def test_chain_bounds_and_mismatch():
    w = sp.identity(4, format="csc")
    with pytest.raises(ValueError):
        matrix_product_chain([w], 2)
    with pytest.raises(ValueError):
        matrix_product_chain([w], 0)
    with pytest.raises(ValueError, match="mismatch"):
        matrix_product_chain([w, sp.identity(5, format="csc")], 2)


def test_accumulate_identity_is_noop():
    m = np.random.default_rng(0).normal(size=(5, 5))
    m = m @ m.T
    np.testing.assert_array_equal(accumulate_objective(m, sp.identity(5, format="csc")), m)


def test_accumulate_hand_computed_3x3():
    p = np.array([[0.5, 0.2, 0.0], [0.5, 0.3, 1.0], [0.0, 0.5, 0.0]])
    expected = np.array(
        [[0.29, -0.39, 0.10], [-0.39, 1.74, -1.35], [0.10, -1.35, 1.25]]
    )
    for form in (p, sp.csc_matrix(p)):
        out = accumulate_objective(np.zeros((3, 3)), form)
        np.testing.assert_allclose(out, expected, atol=1e-14)
        assert np.abs(out @ np.ones(3)).max() <= 1e-10


def test_accumulate_shape_mismatch():
    with pytest.raises(ValueError):
        accumulate_objective(np.zeros((3, 3)), np.eye(4))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(8, 30), t=st.integers(0, 3))
def test_objective_invariants_property(seed, n, t):
    data = np.random.default_rng(seed).normal(size=(n, 3))
    k = 4
    g = knn_graph(data, k)
    m, trace = run_propagation(data, g, PropagationConfig(t=t, k=k, sigma=1e-3))
    assert np.abs(m - m.T).max() <= 1e-10
    assert np.linalg.eigvalsh(m).min() >= -1e-8
    assert np.abs(m.sum(axis=1)).max() <= 1e-8
    for rec in trace:
        np.testing.assert_allclose(np.asarray(rec.product.sum(axis=0)).ravel(), 1, atol=1e-9)

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complexes
from oracles import dense_boundaries, dense_laplacians, epr_oracle, pagerank_power
from hodgerank.complex import build_complex, graph_from_edges
from hodgerank.epr import (
    ConfigError,
    EprConfig,
    edge_pagerank,
    epr_all_edges,
    epr_dynamical,
    node_pagerank,
    personalized_epr,
)
from hodgerank.hodge import decompose
from hodgerank.linalg import SolverError
from hodgerank.operators import boundary_operators, hodge_laplacian
from hodgerank.synth import barbell


def bundle_of(c):
    return hodge_laplacian(boundary_operators(c))


def test_single_edge_is_one_seventh():
    b = bundle_of(build_complex([[1, 2]]))
    r = personalized_epr(0, b)
    assert r.pi[0] == pytest.approx(1 / 7, abs=1e-12)
    assert epr_all_edges(b)[0, 0] == pytest.approx(1 / 7, abs=1e-12)


def test_config_validation():
    with pytest.raises(ConfigError):
        EprConfig(beta=2.0)
    with pytest.raises(ConfigError):
        EprConfig(tol=0)
    assert EprConfig().alpha == pytest.approx(0.8)


def test_five_node_seed_matches_dense_solve(five_node, five_bundle):
    seed = five_node.edge_index[(1, 3)]  # edge [2,4]
    r = personalized_epr(seed, five_bundle)
    B1, B2 = dense_boundaries(five_node.edges.tolist(), five_node.triangles.tolist(), five_node.n)
    _, Ln, _ = dense_laplacians(B1, B2)
    x = np.eye(7)[seed]
    assert np.abs(r.pi - epr_oracle(Ln, x)).max() < 1e-9
    resid = np.linalg.norm(2.5 * r.pi + five_bundle.L1_norm @ r.pi - 0.5 * x)
    assert resid < 1e-10


def test_reversed_seed_flips_sign(five_bundle):
    a, b = personalized_epr(2, five_bundle), personalized_epr(2, five_bundle, sign=-1)
    assert np.allclose(a.pi, -b.pi, atol=1e-15)
    assert a.total == b.total
    assert a.components.norms == pytest.approx(b.components.norms, abs=1e-12)


def test_dynamical_first_step_and_limit(five_bundle):
    cfg = EprConfig()
    assert np.allclose(epr_dynamical(3, five_bundle, cfg, 1), 0.2 * np.eye(7)[3])
    direct = personalized_epr(3, five_bundle).pi
    assert np.abs(epr_dynamical(3, five_bundle, cfg, 200) - direct).max() < 1e-8


def test_dynamical_harmonic_part_is_fixed(five_bundle):
    cfg = EprConfig()
    x = np.eye(7)[3]
    xh = decompose(x, five_bundle, "weighted").harmonic
    for k in (1, 2, 5, 30):
        pk = epr_dynamical(3, five_bundle, cfg, k)
        assert np.abs(decompose(pk, five_bundle, "weighted").harmonic - 0.2 * xh).max() < 1e-12


def test_large_beta_limit(five_bundle):
    beta = 1e6
    pi = personalized_epr(1, five_bundle, EprConfig(beta=beta)).pi
    assert np.linalg.norm(pi - np.eye(7)[1] * (beta - 2) / beta) < 1e-4


def test_barbell_bridge_has_larger_gradient_share():
    c = build_complex(barbell(5))
    M = epr_all_edges(bundle_of(c))
    bridge = c.edge_index[(4, 5)]
    inner = c.edge_index[(0, 1)]
    share = M[:, 1] / M[:, 0]
    assert share[bridge] > share[inner]
    # a global bridge seed stays in the gradient space
    assert M[bridge, 2] < 1e-12 and M[bridge, 3] < 1e-12


def test_disconnected_components_do_not_mix():
    c = build_complex([[0, 1, 2], [2, 3], [10, 11], [11, 12], [12, 10]])
    r = personalized_epr(c.edge_index[(0, 1)], bundle_of(c))
    other = [c.edge_index[k] for k in c.edge_index if k[0] >= 4]
    assert np.all(r.pi[other] == 0)


def test_all_edges_independent_of_threads(five_bundle):
    for chunk in (1, 3, None):
        ref = epr_all_edges(five_bundle, threads=1, chunk=chunk)
        for threads in (2, 4, None):
            assert np.array_equal(epr_all_edges(five_bundle, threads=threads, chunk=chunk), ref)
    # block width only changes rounding
    assert np.abs(epr_all_edges(five_bundle, chunk=1) - epr_all_edges(five_bundle, chunk=7)).max() < 1e-12


def test_weighted_norm_option(five_bundle):
    std = epr_all_edges(five_bundle)
    w = epr_all_edges(five_bundle, norm="weighted")
    assert np.allclose(std, w)  # all d2 = 1 here
    with pytest.raises(ValueError):
        epr_all_edges(five_bundle, norm="max")


def test_solver_error_reports_seeds(five_bundle):
    with pytest.raises(SolverError, match="seeds 0"):
        epr_all_edges(five_bundle, EprConfig(max_iter=1, tol=1e-14), threads=1)


def test_bad_seed(five_bundle):
    with pytest.raises(IndexError):
        personalized_epr(7, five_bundle)


@given(c=complexes(), data=st.data())
def test_epr_invariants(c, data):
    b = bundle_of(c)
    seed = data.draw(st.integers(0, c.e - 1))
    r = personalized_epr(seed, b)
    B1, B2 = dense_boundaries(c.edges.tolist(), c.triangles.tolist(), c.n)
    _, Ln, _ = dense_laplacians(B1, B2)
    x = np.eye(c.e)[seed]
    assert np.abs(r.pi - epr_oracle(Ln, x)).max() < 1e-9
    assert np.linalg.norm(2.5 * r.pi + b.L1_norm @ r.pi - 0.5 * x) < 1e-10
    xh = decompose(x, b, "weighted").harmonic
    assert np.linalg.norm(r.components.harmonic - 0.2 * xh) < 1e-9
    sym = decompose(r.pi, b, "symmetric")
    assert abs(r.total**2 - sum(v**2 for v in sym.norms)) < 1e-8
    flipped = personalized_epr(seed, b, sign=-1)
    assert abs(flipped.total - r.total) < 1e-12
    assert np.allclose(flipped.components.norms, r.components.norms, atol=1e-12)


@given(c=complexes())
def test_batch_solve_matches_single(c):
    b = bundle_of(c)
    P = edge_pagerank(np.eye(c.e), b)
    for j in range(c.e):
        assert np.abs(P[:, j] - personalized_epr(j, b).pi).max() < 1e-10


def test_node_pagerank_examples():
    assert np.allclose(node_pagerank(graph_from_edges(2, [(0, 1)])), [0.5, 0.5])
    star = node_pagerank(graph_from_edges(4, [(0, 1), (0, 2), (0, 3)]))
    assert star[0] > star[1:].max()
    cyc = node_pagerank(graph_from_edges(5, [(i, (i + 1) % 5) for i in range(5)]))
    assert np.allclose(cyc, 0.2)


def test_node_pagerank_matches_power_iteration():
    rng = np.random.default_rng(1)
    A = np.triu(rng.random((15, 15)) < 0.2, 1)
    A = (A | A.T).astype(float)
    A[3, :] = A[:, 3] = 0  # isolated node
    g = graph_from_edges(15, np.argwhere(np.triu(A)).tolist())
    assert np.abs(node_pagerank(g) - pagerank_power(A)).max() < 1e-10
    v = np.zeros(15)
    v[0] = 1
    assert np.abs(node_pagerank(g, preference=v) - pagerank_power(A, v=v)).max() < 1e-10


def test_node_pagerank_validation():
    g = graph_from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        node_pagerank(g, alpha=1.0)
    with pytest.raises(ValueError):
        node_pagerank(g, preference=[0.7, 0.7])

import math
import warnings

import numpy as np
import pytest

from htcut import tensor
from htcut.generators import (FIXTURES, Family, GenSpec, fixture, gen_cockroach, gen_er,
                              gen_random_uniform, gen_sbm_graph, gen_sbm_hypergraph, instance_rng)
from htcut.hypergraph import connected_components


def test_er_extremes():
    assert gen_er(10, 1.0).m == 45
    assert gen_er(10, 0.0).m == 0
    with pytest.raises(ValueError):
        gen_er(5, 1.5)


def test_er_edge_count_within_four_sigma():
    m = gen_er(100, 0.2, seed=11).m
    sigma = math.sqrt(4950 * 0.2 * 0.8)
    assert abs(m - 990) <= 4 * sigma


def test_sbm_inter_edge_count_within_four_sigma():
    h = gen_sbm_graph(50, 50, 0.3, 0.05, seed=3)
    E = h.edge_array
    inter = int(np.sum((E[:, 0] < 50) != (E[:, 1] < 50)))
    assert abs(inter - 125) <= 4 * math.sqrt(2500 * 0.05 * 0.95)


def test_sbm_without_inter_edges_has_two_components():
    assert connected_components(gen_sbm_graph(8, 8, 1.0, 0.0)).p == 2
    assert connected_components(gen_sbm_hypergraph(6, 6, 3, 1.0, 0.0)).p == 2


def test_sbm_with_equal_probabilities_matches_er_mean():
    # p = q reduces to ER(n1 + n2, p); compare mean edge counts over seeds
    counts = [gen_sbm_graph(10, 10, 0.3, 0.3, seed=s).m for s in range(200)]
    mean, sd = np.mean(counts), math.sqrt(190 * 0.3 * 0.7 / 200)
    assert abs(mean - 57) <= 4 * sd


def test_hypergraph_sbm_edge_count_within_four_sigma():
    # n=60, k=4, p tuned so that about 500 of the 2*C(30,4) intra subsets are kept
    n_intra = 2 * math.comb(30, 4)
    p = 500 / n_intra
    h = gen_sbm_hypergraph(30, 30, 4, p, 0.0, seed=8)
    assert abs(h.m - 500) <= 4 * math.sqrt(n_intra * p * (1 - p))


def test_hypergraph_sbm_guards():
    assert gen_sbm_hypergraph(6, 6, 3, 0.0, 0.0).m == 0
    with pytest.raises(ValueError):
        gen_sbm_hypergraph(6, 6, 2, 0.5, 0.1)
    with pytest.raises(ValueError, match="exceeds"):
        gen_sbm_hypergraph(60, 60, 4, 1.0, 1.0)


def test_hypergraph_sbm_sampling_path(monkeypatch):
    import htcut.generators as g
    monkeypatch.setattr(g, "SUBSET_ENUMERATION_LIMIT", 10)
    h = gen_sbm_hypergraph(6, 6, 3, 0.5, 0.05, seed=1)
    assert h.k == 3 and h.m > 0


@pytest.mark.parametrize("t", [2, 3, 5, 10])
def test_cockroach_shape(t):
    h = gen_cockroach(t)
    assert h.n == 4 * t and h.m == 5 * t - 2
    assert h.degree_vector.max() <= 3
    assert connected_components(h).p == 1
    edges = {e.nodes for e in h.edges}
    assert (t - 1, t) in edges          # v_t - v_(t+1)
    assert (t, 3 * t) in edges          # first rung v_(t+1) - v_(3t+1)
    assert (2 * t - 1, 2 * t) not in edges  # top and bottom paths are separate


def test_cockroach_rejects_small_t():
    with pytest.raises(ValueError):
        gen_cockroach(1)


def test_random_uniform_connected():
    h = gen_random_uniform(8, 4, 6, seed=0, connected=True)
    assert connected_components(h).p == 1 and h.m == 6
    with pytest.raises(ValueError):
        gen_random_uniform(4, 3, 5)


def test_seed_determinism():
    spec = GenSpec(Family.HYSBM, n=12, k=3, blocks=(6, 6), p_intra=0.5, q_inter=0.05, seed=9)
    assert spec.build() == spec.build()
    assert spec.build(instance_rng(9, 0)) == spec.build(instance_rng(9, 0))
    assert spec.build(instance_rng(9, 0)) != spec.build(instance_rng(9, 1))


def test_genspec_validation():
    with pytest.raises(ValueError):
        GenSpec(Family.ER, n=5, p_intra=2.0)
    with pytest.raises(ValueError):
        GenSpec(Family.SBM, n=5, blocks=(2, 2))
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        GenSpec(Family.SBM, n=4, blocks=(2, 2), p_intra=0.1, q_inter=0.5)
    assert any("assortative" in str(x.message) for x in w)


def test_fixture_contents():
    h2 = fixture("h2_example2")
    weights = {tuple(v + 1 for v in e.nodes): e.weight for e in h2.edges}
    assert weights == {(1, 2, 3): 1, (4, 5, 6): 2, (2, 3, 4): 1, (3, 4, 7): 2, (1, 8, 11): 3,
                       (4, 6, 7): 2, (8, 9, 10): 2, (10, 11, 12): 2, (9, 10, 12): 2}
    h1 = fixture("h1")
    assert [e.nodes for e in h1.edges] == [(0, 1, 2), (1, 2, 3), (2, 3, 4)]


def test_same_graph_pair_reduces_identically():
    a, b = fixture("same_graph_pair_a"), fixture("same_graph_pair_b")
    assert a.k != b.k
    np.testing.assert_array_equal(tensor.clique_laplacian(a), tensor.clique_laplacian(b))


def test_unknown_fixture():
    with pytest.raises(ValueError, match="unknown fixture"):
        fixture("nope")
    assert len(FIXTURES) == 5

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings

from htcut import cuts
from htcut.eigen import EigenPair, SolverConfig, SolverError
from htcut.generators import fixture, gen_cockroach, gen_random_uniform, gen_sbm_hypergraph
from htcut.hypergraph import Hypergraph, Partition, connected_components
from htcut.partition import (Method, _restricted_growth_strings, compare_methods, oracle_min_ratio_cut,
                             ranked_scores, score_partition, sign_partition)
from htcut.tensor import LaplacianKind

from conftest import hypergraphs

def _stirling2(n, p):
    return sum((-1) ** j * math.comb(p, j) * (p - j) ** n for j in range(p + 1)) // math.factorial(p)


@pytest.mark.parametrize("n, p", [(4, 2), (6, 3), (7, 2), (5, 5)])
def test_growth_strings_enumerate_set_partitions(n, p):
    labs = list(_restricted_growth_strings(n, p))
    assert len(labs) == len(set(labs)) == _stirling2(n, p)
    assert all(Partition(lab).canonical().labels == lab for lab in labs)


def _brute_min(h, p):
    best = math.inf
    for lab in itertools.product(range(p), repeat=h.n):
        if len(set(lab)) == p:
            best = min(best, cuts.ratio_cut(h, Partition(lab).canonical()))
    return best


@given(hypergraphs(n_max=7, ks=(2, 3)))
@settings(max_examples=30, deadline=None)
def test_oracle_matches_product_enumeration(h):
    assert oracle_min_ratio_cut(h, 2, batch=7).ratio_cut == pytest.approx(_brute_min(h, 2), abs=1e-12)


def test_oracle_three_clusters():
    h = gen_random_uniform(6, 3, 8, seed=2, weighted=True)
    assert oracle_min_ratio_cut(h, 3).ratio_cut == pytest.approx(_brute_min(h, 3), abs=1e-12)


@pytest.mark.parametrize("n, p", [(17, 2), (11, 3), (8, 4)])
def test_oracle_size_limits(n, p):
    with pytest.raises(ValueError):
        oracle_min_ratio_cut(Hypergraph(n, 2, ()), p)


def test_oracle_recovers_planted_blocks():
    h = gen_sbm_hypergraph(5, 5, 3, 0.9, 0.0, seed=4)
    labels = oracle_min_ratio_cut(h).partition.labels
    assert labels == (0,) * 5 + (1,) * 5


def test_example2_score_removes_top_edge():
    h = fixture("h2_example2")
    res = score_partition(h, 2)
    assert res.removed_edges == (0,)
    assert res.scores[0].nodes == (1, 2, 3)
    assert sorted(map(len, res.partition.clusters())) == [6, 6]
    js = res.to_json(h)
    assert js["removed"] == [1]
    assert js["clusters"] == [[1, 8, 9, 10, 11, 12], [2, 3, 4, 5, 6, 7]]


def test_score_reaches_requested_cluster_count():
    h = fixture("h2_example2")
    pair = score_partition(h, 2).fiedler
    for p in (2, 3, 4):
        res = score_partition(h, p, pair=pair)
        assert res.partition.p >= p
        # stops as soon as the target is reached
        assert connected_components(h, res.removed_edges[:-1]).p < p


def test_score_rejects_bad_p():
    with pytest.raises(ValueError):
        score_partition(fixture("h1"), 1)


def test_ranked_scores_break_ties_by_index():
    h = gen_cockroach(3)
    pair = sign_partition(h).fiedler
    ranked = ranked_scores(h, LaplacianKind.UNNORMALIZED, pair.vector)
    top = ranked[:2]
    assert top[0].score == pytest.approx(top[1].score, abs=1e-12)
    assert top[0].edge_index < top[1].edge_index
    assert {t.nodes for t in top} == {(3, 4), (9, 10)}


def test_sign_partition_zero_goes_to_nonnegative_side():
    h = Hypergraph.from_edges(3, [(0, 1), (1, 2)])
    pair = EigenPair(1.0, np.array([-1, 0, 1]) / np.sqrt(2), 0.0)
    res = sign_partition(h, pair=pair)
    assert res.partition.labels == (0, 1, 1)
    assert not res.median_fallback


def test_sign_partition_median_fallback():
    h = Hypergraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    pair = EigenPair(1.0, np.array([0.1, 0.2, 0.3, 0.9]), 0.0)
    res = sign_partition(h, pair=pair)
    assert res.median_fallback
    assert res.partition.labels == (0, 0, 1, 1)
    assert res.to_json(h)["median_fallback"] is True


def test_compare_methods_on_cockroach():
    c = compare_methods(gen_cockroach(3), with_oracle=True)
    assert c.r_f == pytest.approx(0.5)
    assert c.pi == pytest.approx((c.r_f - c.r_p) / c.r_f * 100)
    assert c.oracle.ratio_cut <= c.r_p + 1e-12
    assert not c.pi_degenerate


def test_compare_methods_p3_has_no_sign_baseline():
    c = compare_methods(fixture("h2_example2"), p=3)
    assert c.sign is None and c.pi_degenerate and c.pi == 0.0


def test_method_in_json():
    h = fixture("h1")
    assert oracle_min_ratio_cut(h).to_json(h)["method"] == Method.ORACLE.value
    assert oracle_min_ratio_cut(h).to_json(h)["lambda"] is None


def test_score_sum_equals_fiedler_value():
    h = fixture("h2_example2")
    res = score_partition(h, 2)
    assert sum(s.score for s in res.scores) == pytest.approx(res.fiedler.eigenvalue, abs=1e-8)


@given(hypergraphs(ks=(2, 3), n_max=7, min_edges=2))
@settings(max_examples=20, deadline=None)
def test_removal_soundness_and_determinism(h):
    cfg = SolverConfig(restarts=8)
    try:
        a = score_partition(h, 2, cfg=cfg)
    except SolverError:
        return
    assert a.partition == connected_components(h, a.removed_edges)
    b = score_partition(h, 2, cfg=cfg)
    assert a.partition == b.partition and a.removed_edges == b.removed_edges


def test_odd_order_sign_flip_keeps_removal_order():
    h = fixture("h2_example2")
    pair = score_partition(h, 2).fiedler
    flipped = EigenPair(-pair.eigenvalue, -pair.vector, pair.residual)
    # scores of the flipped pair are negated; the solver canonicalises before scoring
    order = [s.edge_index for s in ranked_scores(h, LaplacianKind.UNNORMALIZED, pair.vector)]
    neg = ranked_scores(h, LaplacianKind.UNNORMALIZED, flipped.vector)
    assert [s.edge_index for s in sorted(neg, key=lambda s: (s.score, s.edge_index))] == order
    assert score_partition(h, 2, pair=pair).removed_edges == (0,)

import itertools

import numpy as np
from hypothesis import strategies as st

from htcut.hypergraph import Hypergraph


@st.composite
def hypergraphs(draw, n_max=8, ks=(2, 3, 4), min_edges=1, weighted=True):
    """Small k-uniform hypergraphs with distinct hyperedges."""
    k = draw(st.sampled_from(ks))
    n = draw(st.integers(k + 1, n_max))
    subsets = list(itertools.combinations(range(n), k))
    idx = draw(st.lists(st.integers(0, len(subsets) - 1), min_size=min_edges,
                        max_size=min(len(subsets), 3 * n), unique=True))
    edges = [subsets[i] for i in idx]
    if weighted:
        weights = draw(st.lists(st.floats(0.25, 4.0), min_size=len(edges), max_size=len(edges)))
    else:
        weights = None
    return Hypergraph.from_edges(n, edges, weights, k=k)


def unit_vectors(n):
    return st.lists(st.floats(-1, 1), min_size=n, max_size=n).map(np.array).filter(
        lambda v: np.linalg.norm(v) > 1e-3).map(lambda v: v / np.linalg.norm(v))

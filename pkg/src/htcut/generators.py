"""Seeded instance generators and the bundled fixtures.

All randomness comes from ``numpy.random.Generator`` (PCG64). A generator call
takes either an integer seed or a ready ``Generator``; :func:`instance_rng`
derives one independent stream per (seed, instance index).
"""
from __future__ import annotations

import enum
import itertools
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .hypergraph import Hypergraph, connected_components, parse_hypergraph

SUBSET_ENUMERATION_LIMIT = 10**7
EXPECTED_EDGE_LIMIT = 10**6

FIXTURES = ("h1", "h2_example2", "appendix_b2", "same_graph_pair_a", "same_graph_pair_b")


class Family(enum.Enum):
    ER = "er"
    SBM = "sbm"
    HYSBM = "hysbm"
    COCKROACH = "cockroach"
    FIXTURE = "fixture"
    RANDOM = "random"


@dataclass(frozen=True)
class GenSpec:
    family: Family
    n: int | None = None
    t: int | None = None
    m: int | None = None
    k: int = 2
    p_intra: float = 0.0
    q_inter: float = 0.0
    blocks: tuple[int, ...] = field(default=())
    seed: int = 0
    name: str | None = None

    def __post_init__(self):
        for prob in (self.p_intra, self.q_inter):
            if not 0.0 <= prob <= 1.0:
                raise ValueError(f"probability {prob} outside [0, 1]")
        if self.blocks and self.n is not None and sum(self.blocks) != self.n:
            raise ValueError("block sizes must sum to n")
        if self.family in (Family.SBM, Family.HYSBM) and self.p_intra < self.q_inter:
            warnings.warn("p_intra < q_inter: block model is not assortative", stacklevel=2)

    def build(self, rng=None) -> Hypergraph:
        rng = self.seed if rng is None else rng
        if self.family is Family.ER:
            return gen_er(self.n, self.p_intra, rng)
        if self.family is Family.SBM:
            return gen_sbm_graph(*self.blocks, self.p_intra, self.q_inter, rng)
        if self.family is Family.HYSBM:
            return gen_sbm_hypergraph(*self.blocks, self.k, self.p_intra, self.q_inter, rng)
        if self.family is Family.RANDOM:
            return gen_random_uniform(self.n, self.k, self.m, rng)
        if self.family is Family.COCKROACH:
            return gen_cockroach(self.t)
        return fixture(self.name)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def gen_er(n: int, p: float, seed=0) -> Hypergraph:
    """G(n, p) with unit weights."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = _rng(seed)
    i, j = np.triu_indices(n, 1)
    keep = rng.random(len(i)) < p
    return Hypergraph.from_edges(n, np.column_stack([i[keep], j[keep]]), k=2)


def gen_sbm_graph(n1: int, n2: int, p: float, q: float, seed=0) -> Hypergraph:
    """Two-block SBM graph: nodes ``0..n1-1`` form block one."""
    rng = _rng(seed)
    n = n1 + n2
    block = np.arange(n) >= n1
    i, j = np.triu_indices(n, 1)
    prob = np.where(block[i] == block[j], p, q)
    keep = rng.random(len(i)) < prob
    return Hypergraph.from_edges(n, np.column_stack([i[keep], j[keep]]), k=2)


def gen_sbm_hypergraph(n1: int, n2: int, k: int, p: float, q: float, seed=0) -> Hypergraph:
    """Two-block k-uniform SBM: k-subsets inside one block kept with prob p, others with q."""
    if k < 3:
        raise ValueError("hypergraph SBM needs k >= 3; use gen_sbm_graph for graphs")
    n = n1 + n2
    n_intra = math.comb(n1, k) + math.comb(n2, k)
    n_inter = math.comb(n, k) - n_intra
    expected = p * n_intra + q * n_inter
    if expected > EXPECTED_EDGE_LIMIT:
        raise ValueError(f"expected {expected:.3g} hyperedges exceeds {EXPECTED_EDGE_LIMIT}")
    rng = _rng(seed)
    total = math.comb(n, k)
    if total <= SUBSET_ENUMERATION_LIMIT:
        subsets = np.fromiter(itertools.chain.from_iterable(itertools.combinations(range(n), k)),
                              dtype=np.int32, count=total * k).reshape(total, k)
        block = subsets >= n1
        intra = block.all(axis=1) | ~block.any(axis=1)
        keep = rng.random(total) < np.where(intra, p, q)
        chosen = subsets[keep]
    else:
        chosen = _sample_subsets(n1, n2, k, p, q, rng)
    return Hypergraph.from_edges(n, chosen, k=k)


def _sample_subsets(n1, n2, k, p, q, rng) -> list[tuple[int, ...]]:
    # binomial count per class, then rejection-sample distinct subsets of that class
    n = n1 + n2
    out: set[tuple[int, ...]] = set()
    for lo, size in ((0, n1), (n1, n2)):
        want = rng.binomial(math.comb(size, k), p) if size >= k else 0
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < want:
            chosen.add(tuple(sorted(lo + rng.choice(size, k, replace=False))))
        out |= chosen
    want = rng.binomial(math.comb(n, k) - math.comb(n1, k) - math.comb(n2, k), q)
    chosen = set()
    while len(chosen) < want:
        s = tuple(sorted(rng.choice(n, k, replace=False)))
        b = [v >= n1 for v in s]
        if any(b) and not all(b):
            chosen.add(s)
    return sorted(out | chosen)


def gen_random_uniform(n: int, k: int, m: int, seed=0, weighted: bool = False,
                       connected: bool = False, max_tries: int = 1000) -> Hypergraph:
    """``m`` distinct k-subsets drawn uniformly; weights in [0.5, 2] when ``weighted``.

    With ``connected`` the draw is repeated until the hypergraph is connected.
    """
    if m > math.comb(n, k):
        raise ValueError(f"cannot draw {m} distinct {k}-subsets of {n} nodes")
    rng = _rng(seed)
    for _ in range(max_tries):
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < m:
            chosen.add(tuple(sorted(rng.choice(n, k, replace=False).tolist())))
        edges = sorted(chosen)
        weights = rng.uniform(0.5, 2.0, m) if weighted else None
        h = Hypergraph.from_edges(n, edges, weights, k=k)
        if not connected or connected_components(h).p == 1:
            return h
    raise ValueError(f"no connected draw in {max_tries} tries (n={n}, k={k}, m={m})")


def gen_cockroach(t: int) -> Hypergraph:
    """Cockroach graph on 4t nodes and 5t-2 unit edges.

    Top path ``v1..v2t``, bottom path ``v(2t+1)..v4t``, rungs ``v(t+i) - v(3t+i)``.
    """
    if t < 2:
        raise ValueError("cockroach graph needs t >= 2")
    edges = [(i, i + 1) for i in range(2 * t - 1)]
    edges += [(i, i + 1) for i in range(2 * t, 4 * t - 1)]
    edges += [(t + i, 3 * t + i) for i in range(t)]
    return Hypergraph.from_edges(4 * t, edges, k=2)


def fixture(name: str) -> Hypergraph:
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    text = resources.files("htcut.data").joinpath(f"{name}.hg").read_text(encoding="utf-8")
    return parse_hypergraph(text)

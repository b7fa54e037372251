"""Cut metrics for hypergraph partitions.

``w_h(C) = sum over boundary edges e of |C ∩ e| * w_e``; Ratio-Cut and N-Cut
divide each cluster's cost by ``k |C|^{k/2}`` and ``k vol(C)^{k/2}``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, Partition
from .tensor import clique_laplacian


@dataclass(frozen=True)
class CutReport:
    boundary: tuple[int, ...]
    per_cluster_cost: tuple[float, ...]
    total_cost: float
    ratio_cut: float
    n_cut: float

    def to_json(self) -> dict:
        return {
            "boundary": [j + 1 for j in self.boundary],
            "per_cluster_cost": list(self.per_cluster_cost),
            "total_cost": self.total_cost,
            "ratio_cut": self.ratio_cut,
            "n_cut": self.n_cut,
        }


def _labels(h: Hypergraph, p: Partition) -> np.ndarray:
    if p.n != h.n:
        raise ValueError(f"partition covers {p.n} nodes, hypergraph has {h.n}")
    return np.asarray(p.labels)


def _membership_counts(h: Hypergraph, p: Partition) -> np.ndarray:
    """(m, p) array: number of nodes of edge j lying in cluster i."""
    lab = _labels(h, p)
    counts = np.zeros((h.m, p.p), dtype=int)
    if h.m:
        np.add.at(counts, (np.repeat(np.arange(h.m), h.k), lab[h.edge_array].ravel()), 1)
    return counts


def boundary_edges(h: Hypergraph, p: Partition) -> set[int]:
    """Indices of hyperedges touching at least two clusters."""
    counts = _membership_counts(h, p)
    return set(np.flatnonzero(counts.max(axis=1, initial=0) < h.k).tolist())


def cluster_costs(h: Hypergraph, p: Partition) -> np.ndarray:
    counts = _membership_counts(h, p)
    cut = counts.max(axis=1, initial=0) < h.k
    return (counts[cut] * h.weights[cut, None]).sum(axis=0).astype(float)


def volumes(h: Hypergraph, p: Partition) -> np.ndarray:
    return np.bincount(_labels(h, p), weights=h.degree_vector, minlength=p.p)


def ratio_cut(h: Hypergraph, p: Partition) -> float:
    sizes = p.sizes()
    if np.any(sizes == 0):
        raise ValueError("empty cluster")
    return float(np.sum(cluster_costs(h, p) / (h.k * sizes ** (h.k / 2))))


def n_cut(h: Hypergraph, p: Partition) -> float:
    costs = cluster_costs(h, p)
    vol = volumes(h, p)
    if np.any(vol <= 0):
        raise ValueError("cluster with zero volume")
    return float(np.sum(costs / (h.k * vol ** (h.k / 2))))


def graph_ratio_cut(h: Hypergraph, p: Partition) -> float:
    """Textbook graph RatioCut ``sum_i cut(C_i, rest) / |C_i|`` (k=2 only).

    Twice the k=2 value of :func:`ratio_cut`; the cockroach-graph figures are
    quoted on this scale.
    """
    if h.k != 2:
        raise ValueError("graph_ratio_cut needs a graph (k=2)")
    return float(np.sum(cluster_costs(h, p) / p.sizes()))


def cut_cost(h: Hypergraph, p: Partition) -> CutReport:
    costs = cluster_costs(h, p)
    vol = volumes(h, p)
    nc = float(np.sum(costs / (h.k * vol ** (h.k / 2)))) if np.all(vol > 0) else float("nan")
    return CutReport(
        boundary=tuple(sorted(boundary_edges(h, p))),
        per_cluster_cost=tuple(float(c) for c in costs),
        total_cost=float(costs.sum() / h.k),
        ratio_cut=ratio_cut(h, p),
        n_cut=nc,
    )


def clique_cut_cost(h: Hypergraph, p: Partition) -> np.ndarray:
    """Per-cluster cut cost of the clique-expansion graph of ``h``."""
    lab = _labels(h, p)
    A = -clique_laplacian(h)
    np.fill_diagonal(A, 0.0)
    crossing = lab[:, None] != lab[None, :]
    per_node = (A * crossing).sum(axis=1)
    return np.bincount(lab, weights=per_node, minlength=p.p)


def percentage_improvement(r_f: float, r_p: float) -> float:
    if not r_f > 0:
        raise ValueError("reference ratio-cut must be positive")
    return (r_f - r_p) / r_f * 100.0


def conductance(h: Hypergraph, max_nodes: int = 16) -> float:
    """Brute-force ``min_C cut(C) / min(vol C, vol rest)`` over all bipartitions."""
    if h.n > max_nodes:
        raise ValueError(f"brute-force conductance limited to n <= {max_nodes}")
    if h.n < 2:
        raise ValueError("need at least two nodes")
    d = h.degree_vector
    # node n-1 always on the complement side: 2^(n-1) - 1 proper subsets
    masks = np.array(list(itertools.product((0, 1), repeat=h.n - 1))[1:], dtype=np.int8)
    masks = np.hstack([masks, np.zeros((len(masks), 1), dtype=np.int8)])
    # complement volume summed directly; d.sum() - vol_c can leave rounding residue
    vol = np.minimum(masks @ d, (1 - masks) @ d)
    if h.m:
        inside = masks[:, h.edge_array].sum(axis=2)
        crossing = (inside > 0) & (inside < h.k)
        cut = crossing @ h.weights
    else:
        cut = np.zeros(len(masks))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(vol > 0, cut / vol, np.inf)
    return float(ratios.min())

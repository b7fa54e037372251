"""Weighted k-uniform hypergraphs, text I/O, connectivity and partitions.

Node ids are 0-based internally and 1-based in files and reports.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc


class HypergraphFormatError(ValueError):
    """Malformed hypergraph text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class Hyperedge:
    nodes: tuple[int, ...]
    weight: float = 1.0

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.nodes, self.nodes[1:])):
            raise ValueError(f"hyperedge nodes must be strictly increasing: {self.nodes}")
        if not self.weight > 0:
            raise ValueError(f"hyperedge weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class Hypergraph:
    """k-uniform hypergraph on nodes ``0..n-1``.

    Use :meth:`from_edges` to build one from raw node lists; it sorts nodes,
    merges duplicate node sets by summing weights and canonicalises edge order.
    """

    n: int
    k: int
    edges: tuple[Hyperedge, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("hypergraph needs at least one node")
        if self.k < 2:
            raise ValueError("uniform cardinality k must be >= 2")
        seen = set()
        for e in self.edges:
            if len(e.nodes) != self.k:
                raise ValueError(f"hyperedge {e.nodes} does not have {self.k} nodes")
            if e.nodes[0] < 0 or e.nodes[-1] >= self.n:
                raise ValueError(f"hyperedge {e.nodes} has a node outside [0, {self.n})")
            if e.nodes in seen:
                raise ValueError(f"duplicate hyperedge {e.nodes}")
            seen.add(e.nodes)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        weights: Iterable[float] | None = None,
        k: int | None = None,
    ) -> "Hypergraph":
        edges = [tuple(sorted(int(v) for v in e)) for e in edges]
        weights = [1.0] * len(edges) if weights is None else [float(w) for w in weights]
        if len(weights) != len(edges):
            raise ValueError("weights and edges differ in length")
        if k is None:
            if not edges:
                raise ValueError("k is required for a hypergraph without edges")
            k = len(edges[0])
        merged: dict[tuple[int, ...], float] = {}
        for e, w in zip(edges, weights):
            if len(set(e)) != len(e):
                raise ValueError(f"hyperedge {e} repeats a node")
            merged[e] = merged.get(e, 0.0) + w
        return cls(n, k, tuple(Hyperedge(e, w) for e, w in sorted(merged.items())))

    @property
    def m(self) -> int:
        return len(self.edges)

    # cached_property writes straight into __dict__, so it is fine on a frozen dataclass
    @cached_property
    def edge_array(self) -> np.ndarray:
        """(m, k) int array of node ids."""
        arr = np.array([e.nodes for e in self.edges], dtype=np.intp)
        return arr.reshape(self.m, self.k)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.edges], dtype=float)

    @cached_property
    def degree_vector(self) -> np.ndarray:
        d = np.zeros(self.n)
        np.add.at(d, self.edge_array.ravel(), np.repeat(self.weights, self.k))
        return d

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Hypergraph with node ``i`` renamed to ``perm[i]``."""
        perm = list(perm)
        return Hypergraph.from_edges(
            self.n, [[perm[v] for v in e.nodes] for e in self.edges], self.weights, k=self.k
        )

    def scaled(self, c: float) -> "Hypergraph":
        return Hypergraph(self.n, self.k, tuple(Hyperedge(e.nodes, e.weight * c) for e in self.edges))

    def without(self, removed: Iterable[int]) -> "Hypergraph":
        removed = set(removed)
        kept = tuple(e for j, e in enumerate(self.edges) if j not in removed)
        return Hypergraph(self.n, self.k, kept)


@dataclass(frozen=True)
class Partition:
    """Assignment of every node to one of ``p`` non-empty clusters."""

    labels: tuple[int, ...]
    p: int = field(init=False)

    def __post_init__(self):
        labels = tuple(int(c) for c in self.labels)
        object.__setattr__(self, "labels", labels)
        p = max(labels) + 1 if labels else 0
        if set(labels) != set(range(p)):
            raise ValueError("every cluster id in [0, p) must be used")
        object.__setattr__(self, "p", p)

    @classmethod
    def from_clusters(cls, n: int, clusters: Iterable[Iterable[int]]) -> "Partition":
        labels = [-1] * n
        for c, members in enumerate(clusters):
            for v in members:
                if labels[v] != -1:
                    raise ValueError(f"node {v} assigned twice")
                labels[v] = c
        if -1 in labels:
            raise ValueError("clusters do not cover every node")
        return cls(tuple(labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def clusters(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.p)]
        for v, c in enumerate(self.labels):
            out[c].append(v)
        return out

    def canonical(self) -> "Partition":
        """Relabel so that clusters are numbered by their smallest member."""
        remap: dict[int, int] = {}
        for c in self.labels:
            remap.setdefault(c, len(remap))
        return Partition(tuple(remap[c] for c in self.labels))

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.p)


@dataclass(frozen=True)
class IncidenceData:
    H: np.ndarray  # (n, m) 0/1 incidence
    degrees: np.ndarray


def degrees(h: Hypergraph) -> IncidenceData:
    H = np.zeros((h.n, h.m), dtype=np.int8)
    if h.m:
        H[h.edge_array.ravel(), np.repeat(np.arange(h.m), h.k)] = 1
    return IncidenceData(H, h.degree_vector.copy())


def connected_components(h: Hypergraph, removed: Iterable[int] = ()) -> Partition:
    """Components of ``h`` after deleting the hyperedges indexed by ``removed``."""
    removed = set(removed)
    keep = [j for j in range(h.m) if j not in removed]
    if keep:
        arr = h.edge_array[keep]
        # star graph: node -> first node of each surviving edge
        rows = arr[:, 1:].ravel()
        cols = np.repeat(arr[:, 0], h.k - 1)
        adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(h.n, h.n))
        _, labels = _cc(adj, directed=False)
    else:
        labels = np.arange(h.n)
    return Partition(tuple(labels)).canonical()


def parse_hypergraph(text: str | bytes) -> Hypergraph:
    """Parse the ``.hg`` text format (header ``n m k``, then ``v1 .. vk [w]`` lines)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    edges: list[tuple[int, ...]] = []
    weights: list[float] = []
    lines = [(i, raw.strip()) for i, raw in enumerate(text.splitlines(), start=1)]
    lines = [(i, s) for i, s in lines if s and not s.startswith("#")]
    if not lines:
        raise HypergraphFormatError("missing header 'n m k'")
    lineno, first = lines[0]
    try:
        n, m, k = (int(tok) for tok in first.split())
    except ValueError:
        raise HypergraphFormatError(f"malformed header {first!r}, expected 'n m k'", lineno) from None
    if n < 1 or m < 0 or k < 2:
        raise HypergraphFormatError(f"invalid header values n={n} m={m} k={k}", lineno)
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else lineno)
        raise HypergraphFormatError(f"expected {m} hyperedge lines, found {len(body)}", where)
    for lineno, s in body:
        toks = s.split()
        if len(toks) not in (k, k + 1):
            raise HypergraphFormatError(f"expected {k} node ids and an optional weight, got {len(toks)} fields", lineno)
        try:
            nodes = [int(t) for t in toks[:k]]
        except ValueError:
            raise HypergraphFormatError(f"non-integer node id in {s!r}", lineno) from None
        try:
            w = float(toks[k]) if len(toks) > k else 1.0
        except ValueError:
            raise HypergraphFormatError(f"bad weight {toks[k]!r}", lineno) from None
        if any(v < 1 or v > n for v in nodes):
            raise HypergraphFormatError(f"node id out of range [1, {n}]", lineno)
        if len(set(nodes)) != k:
            raise HypergraphFormatError("duplicate node within hyperedge", lineno)
        if not (w > 0 and np.isfinite(w)):
            raise HypergraphFormatError(f"weight must be positive, got {w}", lineno)
        edges.append(tuple(v - 1 for v in nodes))
        weights.append(w)
    return Hypergraph.from_edges(n, edges, weights, k=k)


def read_hypergraph(path) -> Hypergraph:
    with open(path, "rb") as fh:
        return parse_hypergraph(fh.read())


def format_hypergraph(h: Hypergraph, comment: str | None = None) -> str:
    buf = io.StringIO()
    if comment:
        for line in comment.splitlines():
            buf.write(f"# {line}\n")
    buf.write(f"{h.n} {h.m} {h.k}\n")
    for e in h.edges:
        buf.write(" ".join(str(v + 1) for v in e.nodes) + f" {e.weight!r}\n")
    return buf.getvalue()


def serialize_partition(p: Partition) -> str:
    """One line per cluster, 1-based ids, clusters ordered by smallest member."""
    clusters = sorted(p.clusters(), key=min)
    return "\n".join(" ".join(str(v + 1) for v in c) for c in clusters)

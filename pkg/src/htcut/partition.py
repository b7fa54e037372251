"""Score-based hyperedge removal, the sign baseline, and a brute-force oracle."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import cuts
from .eigen import EigenPair, SolverConfig, fiedler
from .hypergraph import Hypergraph, Partition, connected_components
from .tensor import LaplacianKind, edge_scores

SCORE_TIE_TOL = 1e-12


class Method(enum.Enum):
    SCORE = "score"
    SIGN = "sign"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ScoredHyperedge:
    edge_index: int
    nodes: tuple[int, ...]  # 1-based, for reporting
    score: float


@dataclass(frozen=True)
class PartitionResult:
    partition: Partition
    method: Method
    metrics: cuts.CutReport
    removed_edges: tuple[int, ...] = ()
    fiedler: EigenPair | None = None
    median_fallback: bool = False
    scores: tuple[ScoredHyperedge, ...] = field(default=(), repr=False)

    @property
    def ratio_cut(self) -> float:
        return self.metrics.ratio_cut

    def components(self, h: Hypergraph) -> Partition:
        """Connected components of ``h`` once the partition's boundary is cut."""
        return connected_components(h, self.metrics.boundary)

    def to_json(self, h: Hypergraph) -> dict:
        out = {
            "method": self.method.value,
            "lambda": None if self.fiedler is None else self.fiedler.eigenvalue,
            "removed": [j + 1 for j in self.removed_edges],
            "clusters": [[v + 1 for v in c] for c in sorted(self.partition.clusters(), key=min)],
            "ratio_cut": self.metrics.ratio_cut,
            "n_cut": self.metrics.n_cut,
        }
        if self.method is Method.SIGN:
            out["median_fallback"] = self.median_fallback
        if self.fiedler is not None and self.fiedler.multiplicity > 1:
            out["fiedler_multiplicity"] = self.fiedler.multiplicity
        return out


def ranked_scores(h: Hypergraph, kind: LaplacianKind, x) -> list[ScoredHyperedge]:
    """Edge scores sorted descending; scores within 1e-12 count as ties and go by index."""
    s = edge_scores(h, kind, x)
    order = sorted(range(h.m), key=lambda j: (-round(s[j] / SCORE_TIE_TOL), j))
    return [ScoredHyperedge(j, tuple(v + 1 for v in h.edges[j].nodes), float(s[j])) for j in order]


def score_partition(h: Hypergraph, p: int = 2, kind: LaplacianKind = LaplacianKind.UNNORMALIZED,
                    cfg: SolverConfig = SolverConfig(), pair: EigenPair | None = None) -> PartitionResult:
    """Remove hyperedges by descending score until at least ``p`` components remain."""
    if p < 2 or p > h.n:
        raise ValueError(f"need 2 <= p <= n, got p={p}, n={h.n}")
    pair = fiedler(h, kind, cfg) if pair is None else pair
    ranked = ranked_scores(h, kind, pair.vector)
    removed: list[int] = []
    part = connected_components(h)
    for se in ranked:
        if part.p >= p:
            break
        removed.append(se.edge_index)
        part = connected_components(h, removed)
    return PartitionResult(part, Method.SCORE, cuts.cut_cost(h, part), tuple(removed), pair,
                           scores=tuple(ranked))


def sign_partition(h: Hypergraph, kind: LaplacianKind = LaplacianKind.UNNORMALIZED,
                   cfg: SolverConfig = SolverConfig(), pair: EigenPair | None = None) -> PartitionResult:
    """Split nodes by the sign of the Fiedler vector (zeros join the nonnegative side)."""
    if h.n < 2:
        raise ValueError("need at least two nodes")
    pair = fiedler(h, kind, cfg) if pair is None else pair
    f = pair.vector
    neg = f < 0
    fallback = bool(neg.all() or not neg.any())
    if fallback:
        order = np.argsort(f, kind="stable")
        neg = np.zeros(h.n, dtype=bool)
        neg[order[: h.n // 2]] = True
    part = Partition(tuple(np.where(neg, 0, 1))).canonical()
    return PartitionResult(part, Method.SIGN, cuts.cut_cost(h, part), fiedler=pair, median_fallback=fallback)


def _restricted_growth_strings(n: int, p: int):
    """Label vectors in lexicographic order, one per set partition into exactly p blocks."""
    a = [0] * n

    def rec(i: int, used: int):
        if n - i < p - used:
            return
        if i == n:
            if used == p:
                yield tuple(a)
            return
        for c in range(min(used + 1, p)):
            a[i] = c
            yield from rec(i + 1, max(used, c + 1))

    a[0] = 0
    yield from rec(1, 1)


def _oracle_allowed(n: int, p: int) -> bool:
    return (p == 2 and n <= 16) or (p <= 3 and n <= 10)


def oracle_min_ratio_cut(h: Hypergraph, p: int = 2, batch: int = 8192) -> PartitionResult:
    """Exhaustive minimum Ratio-Cut over all partitions into exactly p clusters."""
    if p < 2 or p > h.n:
        raise ValueError(f"need 2 <= p <= n, got p={p}")
    if not _oracle_allowed(h.n, p):
        raise ValueError(f"oracle limited to p=2, n<=16 or p<=3, n<=10 (got p={p}, n={h.n})")
    E, w, k = h.edge_array, h.weights, h.k
    best_val, best = math.inf, None
    gen = _restricted_growth_strings(h.n, p)
    while True:
        chunk = [lab for _, lab in zip(range(batch), gen)]
        if not chunk:
            break
        L = np.array(chunk)
        sizes = np.stack([(L == c).sum(axis=1) for c in range(p)], axis=1)
        vals = np.zeros(len(L))
        if h.m:
            EL = L[:, E]  # (B, m, k)
            counts = np.stack([(EL == c).sum(axis=2) for c in range(p)], axis=2)  # (B, m, p)
            cut = counts.max(axis=2) < k
            costs = np.einsum("bmc,bm,m->bc", counts, cut.astype(float), w)
            vals = (costs / (k * sizes ** (k / 2))).sum(axis=1)
        i = int(np.argmin(vals))
        if vals[i] < best_val - 1e-12:
            best_val, best = float(vals[i]), chunk[i]
    part = Partition(best)
    return PartitionResult(part, Method.ORACLE, cuts.cut_cost(h, part))


@dataclass(frozen=True)
class Comparison:
    sign: PartitionResult | None
    score: PartitionResult
    r_f: float
    r_p: float
    pi: float
    pi_degenerate: bool
    oracle: PartitionResult | None = None


def compare_methods(h: Hypergraph, p: int = 2, kind: LaplacianKind = LaplacianKind.UNNORMALIZED,
                    cfg: SolverConfig = SolverConfig(), with_oracle: bool = False) -> Comparison:
    """Sign baseline vs score removal on one instance, with percentage improvement."""
    pair = fiedler(h, kind, cfg)
    score = score_partition(h, p, kind, cfg, pair=pair)
    sign = sign_partition(h, kind, cfg, pair=pair) if p == 2 else None
    r_p = score.ratio_cut
    r_f = sign.ratio_cut if sign is not None else math.nan
    if sign is not None and r_f > 0:
        pi, degenerate = cuts.percentage_improvement(r_f, r_p), False
    else:
        pi, degenerate = 0.0, True
    oracle = None
    if with_oracle and _oracle_allowed(h.n, p):
        oracle = oracle_min_ratio_cut(h, p)
    return Comparison(sign, score, r_f, r_p, pi, degenerate, oracle)

"""Benchmark and verification harness shared by the CLI and ``scripts/``.

Every random instance is built from ``instance_rng(seed, index)``, so a run is
reproducible from ``(GenSpec, seed)`` alone and instances can be farmed out to
worker processes in any order.
"""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import cuts, tensor
from .eigen import SolverConfig, check_bound, fiedler, lemma1_residual
from .generators import (FIXTURES, Family, GenSpec, fixture, gen_cockroach, gen_random_uniform,
                         instance_rng)
from .hypergraph import Hypergraph
from .partition import compare_methods, oracle_min_ratio_cut, score_partition, sign_partition
from .tensor import LaplacianKind

EXACT_TOL = 1e-12


def fmt(v) -> str:
    """CSV cell: reals with 17 significant digits, everything else via str."""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def parallel_map(fn, items, jobs: int = 1) -> list:
    """Ordered map; results come back in input order whatever the completion order."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------- random benches

@dataclass(frozen=True)
class ExperimentRecord:
    spec: GenSpec
    index: int
    m: int
    r_f: float
    r_p: float
    pi: float
    pi_degenerate: bool
    lambda1: float
    sign_singletons: int
    score_singletons: int
    runtime_ms: float

    HEADER = ("family", "index", "n", "m", "k", "p", "q", "seed", "r_f", "r_p", "pi",
              "pi_degenerate", "lambda1", "sign_singletons", "score_singletons", "runtime_ms")

    def row(self) -> tuple:
        s = self.spec
        n = s.n if s.n is not None else sum(s.blocks)
        return (s.family.value, self.index, n, self.m, s.k, s.p_intra, s.q_inter, s.seed,
                self.r_f, self.r_p, self.pi, self.pi_degenerate, self.lambda1,
                self.sign_singletons, self.score_singletons, self.runtime_ms)


def _singletons(h: Hypergraph, result) -> int:
    return int(np.sum(result.components(h).sizes() == 1))


def run_instance(job: tuple[GenSpec, int, SolverConfig]) -> ExperimentRecord:
    spec, index, cfg = job
    h = spec.build(instance_rng(spec.seed, index))
    t0 = time.perf_counter()
    c = compare_methods(h, 2, LaplacianKind.UNNORMALIZED, cfg)
    ms = (time.perf_counter() - t0) * 1e3
    return ExperimentRecord(spec, index, h.m, c.r_f, c.r_p, c.pi, c.pi_degenerate,
                            c.score.fiedler.eigenvalue, _singletons(h, c.sign),
                            _singletons(h, c.score), ms)


def run_bench(specs: list[GenSpec], instances: int, cfg: SolverConfig = SolverConfig(),
              jobs: int = 1) -> list[ExperimentRecord]:
    jobs_list = [(s, i, cfg) for s in specs for i in range(instances)]
    return parallel_map(run_instance, jobs_list, jobs)


def records_csv(records: list[ExperimentRecord]) -> str:
    return to_csv(list(ExperimentRecord.HEADER), (r.row() for r in records))


def histogram_csv(records: list[ExperimentRecord], bins: int = 20) -> str:
    """PI histogram per (p, q) setting: ``p, q, bin_lo, bin_hi, count``."""
    rows = []
    groups: dict[tuple[float, float], list[float]] = {}
    for r in records:
        groups.setdefault((r.spec.p_intra, r.spec.q_inter), []).append(r.pi)
    for (p, q), pis in groups.items():
        counts, edges = np.histogram(pis, bins=bins)
        rows += [(p, q, float(lo), float(hi), int(c)) for lo, hi, c in zip(edges, edges[1:], counts)]
    return to_csv(["p", "q", "bin_lo", "bin_hi", "count"], rows)


@dataclass(frozen=True)
class BenchSummary:
    instances: int
    nonneg_fraction: float
    negative_fraction: float
    mean_pi: float
    median_pi: float
    mean_sign_singletons: float
    mean_score_singletons: float

    @classmethod
    def of(cls, records: list[ExperimentRecord]) -> "BenchSummary":
        pi = np.array([r.pi for r in records])
        return cls(len(pi), float(np.mean(pi >= 0)), float(np.mean(pi < 0)), float(pi.mean()),
                   float(np.median(pi)), float(np.mean([r.sign_singletons for r in records])),
                   float(np.mean([r.score_singletons for r in records])))


# ---------------------------------------------------------------- cockroach

@dataclass(frozen=True)
class CockroachRow:
    t: int
    r_sign: float
    r_score: float
    pi: float

    @property
    def expected_score(self) -> float:
        return 2 / self.t

    def mismatches(self) -> list[str]:
        out = []
        if abs(self.r_sign - 1.0) > EXACT_TOL:
            out.append(f"t={self.t}: r_sign={self.r_sign:.17g}, expected 1")
        if abs(self.r_score - self.expected_score) > EXACT_TOL:
            out.append(f"t={self.t}: r_score={self.r_score:.17g}, expected 2/t={self.expected_score:.17g}")
        return out


def cockroach_row(t: int) -> CockroachRow:
    """Sign vs score cut of the cockroach graph, on the textbook ``sum cut/|C|`` scale."""
    h = gen_cockroach(t)
    pair = fiedler(h)
    sign = sign_partition(h, pair=pair)
    score = score_partition(h, 2, pair=pair)
    r_sign = cuts.graph_ratio_cut(h, sign.partition)
    r_score = cuts.graph_ratio_cut(h, score.partition)
    return CockroachRow(t, r_sign, r_score, cuts.percentage_improvement(r_sign, r_score))


# ---------------------------------------------------------------- verification

@dataclass
class PropertyReport:
    name: str
    trials: int = 0
    failures: list[tuple[str, Hypergraph]] = field(default_factory=list)
    worst: float = 0.0  # largest violation measure seen (property-specific)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, label: str, h: Hypergraph, ok: bool, measure: float = 0.0):
        self.trials += 1
        self.worst = max(self.worst, measure)
        if not ok:
            self.failures.append((label, h))

    def minimal_failure(self) -> tuple[str, Hypergraph] | None:
        if not self.failures:
            return None
        return min(self.failures, key=lambda f: (f[1].n, f[1].m))


def reference_clique_reduction(h: Hypergraph) -> np.ndarray:
    """Degree-preserving clique reduction built pair by pair from the edge list."""
    L = np.zeros((h.n, h.n))
    for e in h.edges:
        for a in e.nodes:
            L[a, a] += e.weight
            for b in e.nodes:
                if a != b:
                    L[a, b] -= e.weight / (h.k - 1)
    return L


def _corpus_shape(rng, k_choices, n_max: int = 10, n_min: int | None = None):
    k = int(rng.choice(k_choices))
    n = int(rng.integers(max(k + 1, n_min or 0), n_max + 1))
    m = int(rng.integers(1, min(math.comb(n, k), 3 * n) + 1))
    return n, k, m


def verify_contraction(trials: int = 100, seed: int = 0) -> PropertyReport:
    rep = PropertyReport("contraction")
    for i in range(trials):
        rng = instance_rng(seed, i)
        n, k, m = _corpus_shape(rng, (3, 4, 5))
        h = gen_random_uniform(n, k, m, rng, weighted=True)
        L_T = tensor.contract_to_matrix(h)
        err = float(np.abs(L_T - reference_clique_reduction(h)).max())
        exact = bool(np.array_equal(tensor.clique_laplacian(h), (k - 1) * L_T))
        rep.record(f"trial {i}", h, err <= 1e-12 and exact, err)
    a, b = fixture("same_graph_pair_a"), fixture("same_graph_pair_b")
    same = bool(np.array_equal(tensor.clique_laplacian(a), tensor.clique_laplacian(b)))
    rep.record("same_graph_pair", a, same)
    return rep


def verify_bound(trials: int = 50, k: int = 4, seed: int = 0,
                 cfg: SolverConfig = SolverConfig()) -> PropertyReport:
    """``lambda1(normalized) <= k * phi`` on random connected k-uniform hypergraphs; worst = max lambda1/phi."""
    if k % 2:
        raise ValueError("the bound is checked for even k only")
    rep = PropertyReport("bound")
    for i in range(trials):
        rng = instance_rng(seed, i)
        n = int(rng.integers(k + 2, 11))
        m = int(rng.integers(n // 2 + 1, min(math.comb(n, k), 3 * n) + 1))
        h = gen_random_uniform(n, k, m, rng, weighted=True, connected=True)
        b = check_bound(h, cfg)
        weaker = b.lambda1 <= 2 ** (k / 2) * b.phi + 1e-9
        rep.record(f"trial {i}", h, b.holds and weaker, b.lambda1 / b.phi)
    return rep


def lemma1_corpus(trials: int, seed: int) -> list[tuple[str, Hypergraph]]:
    out = [(name, fixture(name)) for name in FIXTURES]
    out += [(f"cockroach t={t}", gen_cockroach(t)) for t in (3, 5)]
    for i in range(trials):
        rng = instance_rng(seed, i)
        n, k, m = _corpus_shape(rng, (2, 3, 4, 5), n_max=12)
        out.append((f"trial {i}", gen_random_uniform(n, k, m, rng, weighted=True)))
    return out


def verify_lemma1(trials: int = 100, seed: int = 0) -> PropertyReport:
    rep = PropertyReport("lemma1")
    for label, h in lemma1_corpus(trials, seed):
        r = lemma1_residual(h, LaplacianKind.UNNORMALIZED)
        if np.all(h.degree_vector > 0):
            r = max(r, lemma1_residual(h, LaplacianKind.NORMALIZED))
        rep.record(label, h, r <= 1e-12, r)
    return rep


def verify_oracle(trials: int = 30, k: int = 3, seed: int = 0,
                  cfg: SolverConfig = SolverConfig()) -> PropertyReport:
    """Exhaustive minimum never exceeds the score cut; worst = max (oracle - score)."""
    rep = PropertyReport("oracle")
    for i in range(trials):
        rng = instance_rng(seed, i)
        n = int(rng.integers(k + 3, 11))
        m = int(rng.integers(n // 2 + 1, min(math.comb(n, k), 3 * n) + 1))
        h = gen_random_uniform(n, k, m, rng, weighted=True, connected=True)
        best = oracle_min_ratio_cut(h, 2).ratio_cut
        score = score_partition(h, 2, cfg=cfg).ratio_cut
        rep.record(f"trial {i}", h, best <= score + 1e-12, best - score)
    return rep


VERIFIERS = {
    "contraction": verify_contraction,
    "bound": verify_bound,
    "lemma1": verify_lemma1,
    "oracle": verify_oracle,
}


def default_specs(family: Family, seed: int) -> list[GenSpec]:
    """The scaled experiment grids."""
    if family is Family.ER:
        return [GenSpec(Family.ER, n=30, p_intra=p, seed=seed) for p in (0.2, 0.4, 0.6)]
    if family is Family.SBM:
        return [GenSpec(Family.SBM, n=30, blocks=(15, 15), p_intra=0.4, q_inter=0.05, seed=seed)]
    if family is Family.HYSBM:
        return [GenSpec(Family.HYSBM, n=20, k=4, blocks=(10, 10), p_intra=0.2, q_inter=0.005, seed=seed)]
    raise ValueError(f"no default grid for {family.value}")


def spec_grid(base: GenSpec, ps: list[float], qs: list[float]) -> list[GenSpec]:
    return [replace(base, p_intra=p, q_inter=q) for p in ps for q in qs]


def summary_dict(records: list[ExperimentRecord]) -> dict:
    return asdict(BenchSummary.of(records))

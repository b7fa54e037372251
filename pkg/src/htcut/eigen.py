"""Z-eigenpairs of Laplacian tensors and the Fiedler pair.

Eigenpairs ``L x^{k-1} = lambda x, |x| = 1`` are found as roots of the square
system ``F(x, lambda) = (L x^{k-1} - lambda x, x.x - 1)``. Each start is pushed
to a root with Levenberg-Marquardt on a deflated copy of ``F`` (the known zero
eigenvector is divided out so starts do not collapse onto it), then polished
with plain Newton steps on ``F`` itself. Starts are a mix of random unit vectors
and two-level indicator vectors built from sweep cuts of the clique Laplacian's
low eigenvectors; the latter land in the basins of small eigenvalues far more
often than random vectors do.

For graphs (k=2) the problem is an ordinary symmetric eigenproblem and is
handled by ``numpy.linalg.eigh``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import least_squares

from . import tensor
from .hypergraph import Hypergraph
from .tensor import LaplacianKind

RESIDUAL_TOL = 1e-8
VECTOR_DEDUP_TOL = 1e-4


class SolverError(RuntimeError):
    """No acceptable eigenpair was found within the configured budget."""


@dataclass(frozen=True)
class SolverConfig:
    restarts: int = 64
    max_iters: int = 5000
    tol: float = 1e-12
    cluster_tol: float = 1e-6
    positive_threshold: float = 1e-8
    seed: int = 0
    # sweep-cut starts from the clique Laplacian; added on top of ``restarts``
    structured_starts: bool = True
    sweep_vectors: int = 3

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        for name in ("tol", "cluster_tol", "positive_threshold"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")


@dataclass(frozen=True)
class EigenPair:
    eigenvalue: float
    vector: np.ndarray = field(repr=False)
    residual: float
    converged: bool = True
    hits: int = 1  # starts that converged to this pair
    multiplicity: int = 1  # distinct vectors found sharing this eigenvalue

    def to_json(self) -> dict:
        return {
            "lambda": self.eigenvalue,
            "vector": [float(v) for v in self.vector],
            "residual": self.residual,
            "restarts_agreeing": self.hits,
            "multiplicity": self.multiplicity,
        }


def residual(h: Hypergraph, kind: LaplacianKind, lam: float, x) -> float:
    return float(np.linalg.norm(tensor.apply(h, kind, x) - lam * np.asarray(x)))


def _canonical_sign(x: np.ndarray) -> np.ndarray:
    mags = np.abs(x)
    i = int(np.argmax(mags >= mags.max() * (1 - 1e-9)))
    return -x if x[i] < 0 else x


def _canonicalize(k: int, lam: float, x: np.ndarray, thr: float) -> tuple[float, np.ndarray]:
    """Fix the sign ambiguity of an eigenpair.

    Even k: (lam, x) and (lam, -x) are both pairs, so make the largest entry
    positive. Odd k: (lam, x) pairs with (-lam, -x); report lam >= 0.
    """
    if k % 2 == 1 and lam < -thr:
        return -lam, -x
    if k % 2 == 0 or abs(lam) <= thr:
        return lam, _canonical_sign(x)
    return lam, x


def _make_pair(h, kind, x, cfg, hits=1) -> EigenPair:
    x = np.asarray(x, dtype=float)
    x = x / np.linalg.norm(x)
    lam = float(x @ tensor.apply(h, kind, x))
    lam, x = _canonicalize(h.k, lam, x, cfg.positive_threshold)
    return EigenPair(lam, x, residual(h, kind, lam, x), True, hits)


class _System:
    """The square eigen-system and its Jacobian, optionally deflated."""

    def __init__(self, h: Hypergraph, kind: LaplacianKind, known: list[np.ndarray]):
        self.h, self.kind, self.known = h, kind, known
        self.n = h.n

    def F(self, z):
        x, lam = z[:-1], z[-1]
        return np.append(tensor.apply(self.h, self.kind, x) - lam * x, x @ x - 1.0)

    def J(self, z):
        x, lam = z[:-1], z[-1]
        n = self.n
        out = np.empty((n + 1, n + 1))
        out[:n, :n] = tensor.apply_jacobian(self.h, self.kind, x)
        out[:n, :n][np.diag_indices(n)] -= lam
        out[:n, n] = -x
        out[n, :n] = 2 * x
        out[n, n] = 0.0
        return out

    def _deflation(self, x):
        # M(x) = prod_j (1/|x - r_j|^2 + 1), with gradient
        val, grad = 1.0, np.zeros_like(x)
        for r in self.known:
            d = x - r
            nd = max(d @ d, 1e-300)
            fac = 1.0 / nd + 1.0
            dfac = -2.0 * d / nd**2
            grad = grad * fac + val * dfac
            val *= fac
        return val, grad

    def G(self, z):
        val, _ = self._deflation(z[:-1])
        return val * self.F(z)

    def JG(self, z):
        val, grad = self._deflation(z[:-1])
        out = val * self.J(z)
        out[:, :-1] += np.outer(self.F(z), grad)
        return out


def _solve_from(system: _System, x0: np.ndarray, cfg: SolverConfig) -> np.ndarray | None:
    h, kind = system.h, system.kind
    x0 = x0 / np.linalg.norm(x0)
    z = np.append(x0, x0 @ tensor.apply(h, kind, x0))
    with np.errstate(all="ignore"):
        try:
            z = least_squares(system.G, z, jac=system.JG, method="lm", max_nfev=cfg.max_iters).x
        except (ValueError, np.linalg.LinAlgError):
            return None
        for _ in range(50):
            if not np.all(np.isfinite(z)):
                return None
            try:
                step = np.linalg.solve(system.J(z), system.F(z))
            except np.linalg.LinAlgError:
                step = np.linalg.lstsq(system.J(z), system.F(z), rcond=None)[0]
            z = z - step
            if np.linalg.norm(step) <= cfg.tol:
                break
    x = z[:-1]
    if not np.all(np.isfinite(z)) or np.linalg.norm(x) == 0:
        return None
    return x


def _sweep_starts(h: Hypergraph, kind: LaplacianKind, cfg: SolverConfig, rng) -> list[np.ndarray]:
    L = tensor.contract_to_matrix(h)
    _, vecs = np.linalg.eigh(L)
    scale = 1.0 / tensor._scales(h, kind)[1]
    starts = []
    for j in range(1, min(cfg.sweep_vectors, h.n - 1) + 1):
        order = np.argsort(vecs[:, j], kind="stable")
        for cut in range(1, h.n):
            for low in (0.0, 0.2, 0.5):
                for side in (order[:cut], order[cut:]):
                    x = np.full(h.n, low)
                    x[side] = 1.0
                    x = x + 0.05 * rng.standard_normal(h.n)
                    starts.append(x * scale)
    return starts


def _random_starts(h: Hypergraph, z0: np.ndarray, count: int, rng) -> list[np.ndarray]:
    starts = []
    for r in range(count):
        y = rng.standard_normal(h.n)
        if r % 2:
            # tilted toward the zero eigenvector, where small eigenvalues live
            y -= (y @ z0) * z0
            y = rng.uniform(1.0, 5.0) * z0 + y / np.linalg.norm(y)
        starts.append(y / np.linalg.norm(y))
    return starts


def _dedup(pairs: list[EigenPair], cfg: SolverConfig) -> list[EigenPair]:
    pairs = sorted(pairs, key=lambda p: (p.eigenvalue, tuple(p.vector)))
    out: list[EigenPair] = []
    for p in pairs:
        for i, q in enumerate(out):
            if abs(p.eigenvalue - q.eigenvalue) <= cfg.cluster_tol and min(
                np.linalg.norm(p.vector - q.vector), np.linalg.norm(p.vector + q.vector)
            ) <= VECTOR_DEDUP_TOL:
                best = q if q.residual <= p.residual else p
                out[i] = EigenPair(best.eigenvalue, best.vector, best.residual, True, q.hits + p.hits)
                break
        else:
            out.append(p)
    result = []
    for p in out:
        mult = sum(abs(p.eigenvalue - q.eigenvalue) <= cfg.cluster_tol for q in out)
        result.append(EigenPair(p.eigenvalue, p.vector, p.residual, True, p.hits, mult))
    return result


def _matrix_pairs(h: Hypergraph, kind: LaplacianKind, cfg: SolverConfig) -> list[EigenPair]:
    M = tensor.contract_to_matrix(h) if kind is LaplacianKind.UNNORMALIZED else tensor.normalized_matrix(h)
    vals, vecs = np.linalg.eigh(M)
    pairs = []
    for lam, v in zip(vals, vecs.T):
        v = _canonical_sign(v)
        pairs.append(EigenPair(float(lam), v, residual(h, kind, float(lam), v)))
    return pairs


def solve_starts(h: Hypergraph, kind: LaplacianKind, cfg: SolverConfig) -> list[EigenPair | None]:
    """Run every start and return its converged pair (None when it failed)."""
    rng = np.random.default_rng(cfg.seed)
    z0 = tensor.zero_eigenvector(h, kind)
    system = _System(h, kind, [z0, -z0])
    starts = _sweep_starts(h, kind, cfg, rng) if cfg.structured_starts else []
    starts += _random_starts(h, z0, cfg.restarts, rng)
    out: list[EigenPair | None] = []
    for x0 in starts:
        x = _solve_from(system, x0, cfg)
        pair = None if x is None else _make_pair(h, kind, x, cfg)
        out.append(pair if pair is not None and pair.residual <= RESIDUAL_TOL else None)
    return out


def find_eigenpairs(h: Hypergraph, kind: LaplacianKind = LaplacianKind.UNNORMALIZED,
                    cfg: SolverConfig = SolverConfig()) -> list[EigenPair]:
    """Distinct converged Z-eigenpairs, ascending by eigenvalue."""
    if h.n < 2:
        raise ValueError("need at least two nodes")
    if h.k == 2:
        return _dedup(_matrix_pairs(h, kind, cfg), cfg)
    found = [p for p in solve_starts(h, kind, cfg) if p is not None]
    if not found:
        raise SolverError("no start converged to an eigenpair")
    z0 = tensor.zero_eigenvector(h, kind)
    found.append(EigenPair(0.0, _canonical_sign(z0), residual(h, kind, 0.0, z0), True, 0))
    return _dedup(found, cfg)


def fiedler(h: Hypergraph, kind: LaplacianKind = LaplacianKind.UNNORMALIZED,
            cfg: SolverConfig = SolverConfig()) -> EigenPair:
    """Eigenpair with the smallest eigenvalue above ``cfg.positive_threshold``."""
    for p in find_eigenpairs(h, kind, cfg):
        if p.eigenvalue > cfg.positive_threshold:
            return p
    raise SolverError("no positive eigenvalue found")


def matrix_fiedler(L, cfg: SolverConfig = SolverConfig()) -> EigenPair:
    """Second-smallest eigenpair of a symmetric Laplacian matrix."""
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1] or L.shape[0] < 2:
        raise ValueError("need a square matrix of size >= 2")
    if not np.allclose(L, L.T, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    vals, vecs = np.linalg.eigh(L)
    lam, v = float(vals[1]), _canonical_sign(vecs[:, 1])
    res = float(np.linalg.norm(L @ v - lam * v))
    if res > 1e-10:
        raise SolverError(f"eigen-residual {res:.3g} above 1e-10")
    return EigenPair(lam, v, res)


class BoundCheck(NamedTuple):
    lambda1: float
    phi: float
    holds: bool


def check_bound(h: Hypergraph, cfg: SolverConfig = SolverConfig()) -> BoundCheck:
    """Compare the normalized Fiedler value with ``k`` times the conductance."""
    from .cuts import conductance

    if h.k % 2:
        raise ValueError("the conductance bound is stated for even k")
    phi = conductance(h)
    lam = fiedler(h, LaplacianKind.NORMALIZED, cfg).eigenvalue
    return BoundCheck(lam, phi, lam <= h.k * phi + 1e-9)


def lemma1_residual(h: Hypergraph, kind: LaplacianKind = LaplacianKind.UNNORMALIZED) -> float:
    """Residual of the zero eigenpair (0, uniform vector) [or (0, d^(1/k)) when normalized]."""
    return residual(h, kind, 0.0, tensor.zero_eigenvector(h, kind))


"""Laplacian-tensor evaluations that never build the n**k tensor.

Every routine works edge by edge. For the unnormalized Laplacian the
objective of a hyperedge ``e`` is ``w_e * (sum_i x_i**k - k * prod_i x_i)``.
The normalized Laplacian has the same form in the scaled variables
``y_i = x_i / d_i**(1/k)``. :func:`dense_tensor` materialises the full tensor and
exists only as an oracle for tests and the ``verify`` command.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph

DENSE_LIMIT = 10**7


class LaplacianKind(enum.Enum):
    UNNORMALIZED = "unnormalized"
    NORMALIZED = "normalized"


def _scales(h: Hypergraph, kind: LaplacianKind) -> tuple[np.ndarray, np.ndarray]:
    """Per-node (diagonal coefficient, variable scale) pair.

    Unnormalized: diagonal ``d_i``, scale 1. Normalized: diagonal 1, scale ``d_i**(-1/k)``.
    """
    d = h.degree_vector
    if kind is LaplacianKind.UNNORMALIZED:
        return d, np.ones(h.n)
    if np.any(d <= 0):
        raise ValueError("normalized Laplacian needs every node degree > 0")
    return np.ones(h.n), d ** (-1.0 / h.k)


def _check(h: Hypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (h.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({h.n},)")
    return x


def _products_without_one(Y: np.ndarray) -> np.ndarray:
    """P[j, a] = prod over columns b != a of Y[j, b]."""
    m, k = Y.shape
    out = np.empty_like(Y)
    for a in range(k):
        out[:, a] = np.prod(np.delete(Y, a, axis=1), axis=1)
    return out


def edge_scores(h: Hypergraph, kind: LaplacianKind, x) -> np.ndarray:
    """Hyperedge scores ``w_e * (sum_{i in e} y_i**k - k * prod_{i in e} y_i)``."""
    x = _check(h, x)
    _, s = _scales(h, kind)
    if h.m == 0:
        return np.zeros(0)
    Y = (x * s)[h.edge_array]
    return h.weights * (np.sum(Y**h.k, axis=1) - h.k * np.prod(Y, axis=1))


def objective(h: Hypergraph, kind: LaplacianKind, x) -> float:
    """``L x^k`` evaluated in O(m k)."""
    x = _check(h, x)
    diag, s = _scales(h, kind)
    if h.m == 0:
        return 0.0
    if kind is LaplacianKind.NORMALIZED:
        # sum over edges of y_i**k equals sum_i x_i**k when no node is isolated
        terms = np.concatenate([x**h.k, -h.k * h.weights * np.prod((x * s)[h.edge_array], axis=1)])
        return math.fsum(terms)
    return math.fsum(edge_scores(h, kind, x))


def apply(h: Hypergraph, kind: LaplacianKind, x) -> np.ndarray:
    """``L x^{k-1}``; the gradient of :func:`objective` is ``k`` times this."""
    x = _check(h, x)
    diag, s = _scales(h, kind)
    out = diag * x ** (h.k - 1)
    if h.m:
        Y = (x * s)[h.edge_array]
        contrib = h.weights[:, None] * _products_without_one(Y) * s[h.edge_array]
        np.subtract.at(out, h.edge_array.ravel(), contrib.ravel())
    return out


def apply_jacobian(h: Hypergraph, kind: LaplacianKind, x) -> np.ndarray:
    """Jacobian of :func:`apply`, i.e. ``(k-1) L x^{k-2}`` as an n x n matrix."""
    x = _check(h, x)
    diag, s = _scales(h, kind)
    k = h.k
    J = np.diag(diag * (k - 1) * x ** (k - 2))
    if h.m == 0:
        return J
    E = h.edge_array
    Y = (x * s)[E]
    w = h.weights
    for a, b in itertools.permutations(range(k), 2):
        rest = [c for c in range(k) if c not in (a, b)]
        prod = np.prod(Y[:, rest], axis=1) if rest else np.ones(h.m)
        np.subtract.at(J, (E[:, a], E[:, b]), w * s[E[:, a]] * s[E[:, b]] * prod)
    return J


def contract_to_matrix(h: Hypergraph) -> np.ndarray:
    """Degree-preserving reduction ``L 1^{k-2}``.

    Diagonal holds degrees, off-diagonal ``-sum_{e ∋ i,j} w_e / (k-1)``.
    """
    L = np.zeros((h.n, h.n))
    if h.m:
        E = h.edge_array
        for a, b in itertools.permutations(range(h.k), 2):
            np.add.at(L, (E[:, a], E[:, b]), -h.weights / (h.k - 1))
    L[np.diag_indices(h.n)] = h.degree_vector
    return L


def clique_laplacian(h: Hypergraph) -> np.ndarray:
    """Laplacian of the clique expansion, ``(k-1) * contract_to_matrix(h)``."""
    return (h.k - 1) * contract_to_matrix(h)


def normalized_matrix(h: Hypergraph) -> np.ndarray:
    """Normalized graph Laplacian ``I - D^-1/2 A D^-1/2`` (k=2 only)."""
    if h.k != 2:
        raise ValueError("normalized_matrix is only defined for graphs (k=2)")
    _, s = _scales(h, LaplacianKind.NORMALIZED)
    L = contract_to_matrix(h)
    offdiag = L - np.diag(np.diag(L))
    return np.eye(h.n) + s[:, None] * offdiag * s[None, :]


def zero_eigenvector(h: Hypergraph, kind: LaplacianKind) -> np.ndarray:
    """Unit vector with ``L x^{k-1} = 0``: uniform, or ``d**(1/k)`` when normalized."""
    if kind is LaplacianKind.UNNORMALIZED:
        return np.full(h.n, 1 / math.sqrt(h.n))
    _, s = _scales(h, kind)
    v = 1 / s
    return v / np.linalg.norm(v)


@dataclass(frozen=True)
class DenseTensor:
    order: int
    dim: int
    data: np.ndarray  # shape (dim,) * order

    def contract(self, x, times: int) -> np.ndarray:
        out = self.data
        for _ in range(times):
            out = out @ np.asarray(x, dtype=float)
        return out

    def nnz(self) -> int:
        return int(np.count_nonzero(self.data))


def dense_adjacency(h: Hypergraph) -> DenseTensor:
    _guard(h)
    A = np.zeros((h.n,) * h.k)
    c = 1 / math.factorial(h.k - 1)
    for e in h.edges:
        for perm in itertools.permutations(e.nodes):
            A[perm] = e.weight * c
    return DenseTensor(h.k, h.n, A)


def dense_tensor(h: Hypergraph, kind: LaplacianKind = LaplacianKind.UNNORMALIZED) -> DenseTensor:
    """Full Laplacian tensor built entry by entry; size-guarded, test use only."""
    diag, s = _scales(h, kind)
    A = dense_adjacency(h).data
    if kind is LaplacianKind.NORMALIZED:
        for ax in range(h.k):
            shape = [1] * h.k
            shape[ax] = h.n
            A = A * s.reshape(shape)
    L = -A
    idx = np.arange(h.n)
    L[(idx,) * h.k] += diag
    return DenseTensor(h.k, h.n, L)


def _guard(h: Hypergraph) -> None:
    if h.n**h.k > DENSE_LIMIT:
        raise ValueError(f"dense tensor would hold {h.n}**{h.k} > {DENSE_LIMIT} entries")


def format_matrix_csv(M: np.ndarray) -> str:
    lines = [str(M.shape[0])]
    lines += [",".join(f"{v:.17g}" for v in row) for row in M]
    return "\n".join(lines) + "\n"

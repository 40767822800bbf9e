"""Implicit adjacency and signless Laplacian tensors of a uniform hypergraph.

Nothing here builds an ``n**k`` array. The adjacency tensor has entry
``1/(k-1)!`` at every index tuple ``(i, i2, ..., ik)`` that permutes an edge
containing ``i``. In ``(T x)_i = sum T[i, i2..ik] x[i2]...x[ik]`` each edge
``e`` containing ``i`` therefore contributes its ``(k-1)!`` orderings of
``e - {i}``, each weighted ``1/(k-1)!`` and each with the same monomial, so
the edge contributes exactly ``prod_{u in e, u != i} x[u]``.
"""

from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from ._backend import kernels
from .hypergraph import Hypergraph


class TensorKind(enum.Enum):
    ADJACENCY = "adjacency"
    SIGNLESS_LAPLACIAN = "signless_laplacian"

    @classmethod
    def parse(cls, value: "str | TensorKind") -> "TensorKind":
        if isinstance(value, cls):
            return value
        aliases = {"a": cls.ADJACENCY, "adj": cls.ADJACENCY, "q": cls.SIGNLESS_LAPLACIAN,
                   "signless": cls.SIGNLESS_LAPLACIAN}
        v = str(value).lower()
        return aliases.get(v) or cls(v)


def _vector(x, n: int, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape != (n,):
        raise ValueError(f"{name} must have length {n}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return np.ascontiguousarray(arr)


class WeightVector:
    """Strictly positive finite per-vertex weights (diagonal of ``B``)."""

    __slots__ = ("values",)

    def __init__(self, values: Sequence[float]):
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("weights must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
            raise ValueError("weights must be strictly positive and finite")
        arr.setflags(write=False)
        self.values = arr

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return f"WeightVector({self.values.tolist()!r})"

    @classmethod
    def ones(cls, n: int) -> "WeightVector":
        return cls(np.ones(n))

    def check(self, H: Hypergraph) -> np.ndarray:
        if len(self) != H.n:
            raise ValueError(f"weight vector has length {len(self)}, hypergraph has {H.n} vertices")
        return self.values


def _adjacency(H: Hypergraph, x: np.ndarray) -> np.ndarray:
    out = np.empty(H.n)
    kernels.adjacency_apply(H.edge_array, x, out)
    return out


def apply(H: Hypergraph, kind: TensorKind | str, x) -> np.ndarray:
    """Tensor-times-vector ``T x`` for ``T = A(H)`` or ``Q(H) = D(H) + A(H)``.

    ``x`` may contain zeros; ``(Q x)_i = d_i x_i**(k-1) + (A x)_i``.
    """
    kind = TensorKind.parse(kind)
    x = _vector(x, H.n)
    y = _adjacency(H, x)
    if kind is TensorKind.SIGNLESS_LAPLACIAN:
        y += H.degree_vector * x ** (H.k - 1)
    return y


def row_sums(H: Hypergraph, kind: TensorKind | str) -> np.ndarray:
    return apply(H, kind, np.ones(H.n))


def apply_similar(H: Hypergraph, kind: TensorKind | str, b: WeightVector, x) -> np.ndarray:
    """``(B^-(k-1) T B) x`` with ``B = diag(b)``.

    The diagonal part of ``Q`` commutes with ``B`` up to the power, so only
    the adjacency part is rescaled.
    """
    kind = TensorKind.parse(kind)
    bv = b.check(H)
    x = _vector(x, H.n)
    y = _adjacency(H, bv * x) / bv ** (H.k - 1)
    if kind is TensorKind.SIGNLESS_LAPLACIAN:
        y += H.degree_vector * x ** (H.k - 1)
    return y


def rayleigh_interval(H: Hypergraph, kind: TensorKind | str, x) -> tuple[float, float]:
    """Collatz-Wielandt envelope ``(min_i (Tx)_i / x_i^(k-1), max_i ...)``.

    For strictly positive ``x`` and connected ``H`` the spectral radius lies
    in the returned interval.
    """
    x = _vector(x, H.n)
    if np.any(x <= 0):
        raise ValueError("rayleigh_interval needs a strictly positive vector")
    ratio = apply(H, kind, x) / x ** (H.k - 1)
    return float(ratio.min()), float(ratio.max())

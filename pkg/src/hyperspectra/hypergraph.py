"""k-uniform hypergraph model.

Vertices are 1-based on every public surface. Edges are stored canonically:
each edge ascending, the edge tuple sorted lexicographically.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np


class HypergraphError(ValueError):
    """Raised for structurally invalid hypergraphs or queries."""


@dataclass(frozen=True)
class Hypergraph:
    """Immutable simple k-uniform hypergraph on vertices ``1..n``.

    Use :func:`build` rather than the constructor; it validates and
    canonicalizes the edge list.

    ``origin`` is set only on hypergraphs produced by :func:`components` and
    maps local vertex ``i`` to ``origin[i - 1]`` in the parent hypergraph.
    """

    k: int
    n: int
    edges: tuple[tuple[int, ...], ...]
    origin: Optional[tuple[int, ...]] = field(default=None, compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """``(m, k)`` int64 array of 0-based vertex indices, C-contiguous."""
        if not self.edges:
            return np.zeros((0, self.k), dtype=np.int64)
        return np.ascontiguousarray(np.asarray(self.edges, dtype=np.int64) - 1)

    @cached_property
    def degree_vector(self) -> np.ndarray:
        """Float64 degree vector indexed by 0-based vertex."""
        return np.bincount(self.edge_array.ravel(), minlength=self.n).astype(np.float64)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """``incidence[v-1]`` lists the indices of edges containing ``v``."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for idx, e in enumerate(self.edges):
            for v in e:
                inc[v - 1].append(idx)
        return tuple(tuple(x) for x in inc)

    def __str__(self) -> str:
        return f"Hypergraph(k={self.k}, n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex degrees (``degree[v-1]``) and the nonincreasing sequence."""

    degree: tuple[int, ...]
    sorted: tuple[int, ...]

    def of(self, v: int) -> int:
        return self.degree[v - 1]

    @property
    def d1(self) -> int:
        return self.sorted[0]

    @property
    def d2(self) -> int:
        if len(self.sorted) < 2:
            raise HypergraphError("d2 needs at least two vertices")
        return self.sorted[1]

    @property
    def max_degree(self) -> int:
        return self.sorted[0]

    @property
    def min_degree(self) -> int:
        return self.sorted[-1]


def build(k: int, n: int, edge_list: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate ``edge_list`` and return a canonical :class:`Hypergraph`.

    Raises
    ------
    HypergraphError
        If ``k < 2``, ``n < 1``, an edge has the wrong size or a repeated
        vertex, a vertex is outside ``1..n``, or an edge appears twice.
    """
    if int(k) != k or k < 2:
        raise HypergraphError(f"uniformity must be an integer >= 2, got {k!r}")
    if int(n) != n or n < 1:
        raise HypergraphError(f"vertex count must be an integer >= 1, got {n!r}")
    k, n = int(k), int(n)
    seen: set[tuple[int, ...]] = set()
    for raw in edge_list:
        verts = [int(v) for v in raw]
        e = tuple(sorted(verts))
        if len(set(e)) != len(e):
            raise HypergraphError(f"edge {tuple(verts)} repeats a vertex")
        if len(e) != k:
            raise HypergraphError(f"edge {tuple(verts)} has size {len(e)}, expected {k}")
        if e[0] < 1 or e[-1] > n:
            raise HypergraphError(f"edge {tuple(verts)} has a vertex outside 1..{n}")
        if e in seen:
            raise HypergraphError(f"duplicate edge {e}")
        seen.add(e)
    return Hypergraph(k, n, tuple(sorted(seen)))


def _build_unchecked(k: int, n: int, edges: Iterable[tuple[int, ...]], origin=None) -> Hypergraph:
    # callers guarantee validity; still canonicalize
    return Hypergraph(k, n, tuple(sorted(tuple(sorted(e)) for e in edges)), origin)


def degrees(H: Hypergraph) -> DegreeProfile:
    deg = tuple(len(inc) for inc in H.incidence)
    return DegreeProfile(deg, tuple(sorted(deg, reverse=True)))


def codegree(H: Hypergraph, i: int, j: int) -> int:
    """Number of edges containing both ``i`` and ``j``."""
    if i == j:
        raise HypergraphError("codegree needs two distinct vertices")
    for v in (i, j):
        if not 1 <= v <= H.n:
            raise HypergraphError(f"vertex {v} outside 1..{H.n}")
    return len(set(H.incidence[i - 1]) & set(H.incidence[j - 1]))


def _vertex_classes(H: Hypergraph) -> list[int]:
    # union-find over vertices, edges merge their members
    parent = list(range(H.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in H.edges:
        r0 = find(e[0] - 1)
        for v in e[1:]:
            r = find(v - 1)
            if r != r0:
                parent[r] = r0
    return [find(v) for v in range(H.n)]


def is_connected(H: Hypergraph) -> bool:
    """True iff the vertex-edge incidence graph has a single component.

    An isolated vertex makes the hypergraph disconnected unless it is the
    only vertex.
    """
    return len(set(_vertex_classes(H))) == 1


def components(H: Hypergraph) -> list[Hypergraph]:
    """Split ``H`` into connected components, ordered by smallest vertex.

    Each component is relabelled to ``1..n_c``; its ``origin`` attribute
    holds the original labels. A connected ``H`` is returned as ``[H]``.
    """
    roots = _vertex_classes(H)
    if len(set(roots)) == 1:
        return [H]
    members: dict[int, list[int]] = {}
    for v, r in enumerate(roots, start=1):
        members.setdefault(r, []).append(v)
    out = []
    for verts in sorted(members.values(), key=lambda vs: vs[0]):
        local = {v: i for i, v in enumerate(verts, start=1)}
        edge_ids = sorted({idx for v in verts for idx in H.incidence[v - 1]})
        edges = [tuple(local[v] for v in H.edges[idx]) for idx in edge_ids]
        out.append(_build_unchecked(H.k, len(verts), edges, origin=tuple(verts)))
    return out


def is_regular(H: Hypergraph) -> Optional[int]:
    """Return ``d`` if every vertex has degree ``d``, else ``None``."""
    deg = degrees(H)
    if deg.d1 == deg.min_degree:
        return deg.d1
    return None


def detect_blowup(H: Hypergraph) -> Optional[tuple[int, int]]:
    """Find an apex ``v`` such that ``H`` is a blow-up of a regular base.

    The base ``{e - {v}}`` must be ``d``-regular with ``d >= 1`` on all of the
    remaining ``n - 1`` vertices. Returns ``(v, d)`` for the smallest such
    ``v``, or ``None``.
    """
    if H.m == 0 or H.n < 2:
        return None
    deg = degrees(H)
    for v in range(1, H.n + 1):
        if deg.of(v) != H.m:
            continue
        # removing v lowers nobody else's degree: v is in every edge
        rest = [deg.of(u) for u in range(1, H.n + 1) if u != v]
        if rest[0] >= 1 and all(d == rest[0] for d in rest):
            return v, rest[0]
    return None


def blow_up(G0: Hypergraph) -> Hypergraph:
    """Add a new vertex ``n + 1`` to every edge of ``G0``.

    The result is a blow-up in the structural sense only when ``G0`` is
    regular; for 2-uniform stars see :func:`star`.
    """
    if G0.m == 0:
        raise HypergraphError("cannot blow up an edgeless hypergraph")
    apex = G0.n + 1
    return _build_unchecked(G0.k + 1, G0.n + 1, (e + (apex,) for e in G0.edges))


def star(t: int) -> Hypergraph:
    """2-uniform star with ``t`` leaves; the blow-up of ``t`` singleton edges.

    The model requires ``k >= 2``, so the 1-uniform base cannot be built and
    this constructor stands in for ``blow_up`` at ``k = 2``. The centre is
    vertex ``t + 1``, matching :func:`blow_up`'s apex labelling.
    """
    if t < 1:
        raise HypergraphError("star needs at least one leaf")
    return _build_unchecked(2, t + 1, ((i, t + 1) for i in range(1, t + 1)))


def m_value(H: Hypergraph, i: int) -> Fraction:
    """Degree-weighted neighbour average at ``i``, as an exact fraction.

    ``sum over edges e containing i of prod_{u in e, u != i} d_u``, divided
    by ``d_i ** (k - 1)``.
    """
    deg = degrees(H)
    di = deg.of(i)
    if di == 0:
        raise HypergraphError(f"vertex {i} has degree 0, m-value undefined")
    total = 0
    for idx in H.incidence[i - 1]:
        prod = 1
        for u in H.edges[idx]:
            if u != i:
                prod *= deg.of(u)
        total += prod
    return Fraction(total, di ** (H.k - 1))


def pair_counts(H: Hypergraph) -> Counter:
    """Codegree of every co-occurring pair ``(i, j)``, ``i < j``."""
    c: Counter = Counter()
    for e in H.edges:
        for a in range(len(e)):
            for b in range(a + 1, len(e)):
                c[(e[a], e[b])] += 1
    return c


def relabel(H: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Apply the vertex map ``v -> perm[v - 1]`` (a permutation of 1..n)."""
    if sorted(perm) != list(range(1, H.n + 1)):
        raise HypergraphError("relabel needs a permutation of 1..n")
    return _build_unchecked(H.k, H.n, (tuple(perm[v - 1] for v in e) for e in H.edges))

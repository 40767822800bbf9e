"""Deterministic hypergraph families and seeded random samplers."""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb

import numpy as np

from .hypergraph import Hypergraph, HypergraphError, _build_unchecked, blow_up, build

# 2**62 keeps rng.choice over combination ranks inside int64
_RANK_LIMIT = 1 << 62


class GenerationError(HypergraphError):
    """Infeasible parameters or an exhausted retry budget."""


def gen_hyperstar(t: int, k: int) -> Hypergraph:
    """Hyperstar on ``t(k-1)+1`` vertices: apex 1 plus ``t`` disjoint petals."""
    if t < 1 or k < 2:
        raise GenerationError("hyperstar needs t >= 1 and k >= 2")
    edges = [(1,) + tuple(range(2 + p * (k - 1), 2 + (p + 1) * (k - 1))) for p in range(t)]
    return _build_unchecked(k, t * (k - 1) + 1, edges)


def gen_complete(n: int, k: int) -> Hypergraph:
    if k < 2 or n < k:
        raise GenerationError("complete hypergraph needs 2 <= k <= n")
    return _build_unchecked(k, n, combinations(range(1, n + 1), k))


def gen_disjoint_blocks(t: int, r: int) -> Hypergraph:
    """``t`` vertex-disjoint edges of size ``r`` on ``t * r`` vertices."""
    if t < 1 or r < 2:
        raise GenerationError("disjoint blocks need t >= 1 and r >= 2")
    edges = [tuple(range(1 + b * r, 1 + (b + 1) * r)) for b in range(t)]
    return _build_unchecked(r, t * r, edges)


def _unrank(rank: int, n: int, k: int) -> tuple[int, ...]:
    # lexicographic unranking of k-subsets of 1..n
    out = []
    x = 1
    for slot in range(k, 0, -1):
        while True:
            c = comb(n - x, slot - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def gen_random(n: int, m: int, k: int, seed: int) -> Hypergraph:
    """``m`` distinct k-sets drawn uniformly without replacement."""
    if k < 2 or n < 1:
        raise GenerationError("need k >= 2 and n >= 1")
    total = comb(n, k)
    if not 0 <= m <= total:
        raise GenerationError(f"cannot place {m} distinct {k}-edges on {n} vertices (max {total})")
    rng = np.random.default_rng(seed)
    if total < _RANK_LIMIT:
        ranks = rng.choice(total, size=m, replace=False)
        edges = [_unrank(int(r), n, k) for r in ranks]
    else:
        picked: set[tuple[int, ...]] = set()
        while len(picked) < m:
            picked.add(tuple(sorted(int(v) + 1 for v in rng.choice(n, size=k, replace=False))))
        edges = list(picked)
    return _build_unchecked(k, n, edges)


def _badness(edges: list[list[int]], counts: Counter) -> int:
    repeats = sum(1 for e in edges if len(set(e)) < len(e))
    dups = sum(c - 1 for c in counts.values() if c > 1)
    return repeats + dups


def gen_random_regular(
    n: int,
    d: int,
    k: int,
    seed: int,
    max_restarts: int = 100,
    swaps_per_restart: int | None = None,
) -> Hypergraph:
    """Best-effort sampler for a simple ``d``-regular k-uniform hypergraph.

    Each restart deals ``d`` copies of every vertex into ``n*d/k`` edges,
    then repairs repeated vertices and duplicate edges by swapping single
    vertices between edges (degrees are preserved by every swap). Gives up
    after ``max_restarts`` restarts of ``10*n*d`` swaps each.

    Raises
    ------
    GenerationError
        On infeasible parameters or when the budget runs out.
    """
    if k < 2 or n < k or d < 0:
        raise GenerationError("need k >= 2, n >= k, d >= 0")
    if (n * d) % k:
        raise GenerationError(f"k={k} must divide n*d={n * d}")
    m = n * d // k
    if m > comb(n, k) or d > comb(n - 1, k - 1):
        raise GenerationError(f"no simple {d}-regular {k}-graph on {n} vertices")
    if m == 0:
        return _build_unchecked(k, n, [])
    swaps = swaps_per_restart if swaps_per_restart is not None else 10 * n * d
    rng = np.random.default_rng(seed)

    for _ in range(max_restarts):
        stubs = np.repeat(np.arange(1, n + 1), d)
        rng.shuffle(stubs)
        edges = [list(map(int, stubs[i * k:(i + 1) * k])) for i in range(m)]
        counts = Counter(tuple(sorted(e)) for e in edges)
        bad = _badness(edges, counts)
        for _ in range(swaps):
            if bad == 0:
                break
            bad_ids = [
                i for i, e in enumerate(edges)
                if len(set(e)) < k or counts[tuple(sorted(e))] > 1
            ]
            a = bad_ids[int(rng.integers(len(bad_ids)))]
            b = int(rng.integers(m - 1))
            b += b >= a
            p, q = int(rng.integers(k)), int(rng.integers(k))
            ea, eb = edges[a], edges[b]
            if ea[p] == eb[q]:
                continue
            old = [tuple(sorted(ea)), tuple(sorted(eb))]
            na, nb = ea.copy(), eb.copy()
            na[p], nb[q] = eb[q], ea[p]
            new = [tuple(sorted(na)), tuple(sorted(nb))]
            trial = counts.copy()
            trial.subtract(old)
            trial.update(new)
            trial_edges = edges.copy()
            trial_edges[a], trial_edges[b] = na, nb
            trial_bad = _badness(trial_edges, trial)
            if trial_bad <= bad:
                edges, counts, bad = trial_edges, +trial, trial_bad
        if bad == 0:
            return build(k, n, edges)
    raise GenerationError(
        f"no simple {d}-regular {k}-graph on {n} vertices after {max_restarts} restarts"
    )


def gen_blowup_of_regular(n0: int, d: int, r: int, seed: int, **kwargs) -> Hypergraph:
    """Blow-up of a random ``d``-regular r-uniform base on ``n0`` vertices."""
    return blow_up(gen_random_regular(n0, d, r, seed, **kwargs))

"""Spectral radius of A(H) and Q(H) by shifted power iteration.

The solver iterates ``x <- (T x + c x^[k-1])^[1/(k-1)]`` normalized to max
entry 1 and stops on the width of the Collatz-Wielandt interval of the
shifted tensor, so every reported ``[lo, hi]`` is a certificate (up to
rounding) rather than a heuristic stopping rule. A positive shift ``c``
moves every eigenvalue by exactly ``c`` and makes the iteration converge on
connected hypergraphs even where the unshifted one would oscillate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._backend import kernels
from .hypergraph import Hypergraph, components, is_connected
from .tensor import TensorKind, WeightVector, apply, apply_similar

# stall detection: kernel chunk length and minimum relative shrinkage per chunk
_CHUNK = 1000
_STALL_SHRINK = 1e-15


class NumericalError(ArithmeticError):
    """Non-finite or nonpositive intermediate in the power iteration."""


@dataclass(frozen=True)
class SolverOptions:
    tolerance: float = 1e-10
    max_iterations: int = 200_000
    shift: float = 1.0
    per_component: bool = True
    seed: int = 0

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not self.shift >= 0:
            raise ValueError("shift must be nonnegative")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")

    def as_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "max_iterations": self.max_iterations,
            "shift": self.shift,
            "per_component": self.per_component,
            "seed": self.seed,
        }


@dataclass
class SpectralEstimate:
    """Certified bracket ``lo <= rho <= hi`` with the iterate that produced it."""

    kind: TensorKind
    lo: float
    hi: float
    estimate: float
    eigenvector: np.ndarray = field(repr=False)
    iterations: int
    converged: bool
    residual: float
    n_components: int = 1
    restarted: bool = False

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "lo": self.lo,
            "hi": self.hi,
            "estimate": self.estimate,
            "iterations": self.iterations,
            "converged": self.converged,
            "residual": self.residual,
            "n_components": self.n_components,
            "restarted": self.restarted,
            "eigenvector": [float(v) for v in self.eigenvector],
        }


def residual(H: Hypergraph, kind: TensorKind | str, lam: float, x,
             b: Optional[WeightVector] = None) -> float:
    """``max_i |(T x)_i - lam * x_i^(k-1)|``; ``T`` is similarity-transformed by ``b`` if given."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape == (H.n,) and not np.any(x):
        raise ValueError("residual of the zero vector is meaningless")
    y = apply(H, kind, x) if b is None else apply_similar(H, kind, b, x)
    return float(np.max(np.abs(y - lam * x ** (H.k - 1))))


def _solve_connected(H: Hypergraph, kind: TensorKind, opts: SolverOptions,
                     b: Optional[WeightVector] = None) -> SpectralEstimate:
    n = H.n
    bvals = np.ones(n) if b is None else np.array(b.check(H))
    with np.errstate(over="ignore"):
        scale = 1.0 / bvals ** (H.k - 1)
    diag = H.degree_vector if kind is TensorKind.SIGNLESS_LAPLACIAN else np.zeros(n)
    x = np.ones(n)
    lo, hi = -math.inf, math.inf
    done = 0
    status = 0
    restarted = False
    prev_width = math.inf
    while done < opts.max_iterations:
        budget = min(_CHUNK, opts.max_iterations - done)
        it, lo, hi, cur_lo, cur_hi, status = kernels.power_iterate(
            H.edge_array, diag, scale, bvals, float(opts.shift), x,
            float(opts.tolerance), budget, lo, hi,
        )
        done += it
        if status == -1:
            raise NumericalError(f"power iteration broke down after {done} iterations on {H}")
        if status == 1:
            break
        width = cur_hi - cur_lo
        if it == _CHUNK and not restarted and width > prev_width * (1 - _STALL_SHRINK):
            rng = np.random.default_rng(opts.seed)
            x[:] = rng.uniform(0.5, 1.0, size=n)
            x /= x.max()
            restarted = True
        prev_width = width
    if lo > hi:
        # rounding can cross a bracket that has collapsed to a point
        lo = hi = 0.5 * (lo + hi)
    est = 0.5 * (lo + hi)
    return SpectralEstimate(
        kind=kind,
        lo=lo,
        hi=hi,
        estimate=est,
        eigenvector=x.copy(),
        iterations=done,
        converged=status == 1,
        residual=residual(H, kind, est, x, b),
        restarted=restarted,
    )


def spectral_radius(H: Hypergraph, kind: TensorKind | str = TensorKind.ADJACENCY,
                    opts: Optional[SolverOptions] = None) -> SpectralEstimate:
    """Spectral radius of ``A(H)`` or ``Q(H)`` with a Collatz-Wielandt bracket.

    Disconnected hypergraphs are solved component by component (the
    spectral radius of a direct sum is the largest block radius) unless
    ``opts.per_component`` is false, in which case they are rejected.

    Raises
    ------
    ValueError
        Disconnected input with ``per_component=False``.
    NumericalError
        The iteration produced a non-finite or nonpositive value.
    """
    kind = TensorKind.parse(kind)
    opts = opts or SolverOptions()
    if is_connected(H):
        return _solve_connected(H, kind, opts)
    if not opts.per_component:
        raise ValueError(f"{H} is disconnected; enable per_component to solve it blockwise")

    parts = components(H)
    ests = [_solve_connected(C, kind, opts) for C in parts]
    best = max(range(len(parts)), key=lambda i: ests[i].estimate)
    x = np.zeros(H.n)
    x[np.asarray(parts[best].origin) - 1] = ests[best].eigenvector
    lo = max(e.lo for e in ests)
    hi = max(e.hi for e in ests)
    est = 0.5 * (lo + hi)
    return SpectralEstimate(
        kind=kind,
        lo=lo,
        hi=hi,
        estimate=est,
        eigenvector=x,
        iterations=sum(e.iterations for e in ests),
        converged=all(e.converged for e in ests),
        residual=residual(H, kind, est, x),
        n_components=len(parts),
        restarted=any(e.restarted for e in ests),
    )


def similarity_invariance_check(H: Hypergraph, kind: TensorKind | str, b: WeightVector,
                                opts: Optional[SolverOptions] = None
                                ) -> tuple[SpectralEstimate, SpectralEstimate]:
    """Solve ``T`` and its diagonal similarity ``B^-(k-1) T B``; both radii must agree."""
    kind = TensorKind.parse(kind)
    opts = opts or SolverOptions()
    if not is_connected(H):
        raise ValueError("similarity check needs a connected hypergraph")
    return _solve_connected(H, kind, opts), _solve_connected(H, kind, opts, b)


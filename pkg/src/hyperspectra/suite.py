"""Seeded batches of hypergraphs run through :func:`bounds.full_report`."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .bounds import BoundReport, full_report
from .generators import (
    GenerationError,
    gen_disjoint_blocks,
    gen_hyperstar,
    gen_random,
    gen_random_regular,
)
from .hypergraph import Hypergraph, blow_up, is_connected, star
from .spectral import SolverOptions

FAMILIES = ("random", "regular", "hyperstar", "blowup", "blocks")
DEFAULT_FAMILIES = ("random", "regular", "hyperstar", "blowup")
_FAMILY_WEIGHTS = {"random": 0.5, "regular": 0.2, "hyperstar": 0.15, "blowup": 0.15, "blocks": 0.1}
_RETRIES = 50


def _random_case(rng, k, max_n, max_m, connected):
    n = int(rng.integers(k + 1, max_n + 1)) if max_n > k else k
    cap = min(max_m, math.comb(n, k))
    # fewer than (n-1)/(k-1) edges cannot connect n vertices
    low = min(cap, max(1, -(-(n - 1) // (k - 1)))) if connected else 1
    m = int(rng.integers(low, cap + 1))
    return f"random:{n},{m},{k}", gen_random(n, m, k, int(rng.integers(2**32)))


def _regular_case(rng, k, max_n, max_m):
    n = int(rng.integers(k + 1, max_n + 1)) if max_n > k else k
    ds = [d for d in range(1, math.comb(n - 1, k - 1) + 1)
          if (n * d) % k == 0 and n * d // k <= max_m]
    if not ds:
        raise GenerationError("no feasible degree")
    d = ds[int(rng.integers(len(ds)))]
    return f"regular:{n},{d},{k}", gen_random_regular(n, d, k, int(rng.integers(2**32)))


def _hyperstar_case(rng, k, max_n, max_m):
    t_max = min(max_m, (max_n - 1) // (k - 1))
    if t_max < 1:
        raise GenerationError("hyperstar does not fit")
    t = int(rng.integers(1, t_max + 1))
    return f"hyperstar:{t},{k}", gen_hyperstar(t, k)


def _blowup_case(rng, k, max_n, max_m):
    if k == 2:
        t = int(rng.integers(1, min(max_m, max_n - 1) + 1))
        return f"blowup:star{t}", star(t)
    label, base = _regular_case(rng, k - 1, max_n - 1, max_m)
    return f"blowup:{label}", blow_up(base)


def _blocks_case(rng, k, max_n, max_m):
    t = int(rng.integers(1, max(1, min(max_m, max_n // k)) + 1))
    return f"blocks:{t},{k}", gen_disjoint_blocks(t, k)


def generate_cases(n_cases: int, seed: int, max_n: int = 12, ks: Sequence[int] = (2, 3, 4),
                   max_m: int = 40, families: Sequence[str] = DEFAULT_FAMILIES,
                   connected_only: bool = False) -> list[tuple[str, Hypergraph]]:
    """Deterministic mix of hypergraphs with ``n <= max_n``, ``m <= max_m``."""
    if n_cases < 1:
        raise ValueError("n_cases must be at least 1")
    bad = set(families) - set(FAMILIES)
    if bad:
        raise ValueError(f"unknown families {sorted(bad)}")
    ks = [k for k in ks if 2 <= k <= max_n]
    if not ks:
        raise ValueError("no uniformity fits under max_n")
    p = np.array([_FAMILY_WEIGHTS[f] for f in families])
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n_cases:
        family = families[int(rng.choice(len(families), p=p / p.sum()))]
        k = int(ks[int(rng.integers(len(ks)))])
        case = None
        for _ in range(_RETRIES):
            try:
                if family == "random":
                    case = _random_case(rng, k, max_n, max_m, connected_only)
                elif family == "regular":
                    case = _regular_case(rng, k, max_n, max_m)
                elif family == "hyperstar":
                    case = _hyperstar_case(rng, k, max_n, max_m)
                elif family == "blowup":
                    case = _blowup_case(rng, k, max_n, max_m)
                else:
                    case = _blocks_case(rng, k, max_n, max_m)
            except GenerationError:
                case = None
                continue
            if not connected_only or is_connected(case[1]):
                break
            case = None
        if case is not None:
            out.append(case)
    return out


@dataclass
class SuiteResult:
    cases: list[tuple[str, Hypergraph]]
    reports: list[BoundReport]
    options: SolverOptions
    worst_slack: dict[str, float] = field(default_factory=dict)
    applicable_counts: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def n_passed(self) -> int:
        return sum(r.passed for r in self.reports)

    def as_dict(self) -> dict:
        return {
            "n_cases": len(self.cases),
            "n_passed": self.n_passed,
            "passed": self.passed,
            "options": self.options.as_dict(),
            "bounds": {
                name: {"applicable": self.applicable_counts[name], "worst_slack": self.worst_slack.get(name)}
                for name in self.applicable_counts
            },
            "cases": [
                {
                    "label": label,
                    "k": H.k, "n": H.n, "m": H.m,
                    "connected": r.connected,
                    "classification": str(r.classification),
                    "passed": r.passed,
                    "failed_checks": [c.name for c in r.failed_checks],
                    "numeric_failures": r.numeric_failures,
                }
                for (label, H), r in zip(self.cases, self.reports)
            ],
        }


def _one(args):
    H, opts, weights = args
    return full_report(H, opts, weights)


def run_suite(cases: Sequence[tuple[str, Hypergraph]], opts: Optional[SolverOptions] = None,
              weights=None, jobs: int = 1) -> SuiteResult:
    opts = opts or SolverOptions()
    work = [(H, opts, weights) for _, H in cases]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_one, work, chunksize=8))
    else:
        reports = [_one(w) for w in work]
    result = SuiteResult(list(cases), reports, opts)
    for r in reports:
        for name, e in r.entries.items():
            if not e.applicable or e.slack is None:
                continue
            result.applicable_counts[name] = result.applicable_counts.get(name, 0) + 1
            if name not in result.worst_slack or e.slack < result.worst_slack[name]:
                result.worst_slack[name] = e.slack
    return result

"""Degree-based bounds on rho(A(H)) and rho(Q(H)), equality cases, and reports.

Upper bounds on the adjacency spectral radius:

* ``adj_maxdeg``   max degree
* ``adj_d1d2``     ``d1**(1/k) * d2**(1-1/k)`` (two largest degrees);
  tight exactly for regular hypergraphs and blow-ups of regular ones
* ``adj_sqrt_dd``  max over co-edge pairs of ``sqrt(d_i d_j)``
* ``adj_sqrt_mm``  max over co-edge pairs of ``sqrt(m_i m_j)``

Bounds on the signless Laplacian spectral radius:

* ``q_lower_d1``        ``d1``
* ``q_upper_d1d2``      ``d1 + d1**(1/k) * d2**(1-1/k)``; tight iff regular
* ``q_upper_weighted``  weighted pair bound for positive vertex weights ``b``
* ``q_upper_pairdeg``   max of ``d_i + d_j`` (weights all one)
* ``q_upper_m``         pair bound with ``m_i`` (weights equal to degrees)

Pair maxima run over *co-edge pairs*: unordered ``{i, j}`` that lie together
in at least one edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ._backend import kernels
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    components,
    degrees,
    detect_blowup,
    is_connected,
    is_regular,
    pair_counts,
)
from .spectral import NumericalError, SolverOptions, SpectralEstimate, spectral_radius
from .tensor import TensorKind, WeightVector

CHECK_ATOL = 1e-9
IDENTITY_ATOL = 1e-12

# products of k-1 weights stay inside [1e-300, 1e300] when every |log b| is below this
_LOG_SAFE = math.log(1e300)

WeightSpec = Union[str, WeightVector, tuple]


class BoundError(HypergraphError):
    pass


def _require_edges(H: Hypergraph, name: str) -> None:
    if H.m == 0:
        raise BoundError(f"{name} is undefined for an edgeless hypergraph")


def adj_upper_maxdeg(H: Hypergraph) -> float:
    return float(degrees(H).d1)


def _d1d2_term(H: Hypergraph) -> float:
    deg = degrees(H)
    if H.n < 2:
        raise BoundError("the d1/d2 bound needs at least two vertices")
    d1, d2 = deg.d1, deg.d2
    if d1 == 0:
        return 0.0
    # d1 * (d2/d1)^(1-1/k) equals d1 exactly when d1 == d2
    return d1 * (d2 / d1) ** (1.0 - 1.0 / H.k)


def adj_upper_d1d2(H: Hypergraph) -> float:
    return _d1d2_term(H)


def q_lower_d1(H: Hypergraph) -> float:
    return float(degrees(H).d1)


def q_upper_d1d2(H: Hypergraph) -> float:
    return degrees(H).d1 + _d1d2_term(H)


def coedge_pairs(H: Hypergraph) -> set[tuple[int, int]]:
    """All ``(i, j)`` with ``i < j`` that share at least one edge."""
    return set(pair_counts(H))


def b_prime(H: Hypergraph, b: WeightVector, *, log_domain: Optional[bool] = None) -> np.ndarray:
    """``b'_p = b_p^-(k-1) * sum over edges {p, p2..pk} of b_p2 * ... * b_pk``.

    Uses plain double products unless some product of ``k - 1`` weights
    could leave ``[1e-300, 1e300]``; then every entry is evaluated with a
    log-sum-exp. ``log_domain=True`` forces that path, ``False`` forbids it.
    """
    bv = b.check(H)
    k = H.k
    logb = np.log(bv)
    if log_domain is None:
        log_domain = bool((k - 1) * np.max(np.abs(logb)) > _LOG_SAFE)
    if not log_domain:
        acc = np.empty(H.n)
        kernels.adjacency_apply(H.edge_array, np.ascontiguousarray(bv), acc)
        return acc / bv ** (k - 1)

    out = np.zeros(H.n)
    if H.m == 0:
        return out
    # a true b' beyond double range comes back as inf
    E = H.edge_array
    lb = logb[E]
    others = lb.sum(axis=1, keepdims=True) - lb
    flat_v, flat_l = E.ravel(), others.ravel()
    for p in range(H.n):
        terms = flat_l[flat_v == p]
        if terms.size == 0:
            continue
        top = terms.max()
        with np.errstate(over="ignore"):
            out[p] = np.exp(top + math.log(np.exp(terms - top).sum()) - (k - 1) * logb[p])
    return out


def _pair_max(pairs: Iterable[tuple[int, int]], f) -> tuple[float, Optional[tuple[int, int]]]:
    best, arg = -math.inf, None
    for i, j in sorted(pairs):
        v = f(i, j)
        if v > best:
            best, arg = v, (i, j)
    return best, arg


def _weighted_pair_value(di: float, dj: float, bi: float, bj: float) -> float:
    return (di + dj + math.sqrt((di - dj) ** 2 + 4.0 * bi * bj)) / 2.0


def _q_weighted_with_pair(H, b):
    _require_edges(H, "q_upper_weighted")
    d = H.degree_vector
    bp = b_prime(H, b)
    return _pair_max(coedge_pairs(H),
                     lambda i, j: _weighted_pair_value(d[i - 1], d[j - 1], bp[i - 1], bp[j - 1]))


def q_upper_weighted(H: Hypergraph, b: WeightVector) -> float:
    """Weighted pair bound on rho(Q); valid for connected ``H`` and any ``b > 0``."""
    return _q_weighted_with_pair(H, b)[0]


def m_values(H: Hypergraph) -> dict[int, Fraction]:
    """Exact ``m_i`` for every vertex of positive degree."""
    deg = degrees(H).degree
    out = {}
    for i in range(1, H.n + 1):
        if deg[i - 1] == 0:
            continue
        total = 0
        for idx in H.incidence[i - 1]:
            prod = 1
            for u in H.edges[idx]:
                if u != i:
                    prod *= deg[u - 1]
            total += prod
        out[i] = Fraction(total, deg[i - 1] ** (H.k - 1))
    return out


def _pairdeg_with_pair(H):
    _require_edges(H, "q_upper_pairdeg")
    d = degrees(H).degree
    return _pair_max(coedge_pairs(H), lambda i, j: float(d[i - 1] + d[j - 1]))


def _q_m_with_pair(H):
    _require_edges(H, "q_upper_m")
    d = degrees(H).degree
    mv = {i: float(v) for i, v in m_values(H).items()}
    return _pair_max(coedge_pairs(H),
                     lambda i, j: _weighted_pair_value(d[i - 1], d[j - 1], mv[i], mv[j]))


def _sqrt_dd_with_pair(H):
    _require_edges(H, "adj_upper_sqrt_dd")
    d = degrees(H).degree
    return _pair_max(coedge_pairs(H), lambda i, j: math.sqrt(d[i - 1] * d[j - 1]))


def _sqrt_mm_with_pair(H):
    _require_edges(H, "adj_upper_sqrt_mm")
    mv = {i: float(v) for i, v in m_values(H).items()}
    return _pair_max(coedge_pairs(H), lambda i, j: math.sqrt(mv[i] * mv[j]))


def q_upper_pairdeg(H: Hypergraph) -> float:
    return _pairdeg_with_pair(H)[0]


def q_upper_m(H: Hypergraph) -> float:
    return _q_m_with_pair(H)[0]


def adj_upper_sqrt_dd(H: Hypergraph) -> float:
    return _sqrt_dd_with_pair(H)[0]


def adj_upper_sqrt_mm(H: Hypergraph) -> float:
    return _sqrt_mm_with_pair(H)[0]


@dataclass(frozen=True)
class Classification:
    """Equality class: ``regular``, ``blowup`` (of a regular base) or ``general``.

    ``predicted_adj`` / ``predicted_q`` carry the exact spectral radii the
    class pins down (``None`` where no value is implied).
    """

    label: str
    degree: Optional[int] = None
    apex: Optional[int] = None
    predicted_adj: Optional[float] = None
    predicted_q: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "degree": self.degree,
            "apex": self.apex,
            "predicted_adj": self.predicted_adj,
            "predicted_q": self.predicted_q,
        }

    def __str__(self) -> str:
        if self.label == "regular":
            return f"Regular({self.degree})"
        if self.label == "blowup":
            return f"BlowupOfRegular({self.apex},{self.degree})"
        return "General"


def classify_equality(H: Hypergraph) -> Classification:
    d = is_regular(H)
    if d is not None:
        return Classification("regular", degree=d, predicted_adj=float(d), predicted_q=2.0 * d)
    blow = detect_blowup(H)
    if blow is not None:
        apex, base = blow
        return Classification("blowup", degree=base, apex=apex, predicted_adj=_d1d2_term(H))
    return Classification("general")


def resolve_weights(H: Hypergraph, spec: WeightSpec) -> tuple[str, WeightVector]:
    """Turn ``"uniform"``, ``"degree"``, a :class:`WeightVector` or a
    ``(label, WeightVector)`` pair into a labelled weight vector for ``H``.

    Degree weights give isolated vertices weight 1; they lie in no edge, so
    no ``b'`` on a co-edge pair depends on them.
    """
    if isinstance(spec, tuple):
        label, b = spec
    elif isinstance(spec, WeightVector):
        label, b = "custom", spec
    elif spec == "uniform":
        label, b = spec, WeightVector.ones(H.n)
    elif spec == "degree":
        d = H.degree_vector
        label, b = spec, WeightVector(np.where(d > 0, d, 1.0))
    else:
        raise ValueError(f"unknown weight spec {spec!r}")
    b.check(H)
    return label, b


@dataclass
class BoundEntry:
    name: str
    target: str
    direction: str
    value: Optional[float]
    applicable: bool
    predicted_equality: bool = False
    witness: Optional[tuple] = None
    component_value: Optional[float] = None
    slack: Optional[float] = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "target": self.target,
            "direction": self.direction,
            "value": self.value,
            "applicable": self.applicable,
            "predicted_equality": self.predicted_equality,
            "witness": list(self.witness) if self.witness else None,
            "component_value": self.component_value,
            "slack": self.slack,
            "note": self.note,
        }


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class BoundReport:
    k: int
    n: int
    m: int
    connected: bool
    n_components: int
    sorted_degrees: tuple
    classification: Classification
    entries: dict[str, BoundEntry]
    spectral_adj: Optional[SpectralEstimate]
    spectral_q: Optional[SpectralEstimate]
    checks: list[Check] = field(default_factory=list)
    monitors: list[Check] = field(default_factory=list)
    numeric_failures: list[str] = field(default_factory=list)
    options: Optional[SolverOptions] = None

    @property
    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failed_checks and not self.numeric_failures

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "connected": self.connected,
            "n_components": self.n_components,
            "sorted_degrees": list(self.sorted_degrees),
            "classification": self.classification.as_dict(),
            "entries": {name: e.as_dict() for name, e in self.entries.items()},
            "spectral_adj": self.spectral_adj.as_dict() if self.spectral_adj else None,
            "spectral_q": self.spectral_q.as_dict() if self.spectral_q else None,
            "checks": [c.as_dict() for c in self.checks],
            "monitors": [c.as_dict() for c in self.monitors],
            "numeric_failures": list(self.numeric_failures),
            "options": self.options.as_dict() if self.options else None,
            "passed": self.passed,
        }


_ADJ, _Q = TensorKind.ADJACENCY.value, TensorKind.SIGNLESS_LAPLACIAN.value


def _entries_for(H: Hypergraph, weights: Sequence[tuple[str, WeightVector]],
                 connected: bool, regular: bool, cls: Classification) -> dict[str, BoundEntry]:
    deg = degrees(H)
    top_vertex = deg.degree.index(deg.d1) + 1
    edges = H.m > 0
    out: dict[str, BoundEntry] = {}

    def add(name, target, direction, value, applicable, predicted=False, witness=None):
        out[name] = BoundEntry(name, target, direction, value, applicable, predicted, witness)

    add("adj_maxdeg", _ADJ, "upper", float(deg.d1), True, regular, (top_vertex,))
    if H.n >= 2:
        add("adj_d1d2", _ADJ, "upper", _d1d2_term(H), True,
            cls.label in ("regular", "blowup"), (top_vertex,))
    for name, fn in (("adj_sqrt_dd", _sqrt_dd_with_pair), ("adj_sqrt_mm", _sqrt_mm_with_pair)):
        value, pair = fn(H) if edges else (None, None)
        add(name, _ADJ, "upper", value, connected and edges, False, pair)
    add("q_lower_d1", _Q, "lower", float(deg.d1), connected, False, (top_vertex,))
    if H.n >= 2:
        add("q_upper_d1d2", _Q, "upper", deg.d1 + _d1d2_term(H), connected,
            connected and regular, (top_vertex,))
    for label, b in weights:
        value, pair = _q_weighted_with_pair(H, b) if edges else (None, None)
        add(f"q_upper_weighted[{label}]", _Q, "upper", value, connected and edges, False, pair)
    for name, fn in (("q_upper_pairdeg", _pairdeg_with_pair), ("q_upper_m", _q_m_with_pair)):
        value, pair = fn(H) if edges else (None, None)
        add(name, _Q, "upper", value, connected and edges, False, pair)
    return out


def _solve(H, kind, opts, failures):
    try:
        est = spectral_radius(H, kind, opts)
    except (NumericalError, ValueError) as exc:
        failures.append(f"{kind.value}: {exc}")
        return None
    if not est.converged:
        failures.append(f"{kind.value}: not converged after {est.iterations} iterations "
                        f"(bracket width {est.width:.3g})")
    return est


def _fmt_witness(entry: BoundEntry) -> str:
    if not entry.witness:
        return ""
    if len(entry.witness) == 1:
        return f" at vertex {entry.witness[0]}"
    return f" at pair {{{entry.witness[0]},{entry.witness[1]}}}"


def full_report(H: Hypergraph, opts: Optional[SolverOptions] = None,
                weight_choices: Optional[Sequence[WeightSpec]] = None) -> BoundReport:
    """Solve both tensors, evaluate every bound and check each inequality.

    A check on an upper bound passes when ``value >= lo - 1e-9`` and on a
    lower bound when ``value <= hi + 1e-9``, using the solver's certified
    bracket, so loosening the solver tolerance never turns a true
    inequality into a failure. Predicted equalities pass when the value
    lies inside the bracket (same margin). Solver failures are recorded in
    ``numeric_failures``; the affected checks are skipped, never raised.
    """
    opts = opts or SolverOptions()
    weight_choices = ["uniform", "degree"] if weight_choices is None else list(weight_choices)
    weights = [resolve_weights(H, w) for w in weight_choices]
    connected = is_connected(H)
    parts = components(H)
    regular = is_regular(H) is not None
    cls = classify_equality(H)
    entries = _entries_for(H, weights, connected, regular, cls)

    if not connected:
        # connectivity-hypothesis bounds: report the max over components instead
        for C in parts:
            if C.m == 0:
                continue
            cw = [(label, WeightVector(b.values[np.asarray(C.origin) - 1])) for label, b in weights]
            sub = _entries_for(C, cw, True, is_regular(C) is not None, classify_equality(C))
            for name, e in entries.items():
                if e.applicable or name not in sub or sub[name].value is None:
                    continue
                cv = sub[name].value
                if e.component_value is None or cv > e.component_value:
                    e.component_value = cv
        for e in entries.values():
            if not e.applicable:
                e.note = "hypothesis not met: hypergraph is disconnected"

    failures: list[str] = []
    est_adj = _solve(H, TensorKind.ADJACENCY, opts, failures)
    est_q = _solve(H, TensorKind.SIGNLESS_LAPLACIAN, opts, failures)
    report = BoundReport(
        k=H.k, n=H.n, m=H.m, connected=connected, n_components=len(parts),
        sorted_degrees=degrees(H).sorted, classification=cls, entries=entries,
        spectral_adj=est_adj, spectral_q=est_q, numeric_failures=failures, options=opts,
    )

    for e in entries.values():
        est = est_adj if e.target == _ADJ else est_q
        if e.value is None or est is None:
            continue
        e.slack = e.value - est.estimate if e.direction == "upper" else est.estimate - e.value
        where = _fmt_witness(e)
        for label, value, active in (("inequality", e.value, e.applicable),
                                     ("per_component", e.component_value, e.component_value is not None)):
            if not active:
                continue
            if e.direction == "upper":
                ok = value >= est.lo - CHECK_ATOL
                detail = f"rho <= {value:.17g}{where}; bracket [{est.lo:.17g}, {est.hi:.17g}]"
            else:
                ok = value <= est.hi + CHECK_ATOL
                detail = f"rho >= {value:.17g}{where}; bracket [{est.lo:.17g}, {est.hi:.17g}]"
            report.checks.append(Check(f"{e.name}:{label}", ok, detail))
        if e.predicted_equality:
            ok = est.lo - CHECK_ATOL <= e.value <= est.hi + CHECK_ATOL
            report.checks.append(Check(
                f"{e.name}:equality", ok,
                f"predicted rho = {e.value:.17g} ({cls}); bracket [{est.lo:.17g}, {est.hi:.17g}]"))

    if est_adj is not None and est_q is not None:
        report.checks.append(Check(
            "order:adj_le_q", est_adj.lo <= est_q.hi + CHECK_ATOL,
            f"rho(A) in [{est_adj.lo:.17g}, {est_adj.hi:.17g}], "
            f"rho(Q) in [{est_q.lo:.17g}, {est_q.hi:.17g}]"))

    if "adj_d1d2" in entries:
        a, b = entries["adj_d1d2"].value, entries["adj_maxdeg"].value
        report.checks.append(Check("dominance:adj_d1d2_le_maxdeg", a <= b + IDENTITY_ATOL,
                                   f"{a:.17g} <= {b:.17g}"))
    for label, other in (("uniform", "q_upper_pairdeg"), ("degree", "q_upper_m")):
        key = f"q_upper_weighted[{label}]"
        if key in entries and entries[key].value is not None:
            u, v = entries[key].value, entries[other].value
            report.checks.append(Check(f"identity:{key}={other}", abs(u - v) <= IDENTITY_ATOL,
                                       f"{u:.17g} vs {v:.17g}"))

    if est_adj is not None and connected and cls.label == "general" and H.n >= 2:
        deg = degrees(H)
        if deg.d1 > deg.d2:
            gap = entries["adj_d1d2"].value - est_adj.hi
            report.monitors.append(Check("strict:adj_d1d2", gap > CHECK_ATOL,
                                         f"bound exceeds rho(A) by at least {gap:.3g}"))
    if est_q is not None and connected and not regular and "q_upper_d1d2" in entries:
        gap = entries["q_upper_d1d2"].value - est_q.hi
        report.monitors.append(Check("strict:q_upper_d1d2", gap > CHECK_ATOL,
                                     f"bound exceeds rho(Q) by at least {gap:.3g}"))
    return report

"""Pure numpy kernels, used when the compiled extension is unavailable.

Contract (shared with ``_kernels``):

``adjacency_apply(edges, x, out)``
    ``out[i] = sum over edges e containing i of prod_{u in e, u != i} x[u]``
    with ``edges`` an ``(m, k)`` int64 array of 0-based vertices.

``power_iterate(edges, diag, scale, b, shift, x, tol, max_iter, lo, hi)``
    Runs up to ``max_iter`` shifted power steps in place on ``x`` and returns
    ``(iterations, lo, hi, cur_lo, cur_hi, status)``; status is 1 when the
    current Collatz-Wielandt width fell to ``tol``, 0 when the budget ran
    out, -1 on a non-finite or nonpositive intermediate.
"""

from __future__ import annotations

import numpy as np


def adjacency_apply(edges: np.ndarray, x: np.ndarray, out: np.ndarray) -> None:
    n = out.shape[0]
    m, k = edges.shape
    if m == 0:
        out[:] = 0.0
        return
    vals = x[edges]
    # products of the entries left / right of each slot, no division so zeros are safe
    pre = np.ones((m, k))
    np.cumprod(vals[:, :-1], axis=1, out=pre[:, 1:])
    suf = np.ones((m, k))
    suf[:, :-1] = np.cumprod(vals[:, :0:-1], axis=1)[:, ::-1]
    out[:] = np.bincount(edges.ravel(), weights=(pre * suf).ravel(), minlength=n)


def power_iterate(edges, diag, scale, b, shift, x, tol, max_iter, lo, hi):
    n = x.shape[0]
    k = edges.shape[1]
    a = np.empty(n)
    cur_lo = cur_hi = 0.0
    it = 0
    with np.errstate(all="ignore"):
        while it < max_iter:
            adjacency_apply(edges, b * x, a)
            p = x if k == 2 else x ** (k - 1)
            y = scale * a + (diag + shift) * p
            r = y / p
            if not np.all(np.isfinite(r)):
                return it, lo, hi, cur_lo, cur_hi, -1
            cur_lo, cur_hi = float(r.min()), float(r.max())
            it += 1
            lo = max(lo, cur_lo - shift)
            hi = min(hi, cur_hi - shift)
            if cur_hi - cur_lo <= tol:
                return it, lo, hi, cur_lo, cur_hi, 1
            if not np.all(y > 0.0):
                return it, lo, hi, cur_lo, cur_hi, -1
            if k == 3:
                y = np.sqrt(y)
            elif k > 3:
                y = y ** (1.0 / (k - 1))
            x[:] = y / y.max()
    return it, lo, hi, cur_lo, cur_hi, 0

"""Reader and writer for the ``.uhg`` edge-list text format.

::

    # optional comments
    k n m
    v1 v2 ... vk      (m lines, 1-based vertex ids)
"""

from __future__ import annotations

from pathlib import Path

from .hypergraph import Hypergraph, HypergraphError, build


class UHGFormatError(HypergraphError):
    pass


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise UHGFormatError(f"line {lineno}: expected integers, got {line!r}") from None


def read_uhg(text: str) -> Hypergraph:
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise UHGFormatError("missing 'k n m' header") from None
    fields = _ints(header, lineno)
    if len(fields) != 3:
        raise UHGFormatError(f"line {lineno}: header must be 'k n m', got {header!r}")
    k, n, m = fields
    edges = []
    for lineno, line in lines:
        verts = _ints(line, lineno)
        if len(verts) != k:
            raise UHGFormatError(f"line {lineno}: expected {k} vertices, got {len(verts)}")
        edges.append(verts)
    if len(edges) != m:
        raise UHGFormatError(f"header declares {m} edges, found {len(edges)}")
    try:
        return build(k, n, edges)
    except UHGFormatError:
        raise
    except HypergraphError as exc:
        raise UHGFormatError(str(exc)) from None


def write_uhg(H: Hypergraph) -> str:
    out = [f"{H.k} {H.n} {H.m}"]
    out.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(out) + "\n"


def load(path: str | Path) -> Hypergraph:
    return read_uhg(Path(path).read_text())


def save(H: Hypergraph, path: str | Path) -> None:
    Path(path).write_text(write_uhg(H))

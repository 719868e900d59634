"""Base graphs for sequential dynamical systems.

Vertices are 0-based. ``star_graph(n_arms)`` has ``n_arms + 1`` vertices with
the center at vertex 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable


class GraphError(ValueError):
    """Raised for invalid graph sizes or malformed edge lists."""


@dataclass(frozen=True)
class BaseGraph:
    """A simple undirected graph stored as sorted adjacency tuples."""

    n_vertices: int
    adjacency: tuple[tuple[int, ...], ...]
    name: str = "graph"
    _closed: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_vertices < 1:
            raise GraphError("graph needs at least one vertex")
        if len(self.adjacency) != self.n_vertices:
            raise GraphError("adjacency length does not match n_vertices")
        for v, nbrs in enumerate(self.adjacency):
            for a, b in zip(nbrs, nbrs[1:]):
                if a >= b:
                    raise GraphError(f"adjacency of {v} is not strictly increasing")
            for u in nbrs:
                if not 0 <= u < self.n_vertices:
                    raise GraphError(f"vertex {u} out of range")
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if v not in self.adjacency[u]:
                    raise GraphError(f"edge {v}-{u} is not symmetric")
        closed = tuple(tuple(sorted(nbrs + (v,))) for v, nbrs in enumerate(self.adjacency))
        object.__setattr__(self, "_closed", closed)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "graph") -> "BaseGraph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(tuple(sorted(a)) for a in adj), name)

    def degree(self, v: int) -> int:
        return len(self.adjacency[self._check(v)])

    def edges(self) -> set[frozenset[int]]:
        return {frozenset((u, v)) for u, nbrs in enumerate(self.adjacency) for v in nbrs}

    def _check(self, v: int) -> int:
        if not 0 <= v < self.n_vertices:
            raise IndexError(f"vertex {v} out of range [0, {self.n_vertices})")
        return v


def complete_graph(n: int) -> BaseGraph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    adj = tuple(tuple(u for u in range(n) if u != v) for v in range(n))
    return BaseGraph(n, adj, f"K_{n}")


def star_graph(n_arms: int) -> BaseGraph:
    """Star with ``n_arms`` leaves; vertex 0 is the center."""
    if n_arms < 1:
        raise GraphError("star graph needs n_arms >= 1")
    adj = (tuple(range(1, n_arms + 1)),) + ((0,),) * n_arms
    return BaseGraph(n_arms + 1, adj, f"Star_{n_arms}")


def circle_graph(n: int) -> BaseGraph:
    if n < 3:
        raise GraphError("circle graph needs n >= 3")
    adj = tuple(tuple(sorted({(v - 1) % n, (v + 1) % n})) for v in range(n))
    return BaseGraph(n, adj, f"Circ_{n}")


def line_graph(n: int) -> BaseGraph:
    if n < 2:
        raise GraphError("line graph needs n >= 2")
    adj = tuple(tuple(u for u in (v - 1, v + 1) if 0 <= u < n) for v in range(n))
    return BaseGraph(n, adj, f"Line_{n}")


def closed_neighborhood(g: BaseGraph, v: int) -> tuple[int, ...]:
    """Sorted closed neighborhood of ``v`` (``v`` together with its neighbors)."""
    return g._closed[g._check(v)]


def max_degree(g: BaseGraph) -> int:
    return max(len(nbrs) for nbrs in g.adjacency)


def parse_edge_list(text: str, name: str = "graph") -> BaseGraph:
    """Parse the edge-list format: first line ``n``, then ``u v`` per line.

    Blank lines and ``#`` comments are ignored. Errors name the offending line.
    """
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise GraphError("empty edge list")
    first_no, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise GraphError(f"line {first_no}: expected vertex count, got {first!r}") from None
    if n < 1:
        raise GraphError(f"line {first_no}: vertex count must be >= 1")
    adj: list[set[int]] = [set() for _ in range(n)]
    for lineno, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex out of range [0, {n}) in {ln!r}")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop {ln!r}")
        if v in adj[u]:
            raise GraphError(f"line {lineno}: duplicate edge {ln!r}")
        adj[u].add(v)
        adj[v].add(u)
    return BaseGraph(n, tuple(tuple(sorted(a)) for a in adj), name)


def read_edge_list(path: str | Path) -> BaseGraph:
    path = Path(path)
    return parse_edge_list(path.read_text(), name=path.stem)

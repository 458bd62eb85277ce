"""Finite simplicial defining graphs for right-angled Artin groups.

The declaration order of the vertices is load-bearing: it fixes the total
order on generators used everywhere else for lexicographic tie-breaking
(canonical words, canonical coset representatives, chain enumeration order).
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed defining-graph input."""


class DefiningGraph:
    """A finite simplicial graph on named vertices.

    Vertices are kept in declaration order; internally every vertex is an
    integer index into that order.  Two generators commute in the associated
    group exactly when their vertices are adjacent here.
    """

    def __init__(self, vertices: Sequence[str], edges: Iterable[tuple[str, str]]):
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            dupes = sorted({v for v in vertices if vertices.count(v) > 1})
            raise GraphError(f"duplicate vertex declaration: {dupes}")
        for v in vertices:
            if not isinstance(v, str) or not v or any(ch in v for ch in ",^ \t\n"):
                raise GraphError(f"invalid vertex name {v!r}")
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.index: dict[str, int] = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)

        edge_set: set[tuple[int, int]] = set()
        for pos, e in enumerate(edges):
            try:
                u, v = e
            except (TypeError, ValueError):
                raise GraphError(f"edge #{pos} is not a pair: {e!r}") from None
            for end in (u, v):
                if end not in self.index:
                    raise GraphError(f"edge #{pos} has unknown endpoint {end!r}")
            if u == v:
                raise GraphError(f"edge #{pos} is a self-loop at {u!r}")
            i, j = sorted((self.index[u], self.index[v]))
            edge_set.add((i, j))
        self.edges: frozenset[tuple[int, int]] = frozenset(edge_set)

        # adj_bits[i]: bitmask of vertices adjacent to i (commuting generators).
        # dep_bits[i]: bitmask of j whose letters do NOT slide past i's
        # (j == i or j not adjacent to i) -- the dependence relation of traces.
        self.adj_bits = [0] * n
        for i, j in self.edges:
            self.adj_bits[i] |= 1 << j
            self.adj_bits[j] |= 1 << i
        full = (1 << n) - 1
        self.dep_bits = [(full & ~self.adj_bits[i]) for i in range(n)]
        self.noncommuters = [
            tuple(j for j in range(n) if j != i and (self.dep_bits[i] >> j) & 1)
            for i in range(n)
        ]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DefiningGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        es = sorted((self.vertices[i], self.vertices[j]) for i, j in self.edges)
        return f"DefiningGraph({list(self.vertices)!r}, {es!r})"

    def adjacent(self, u: str, v: str) -> bool:
        i, j = self.index[u], self.index[v]
        return (self.adj_bits[i] >> j) & 1 == 1

    def link(self, v: str) -> tuple[str, ...]:
        """Vertices adjacent to v, in declaration order."""
        i = self.index[v]
        return tuple(w for j, w in enumerate(self.vertices) if (self.adj_bits[i] >> j) & 1)

    def link_mask(self, i: int) -> int:
        return self.adj_bits[i]

    def is_independent(self, vs: Iterable[str]) -> bool:
        """True when no two of the given vertices are adjacent."""
        idx = [self.index[v] for v in vs]
        if len(set(idx)) != len(idx):
            raise GraphError("repeated vertex in independence check")
        return all(not (self.adj_bits[i] >> j) & 1 for i, j in combinations(idx, 2))

    def max_clique_size(self) -> int:
        """Size of a largest clique, by exhaustive search (small graphs only)."""
        if self.n == 0:
            raise GraphError("max_clique_size of the empty graph is undefined")
        if self.n > 16:
            raise GraphError("exhaustive clique search capped at 16 vertices")
        best = 1
        order = range(self.n)

        def grow(clique: list[int], candidates: list[int]) -> None:
            nonlocal best
            best = max(best, len(clique))
            for k, c in enumerate(candidates):
                if len(clique) + len(candidates) - k <= best:
                    break
                grow(clique + [c], [d for d in candidates[k + 1:] if (self.adj_bits[c] >> d) & 1])

        grow([], list(order))
        return best

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": sorted([self.vertices[i], self.vertices[j]] for i, j in self.edges),
        }


def parse_graph(data) -> DefiningGraph:
    """Build a graph from a JSON object/string: {"vertices": [...], "edges": [[u,v], ...]}."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphError(f"graph JSON does not parse: {exc}") from None
    if not isinstance(data, dict):
        raise GraphError(f"graph spec must be an object, got {type(data).__name__}")
    unknown = set(data) - {"vertices", "edges"}
    if unknown:
        raise GraphError(f"unknown graph keys: {sorted(unknown)}")
    if "vertices" not in data:
        raise GraphError("graph spec is missing 'vertices'")
    verts = data["vertices"]
    if not isinstance(verts, list):
        raise GraphError("'vertices' must be a list of names")
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise GraphError("'edges' must be a list of pairs")
    return DefiningGraph(verts, [tuple(e) if isinstance(e, list) else e for e in edges])


# Small constructors used all over the test rig and the docs.

def free_graph(*names: str) -> DefiningGraph:
    """Edgeless graph: the group is free on the given generators."""
    return DefiningGraph(names, [])


def path_graph(*names: str) -> DefiningGraph:
    """Path a-b-c-...: consecutive names are joined by an edge."""
    return DefiningGraph(names, list(zip(names, names[1:])))


def cycle_graph(*names: str) -> DefiningGraph:
    if len(names) < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    edges = list(zip(names, names[1:])) + [(names[-1], names[0])]
    return DefiningGraph(names, edges)

"""Shared interface for the cubical models.

A model exposes a vertex set (the 0-skeleton of a CAT(0) cube complex), its
halfspaces, and a group action.  Halfspaces are value objects with a model
specific encoding; orientation always travels with the halfspace, and
``complement`` flips it.  The H-interval between two vertices is the set of
halfspaces containing the target but not the source, partially ordered by
reverse inclusion (larger first).
"""

from __future__ import annotations

from collections import deque
from typing import Any, Hashable, Sequence

from ..posets import Poset

Vertex = Hashable
Halfspace = Hashable
GroupElement = Hashable

# pair relations between halfspaces
EQUAL = "equal"            # h = k
COMPLEMENT = "complement"  # h = complement of k
TRANSVERSE = "transverse"  # all four corner sets nonempty
H_IN_K = "h_in_k"          # h properly contained in k
K_IN_H = "k_in_h"          # k properly contained in h
DISJOINT = "disjoint"      # h and k disjoint
COVER = "cover"            # h and k cover every vertex

NESTED_RELATIONS = frozenset({H_IN_K, K_IN_H, DISJOINT, COVER})


class ModelError(ValueError):
    pass


class UnresolvedRelation(ModelError):
    """A halfspace comparison could not be settled inside the search window."""


class Interval:
    """H-interval [x, y]: halfspaces oriented toward y, ordered by reverse inclusion."""

    def __init__(self, model: "CubicalModel", x: Vertex, y: Vertex):
        self.model = model
        self.x = x
        self.y = y

    # subclasses fill these in
    @property
    def poset(self) -> Poset:
        raise NotImplementedError

    def __len__(self) -> int:
        return self.poset.n

    def refs(self) -> list[Halfspace]:
        raise NotImplementedError

    def chain_refs(self, chain: Sequence[int]) -> tuple[Halfspace, ...]:
        rs = self.refs()
        return tuple(rs[i] for i in chain)

    def cover_chains(self, length: int) -> list[tuple[int, ...]]:
        return self.poset.cover_chains(length)

    def realizable(self, chain: Sequence[int]) -> bool:
        """Some geodesic crosses the chain's hyperplanes consecutively."""
        return self.poset.chain_is_isolated(chain)

    def head(self, chain: Sequence[int]) -> Vertex:
        """A dual-edge endpoint of the first halfspace, on the outside."""
        return self.model.outer_endpoint(self.refs()[chain[0]])

    def tail(self, chain: Sequence[int]) -> Vertex:
        """A dual-edge endpoint of the last halfspace, on the inside."""
        return self.model.inner_endpoint(self.refs()[chain[-1]])

    def position_of(self, h: Halfspace) -> int | None:
        """Index of h in the interval (orientation included), else None."""
        for i, r in enumerate(self.refs()):
            if r == h:
                return i
        return None


class CubicalModel:
    """Base class; concrete models define vertices, halfspaces and the action."""

    kind: str = "?"

    # -- vertices -----------------------------------------------------------

    def basepoint(self) -> Vertex:
        raise NotImplementedError

    def neighbors(self, v: Vertex) -> list[Vertex]:
        raise NotImplementedError

    def dist(self, x: Vertex, y: Vertex) -> int:
        raise NotImplementedError

    def median(self, x: Vertex, y: Vertex, z: Vertex) -> Vertex:
        raise NotImplementedError

    def ball(self, center: Vertex | None = None, radius: int = 0) -> list[Vertex]:
        """Closed ball in BFS order (deterministic: neighbor order is fixed)."""
        if center is None:
            center = self.basepoint()
        seen = {center}
        order = [center]
        frontier = deque([(center, 0)])
        while frontier:
            v, d = frontier.popleft()
            if d == radius:
                continue
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    frontier.append((w, d + 1))
        return order

    def vertex_str(self, v: Vertex) -> str:
        raise NotImplementedError

    def parse_vertex(self, s: str) -> Vertex:
        raise NotImplementedError

    # -- halfspaces -----------------------------------------------------------

    def membership(self, v: Vertex, h: Halfspace) -> bool:
        raise NotImplementedError

    def complement(self, h: Halfspace) -> Halfspace:
        raise NotImplementedError

    def halfspace_relation(self, h: Halfspace, k: Halfspace) -> str:
        raise NotImplementedError

    def tightly_nested(self, h: Halfspace, k: Halfspace) -> bool:
        """h properly contains k with no halfspace strictly between."""
        raise NotImplementedError

    def interval(self, x: Vertex, y: Vertex) -> Interval:
        raise NotImplementedError

    def outer_endpoint(self, h: Halfspace) -> Vertex:
        """Canonical dual-edge endpoint outside h."""
        raise NotImplementedError

    def inner_endpoint(self, h: Halfspace) -> Vertex:
        raise NotImplementedError

    def dual_endpoints(self, h: Halfspace, window: int, *, outside: bool) -> tuple[list[Vertex], bool]:
        """Dual-edge endpoints on one side of h, and whether the list is complete."""
        raise NotImplementedError

    def halfspace_str(self, h: Halfspace) -> str:
        raise NotImplementedError

    def edge_halfspace(self, v: Vertex, w: Vertex) -> Halfspace:
        """The halfspace containing w dual to the edge (v, w)."""
        raise NotImplementedError

    # -- group action -----------------------------------------------------------

    def act_vertex(self, g: GroupElement, v: Vertex) -> Vertex:
        raise NotImplementedError

    def act(self, g: GroupElement, h: Halfspace) -> Halfspace:
        raise NotImplementedError

    def group_str(self, g: GroupElement) -> str:
        raise NotImplementedError

    # -- structure constants ------------------------------------------------------

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def chain_orbit_sign(self, s_chain: tuple, t_chain: tuple) -> int:
        """+1 if t lies in the orbit of s, -1 if in the orbit of its reverse, else 0."""
        raise NotImplementedError

    def spec_dict(self) -> dict:
        raise NotImplementedError

    # shared helper
    def reverse_chain(self, chain: tuple) -> tuple:
        return tuple(self.complement(h) for h in reversed(chain))

    def halfspaces_in_region(self, vertices: Sequence[Vertex]) -> list[Halfspace]:
        """All halfspaces dual to edges between region vertices (both orientations)."""
        vset = set(vertices)
        seen: set[Halfspace] = set()
        out: list[Halfspace] = []
        for v in vertices:
            for w in self.neighbors(v):
                if w in vset:
                    h = self.edge_halfspace(v, w)
                    for cand in (h, self.complement(h)):
                        if cand not in seen:
                            seen.add(cand)
                            out.append(cand)
        return out


class FiniteOrderInterval(Interval):
    """Interval whose poset comes from pairwise containment of explicit refs."""

    def __init__(self, model: CubicalModel, x: Vertex, y: Vertex, refs: list[Halfspace]):
        super().__init__(model, x, y)
        self._refs = refs
        self._poset: Poset | None = None

    @property
    def poset(self) -> Poset:
        if self._poset is None:
            rel = self.model.halfspace_relation
            rs = self._refs

            def leq(i: int, j: int) -> bool:
                return rel(rs[i], rs[j]) == K_IN_H  # rs[j] inside rs[i]: i comes first

            self._poset = Poset.from_leq(len(rs), leq)
        return self._poset

    def refs(self) -> list[Halfspace]:
        return self._refs

"""The universal cover of the Salvetti complex of a right-angled Artin group.

Vertices are group elements (traces); the group acts on itself from the
left.  A hyperplane is identified by the generator labelling its dual edges
together with the canonical representative of the coset g<link(v)> of any
dual-edge base vertex -- two edges cross the same hyperplane exactly when
those cosets agree, so hyperplane equality is a tuple comparison.  The
halfspace on the side of anchor*v is the "toward" side.
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple, Sequence

from ..graphs import DefiningGraph
from ..posets import Poset
from ..traces import Trace, gen_of, letter, sign_of
from .base import (
    COMPLEMENT,
    COVER,
    DISJOINT,
    EQUAL,
    H_IN_K,
    K_IN_H,
    TRANSVERSE,
    CubicalModel,
    Interval,
    ModelError,
)


class RaagHalfspace(NamedTuple):
    gen: int          # generator labelling the dual edges
    anchor: Trace     # canonical representative of base <link(gen)>
    toward: bool      # True: the side containing anchor * gen

    def hyperplane(self) -> tuple:
        return (self.gen, self.anchor)


class RaagInterval(Interval):
    """Interval realised on the heap of the difference trace.

    Position order in the heap coincides with reverse inclusion of the
    crossed halfspaces (earlier crossings are larger halfspaces), so the heap
    *is* the interval poset and no containment tests are needed.
    """

    def __init__(self, model: "RaagModel", x: Trace, y: Trace):
        super().__init__(model, x, y)
        self.trace = ~x * y
        self.word = self.trace.word
        self._poset = self.trace.heap()
        self._refs: list[RaagHalfspace] | None = None
        self._prefixes: dict[int, Trace] = {}

    @property
    def poset(self) -> Poset:
        return self._poset

    def labels(self, chain: Sequence[int]) -> tuple[int, ...]:
        """Encoded letters crossed along the chain."""
        return tuple(self.word[i] for i in chain)

    def _prefix_vertex(self, mask: int) -> Trace:
        """x times the sub-trace at the positions of mask (a downset)."""
        got = self._prefixes.get(mask)
        if got is None:
            sub = tuple(self.word[i] for i in range(len(self.word)) if (mask >> i) & 1)
            got = self.x * Trace(self.model.graph, sub)
            self._prefixes[mask] = got
        return got

    def vertex_at(self, downset_mask: int) -> Trace:
        return self._prefix_vertex(downset_mask)

    def refs(self) -> list[RaagHalfspace]:
        if self._refs is None:
            model: RaagModel = self.model
            out = []
            for i, let in enumerate(self.word):
                before = self._prefix_vertex(self._poset.pred[i])
                out.append(model.crossing_halfspace(before, let))
            self._refs = out
        return self._refs

    def head(self, chain: Sequence[int]) -> Trace:
        return self._prefix_vertex(self._poset.pred[chain[0]])

    def tail(self, chain: Sequence[int]) -> Trace:
        last = chain[-1]
        return self._prefix_vertex(self._poset.pred[last] | (1 << last))


class RaagModel(CubicalModel):
    kind = "raag"

    def __init__(self, graph: DefiningGraph):
        self.graph = graph
        self._one = Trace.identity(graph)
        self._gen_traces = [Trace(graph, (letter(i, 1),)) for i in range(graph.n)]
        self._neighbor_letters = [letter(i, s) for i in range(graph.n) for s in (1, -1)]
        self._letter_traces = {
            let: Trace(graph, (let,), _canonical=True) for let in self._neighbor_letters
        }
        self._dim: int | None = None
        # the complex of a free group is a tree: staircase length 1, exactly
        self.sigma: int | None = 1 if (graph.n >= 1 and not graph.edges) else None
        self.sigma_region: str | None = "tree (exact)" if self.sigma else None

    # -- vertices ---------------------------------------------------------

    def basepoint(self) -> Trace:
        return self._one

    def neighbors(self, v: Trace) -> list[Trace]:
        return [v * self._letter_traces[let] for let in self._neighbor_letters]

    def dist(self, x: Trace, y: Trace) -> int:
        return x.dist(y)

    def median(self, x: Trace, y: Trace, z: Trace) -> Trace:
        return x * ((~x * y).prefix_meet(~x * z))

    def vertex_str(self, v: Trace) -> str:
        return v.as_str() or "1"

    def parse_vertex(self, s: str) -> Trace:
        if s.strip() == "1":
            return Trace.identity(self.graph)
        return Trace.from_str(s, self.graph)

    # -- halfspaces ---------------------------------------------------------

    def crossing_halfspace(self, before: Trace, let: int) -> RaagHalfspace:
        """Halfspace entered when moving from `before` across the letter."""
        gen = gen_of(let)
        link = self.graph.link_mask(gen)
        if sign_of(let) > 0:
            return RaagHalfspace(gen, before.coset_rep(link), True)
        base = before * self._letter_traces[let]
        return RaagHalfspace(gen, base.coset_rep(link), False)

    def edge_halfspace(self, v: Trace, w: Trace) -> RaagHalfspace:
        diff = ~v * w
        if len(diff.word) != 1:
            raise ModelError("not an edge")
        return self.crossing_halfspace(v, diff.word[0])

    def membership(self, z: Trace, h: RaagHalfspace) -> bool:
        inner = h.anchor * self._gen_traces[h.gen]
        on_toward = z.dist(inner) < z.dist(h.anchor)
        return on_toward if h.toward else not on_toward

    def complement(self, h: RaagHalfspace) -> RaagHalfspace:
        return RaagHalfspace(h.gen, h.anchor, not h.toward)

    def halfspace_str(self, h: RaagHalfspace) -> str:
        side = "+" if h.toward else "-"
        return f"{self.graph.vertices[h.gen]}{side}@{h.anchor.as_str() or '1'}"

    def signed_label(self, h: RaagHalfspace) -> int:
        """Letter crossed when entering h through a dual edge."""
        return letter(h.gen, 1 if h.toward else -1)

    def _edge_pair(self, h: RaagHalfspace) -> tuple[Trace, Trace]:
        """(outside endpoint, inside endpoint) of the anchor dual edge."""
        inner = h.anchor * self._gen_traces[h.gen]
        return (h.anchor, inner) if h.toward else (inner, h.anchor)

    def halfspace_relation(self, h: RaagHalfspace, k: RaagHalfspace) -> str:
        """Exact pair classification.

        Distinct hyperplanes are compared inside one H-interval: choose a
        dual-edge endpoint of each so that both hyperplanes separate the two
        points, then heap comparability decides nested vs transverse, and the
        two orientations pin down which of the four nested relations holds.
        """
        if h.hyperplane() == k.hyperplane():
            return EQUAL if h.toward == k.toward else COMPLEMENT
        h_out, h_in = self._edge_pair(h)
        k_out, k_in = self._edge_pair(k)
        s_h = self.membership(h_out, k)   # side of k holding h's dual edge
        s_k = self.membership(k_out, h)   # side of h holding k's dual edge
        x = h_out if s_k else h_in        # h separates x from k's edge
        y = k_out if s_h else k_in        # k separates y from h's edge, so from x
        iv = self.interval(x, y)
        hy = h if self.membership(y, h) else self.complement(h)
        ky = k if self.membership(y, k) else self.complement(k)
        i = iv.position_of(hy)
        j = iv.position_of(ky)
        if i is None or j is None:
            raise ModelError("internal: hyperplane missing from its witness interval")
        if not iv.poset.comparable(i, j):
            return TRANSVERSE
        if iv.poset.lt(i, j):  # hy strictly contains ky
            if hy == h:
                return K_IN_H if ky == k else COVER
            return DISJOINT if ky == k else H_IN_K
        else:                  # ky strictly contains hy
            if hy == h:
                return H_IN_K if ky == k else DISJOINT
            return COVER if ky == k else K_IN_H

    def tightly_nested(self, h: RaagHalfspace, k: RaagHalfspace) -> bool:
        """h properly contains k with no halfspace strictly between.

        Any straddler contains k's inside endpoint and misses h's outside
        endpoint, so all of them show up in that one interval; tightness is a
        single empty-betweenness bitmask test there.
        """
        if self.halfspace_relation(h, k) != K_IN_H:
            return False
        x = self._edge_pair(h)[0]
        y = self._edge_pair(k)[1]
        iv = self.interval(x, y)
        i = iv.position_of(h)
        j = iv.position_of(k)
        if i is None or j is None:
            raise ModelError("internal: nested pair missing from witness interval")
        return iv.poset.between(i, j) == 0

    def interval(self, x: Trace, y: Trace) -> RaagInterval:
        return RaagInterval(self, x, y)

    def outer_endpoint(self, h: RaagHalfspace) -> Trace:
        return self._edge_pair(h)[0]

    def inner_endpoint(self, h: RaagHalfspace) -> Trace:
        return self._edge_pair(h)[1]

    def dual_endpoints(self, h: RaagHalfspace, window: int, *, outside: bool) -> tuple[list[Trace], bool]:
        """Dual-edge endpoints anchor*u (or anchor*u*v) over u in the link subgroup.

        Complete only when the link is empty; otherwise limited to link
        elements of length <= window.
        """
        link = self.graph.link_mask(h.gen)
        complete = link == 0
        us = self._parabolic_ball(link, window)
        v = self._gen_traces[h.gen]
        anchor_side = h.toward == outside
        pts = [h.anchor * u if anchor_side else h.anchor * u * v for u in us]
        return pts, complete

    def _parabolic_ball(self, gens_mask: int, radius: int) -> list[Trace]:
        lets = [let for let in self._neighbor_letters if (gens_mask >> (let >> 1)) & 1]
        seen = {self._one}
        order = [self._one]
        frontier = deque([(self._one, 0)])
        while frontier:
            v, d = frontier.popleft()
            if d == radius:
                continue
            for let in lets:
                w = v * self._letter_traces[let]
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    frontier.append((w, d + 1))
        return order

    # -- action ---------------------------------------------------------

    def act_vertex(self, g: Trace, v: Trace) -> Trace:
        return g * v

    def act(self, g: Trace, h: RaagHalfspace) -> RaagHalfspace:
        link = self.graph.link_mask(h.gen)
        return RaagHalfspace(h.gen, (g * h.anchor).coset_rep(link), h.toward)

    def group_str(self, g: Trace) -> str:
        return g.as_str()

    # -- constants ---------------------------------------------------------

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = self.graph.max_clique_size()
        return self._dim

    def spec_dict(self) -> dict:
        return {"kind": "raag", "graph": self.graph.to_json_dict()}

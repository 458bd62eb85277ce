"""Wedge of two n-cubes glued at a corner, acted on by S_n x S_n.

Vertices are sign vectors: the minus cube {-1,0}^n and the plus cube
{0,1}^n, sharing only the origin.  The complex is finite (2^(n+1) - 1
vertices for n <= 4), so distances, medians and halfspace relations are all
computed by direct enumeration -- this model is the oracle, not the thing
being optimised.  One permutation acts on each cube's coordinates; the
origin is fixed by everything.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import NamedTuple

from .base import (
    COMPLEMENT,
    COVER,
    DISJOINT,
    EQUAL,
    H_IN_K,
    K_IN_H,
    TRANSVERSE,
    CubicalModel,
    FiniteOrderInterval,
    ModelError,
)

_CHARS = {-1: "-", 0: "0", 1: "+"}
_VALS = {"-": -1, "0": 0, "+": 1}


class WedgeHalfspace(NamedTuple):
    half: int     # -1 or +1: which cube the hyperplane lives in
    axis: int
    inner: bool   # True: {p : p[axis] == half}; False: everything else

    def hyperplane(self) -> tuple:
        return (self.half, self.axis)


class WedgeModel(CubicalModel):
    kind = "wedge"

    def __init__(self, n: int):
        if not 1 <= n <= 4:
            raise ModelError(f"wedge truncation supports 1 <= n <= 4, got {n}")
        self.n = n
        minus = {tuple(p) for p in product((-1, 0), repeat=n)}
        plus = {tuple(p) for p in product((0, 1), repeat=n)}
        self._vertices = sorted(minus | plus)
        self._vset = frozenset(self._vertices)
        self._dist = {v: self._bfs(v) for v in self._vertices}
        self._sides: dict[WedgeHalfspace, frozenset] = {}
        for half in (-1, 1):
            for axis in range(n):
                inside = frozenset(p for p in self._vertices if p[axis] == half)
                self._sides[WedgeHalfspace(half, axis, True)] = inside
                self._sides[WedgeHalfspace(half, axis, False)] = self._vset - inside

    def halfspaces(self) -> list[WedgeHalfspace]:
        return [
            WedgeHalfspace(half, axis, inner)
            for half in (-1, 1)
            for axis in range(self.n)
            for inner in (True, False)
        ]

    # -- vertices ---------------------------------------------------------

    def basepoint(self) -> tuple:
        return (0,) * self.n

    def vertices(self) -> list[tuple]:
        return list(self._vertices)

    def neighbors(self, v: tuple) -> list[tuple]:
        out = []
        for i in range(self.n):
            for step in (-1, 1):
                w = v[:i] + (v[i] + step,) + v[i + 1:]
                if w in self._vset:
                    out.append(w)
        return out

    def _bfs(self, src: tuple) -> dict[tuple, int]:
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for w in self.neighbors(v):
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def dist(self, x: tuple, y: tuple) -> int:
        return self._dist[x][y]

    def median(self, x: tuple, y: tuple, z: tuple) -> tuple:
        d = self._dist
        hits = [
            m
            for m in self._vertices
            if d[x][m] + d[m][y] == d[x][y]
            and d[x][m] + d[m][z] == d[x][z]
            and d[y][m] + d[m][z] == d[y][z]
        ]
        if len(hits) != 1:
            raise ModelError(f"median degeneracy at {x},{y},{z}: {len(hits)} candidates")
        return hits[0]

    def vertex_str(self, v: tuple) -> str:
        return "".join(_CHARS[e] for e in v)

    def parse_vertex(self, s: str) -> tuple:
        s = s.strip()
        if len(s) != self.n or any(ch not in _VALS for ch in s):
            raise ModelError(f"bad wedge vertex {s!r} for n={self.n}")
        v = tuple(_VALS[ch] for ch in s)
        if v not in self._vset:
            raise ModelError(f"{s!r} mixes the two cube halves")
        return v

    # -- halfspaces ---------------------------------------------------------

    def membership(self, v: tuple, h: WedgeHalfspace) -> bool:
        return v in self._sides[h]

    def complement(self, h: WedgeHalfspace) -> WedgeHalfspace:
        return WedgeHalfspace(h.half, h.axis, not h.inner)

    def halfspace_str(self, h: WedgeHalfspace) -> str:
        side = "in" if h.inner else "out"
        return f"{_CHARS[h.half]}{h.axis}:{side}"

    def parse_halfspace(self, s: str) -> WedgeHalfspace:
        try:
            head, side = s.strip().split(":")
            half = {"-": -1, "+": 1}[head[0]]
            axis = int(head[1:])
            inner = {"in": True, "out": False}[side]
        except (ValueError, KeyError, IndexError):
            raise ModelError(f"bad wedge halfspace {s!r} (want e.g. '-0:in')") from None
        if not 0 <= axis < self.n:
            raise ModelError(f"wedge axis {axis} out of range")
        return WedgeHalfspace(half, axis, inner)

    def halfspace_relation(self, h: WedgeHalfspace, k: WedgeHalfspace) -> str:
        if h.hyperplane() == k.hyperplane():
            return EQUAL if h.inner == k.inner else COMPLEMENT
        hs, ks = self._sides[h], self._sides[k]
        if not hs - ks:
            return H_IN_K
        if not ks - hs:
            return K_IN_H
        if not hs & ks:
            return DISJOINT
        if hs | ks == self._vset:
            return COVER
        return TRANSVERSE

    def tightly_nested(self, h: WedgeHalfspace, k: WedgeHalfspace) -> bool:
        if self.halfspace_relation(h, k) != K_IN_H:
            return False
        hs, ks = self._sides[h], self._sides[k]
        # halfspaces() already lists both orientations of every hyperplane
        for m in self.halfspaces():
            ms = self._sides[m]
            if ks < ms < hs:
                return False
        return True

    def interval(self, x: tuple, y: tuple) -> FiniteOrderInterval:
        refs = [
            h
            for h in self.halfspaces()
            if y in self._sides[h] and x not in self._sides[h]
        ]
        return FiniteOrderInterval(self, x, y, refs)

    def _dual_edges(self, h: WedgeHalfspace) -> list[tuple[tuple, tuple]]:
        """(outer, inner) endpoint pairs of all edges dual to h's hyperplane."""
        out = []
        for inner_v in sorted(self._sides[WedgeHalfspace(h.half, h.axis, True)]):
            outer_v = inner_v[: h.axis] + (0,) + inner_v[h.axis + 1:]
            pair = (outer_v, inner_v) if h.inner else (inner_v, outer_v)
            out.append(pair)
        return out

    def outer_endpoint(self, h: WedgeHalfspace) -> tuple:
        return self._dual_edges(h)[0][0]

    def inner_endpoint(self, h: WedgeHalfspace) -> tuple:
        return self._dual_edges(h)[0][1]

    def dual_endpoints(self, h: WedgeHalfspace, window: int, *, outside: bool) -> tuple[list, bool]:
        pts = [e[0 if outside else 1] for e in self._dual_edges(h)]
        return pts, True  # finite complex: the enumeration is complete

    def edge_halfspace(self, v: tuple, w: tuple) -> WedgeHalfspace:
        diffs = [i for i in range(self.n) if v[i] != w[i]]
        if len(diffs) != 1 or abs(v[diffs[0]] - w[diffs[0]]) != 1:
            raise ModelError("not an edge")
        i = diffs[0]
        half = w[i] if w[i] != 0 else v[i]
        return WedgeHalfspace(half, i, inner=w[i] == half)

    # -- action (S_n x S_n: one permutation per cube) ----------------------

    def group_identity(self) -> tuple:
        ident = tuple(range(self.n))
        return (ident, ident)

    def group_elements(self) -> list[tuple]:
        perms = list(permutations(range(self.n)))
        return [(rho, tau) for rho in perms for tau in perms]

    def act_vertex(self, g: tuple, v: tuple) -> tuple:
        rho, tau = g
        perm = rho if min(v) < 0 else tau
        out = [0] * self.n
        for i, e in enumerate(v):
            out[perm[i]] = e
        return tuple(out)

    def act(self, g: tuple, h: WedgeHalfspace) -> WedgeHalfspace:
        rho, tau = g
        perm = rho if h.half < 0 else tau
        return WedgeHalfspace(h.half, perm[h.axis], h.inner)

    def group_str(self, g: tuple) -> str:
        return f"{list(g[0])}|{list(g[1])}"

    def chain_orbit_sign(self, s_chain: tuple, t_chain: tuple) -> int:
        if len(s_chain) != len(t_chain):
            return 0
        rev = self.reverse_chain(s_chain)
        fwd = bwd = False
        for g in self.group_elements():
            moved = tuple(self.act(g, h) for h in s_chain)
            if moved == t_chain:
                fwd = True
            if tuple(self.act(g, h) for h in rev) == t_chain:
                bwd = True
            if fwd and bwd:
                raise ModelError("degenerate segment: equals a translate of its own reverse")
        return 1 if fwd else (-1 if bwd else 0)

    # -- constants ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.n

    sigma = None  # not certified; the wedge is used as a counterexample, not a bound
    sigma_region = None

    def spec_dict(self) -> dict:
        return {"kind": "wedge", "n": self.n}

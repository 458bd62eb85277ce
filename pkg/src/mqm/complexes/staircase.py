"""The infinite staircase: V = {(x, y) in Z^2 : x <= y} with the grid metric.

Halfspaces are coordinate thresholds ``{p : p[coord] > level}`` and their
complements.  Because V is an l^1-convex subset of the grid, every relation
between two halfspaces reduces to feasibility of a small linear system, so
the pair classification and tight nesting are closed-form.  The group is Z
acting by diagonal shifts; there is *no* finite staircase length (that is
the point of the model), so no defect bound is ever certified here.
"""

from __future__ import annotations

import json
import re
from typing import NamedTuple, Sequence

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

_AXES = ("x", "y")
_TOKEN = re.compile(r"^(x|y)(>|<=)(-?\d+)$")


class StairHalfspace(NamedTuple):
    coord: int   # 0 = x, 1 = y
    level: int
    pos: bool    # True: {p[coord] > level}; False: {p[coord] <= level}

    def hyperplane(self) -> tuple:
        return (self.coord, self.level)


def _feasible(constraints: Sequence[StairHalfspace]) -> bool:
    """Is there a staircase vertex satisfying all the given halfspaces?"""
    lo = [None, None]
    hi = [None, None]
    for h in constraints:
        if h.pos:
            cur = lo[h.coord]
            lo[h.coord] = h.level + 1 if cur is None else max(cur, h.level + 1)
        else:
            cur = hi[h.coord]
            hi[h.coord] = h.level if cur is None else min(cur, h.level)
    for c in (0, 1):
        if lo[c] is not None and hi[c] is not None and lo[c] > hi[c]:
            return False
    # x <= y: the smallest admissible x must not exceed the largest admissible y
    if lo[0] is not None and hi[1] is not None and lo[0] > hi[1]:
        return False
    return True


class StaircaseModel(CubicalModel):
    kind = "staircase"

    dim = 2
    sigma = None            # unbounded staircase length -- no defect guarantee
    sigma_region = None

    # -- vertices ---------------------------------------------------------

    def basepoint(self) -> tuple[int, int]:
        return (0, 0)

    def _check(self, v) -> tuple[int, int]:
        x, y = v
        if x > y:
            raise ModelError(f"({x},{y}) is not a staircase vertex (needs x <= y)")
        return (x, y)

    def neighbors(self, v: tuple[int, int]) -> list[tuple[int, int]]:
        x, y = v
        cand = [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)]
        return [p for p in cand if p[0] <= p[1]]

    def dist(self, a: tuple[int, int], b: tuple[int, int]) -> int:
        return abs(a[0] - b[0]) + abs(a[1] - b[1])

    def median(self, a, b, c) -> tuple[int, int]:
        return (
            sorted((a[0], b[0], c[0]))[1],
            sorted((a[1], b[1], c[1]))[1],
        )

    def vertex_str(self, v) -> str:
        return f"[{v[0]},{v[1]}]"

    def parse_vertex(self, s: str):
        try:
            data = json.loads(s)
            x, y = data
            x, y = int(x), int(y)
        except (ValueError, TypeError) as exc:
            raise ModelError(f"bad staircase vertex {s!r}: {exc}") from None
        return self._check((x, y))

    # -- halfspaces ---------------------------------------------------------

    def membership(self, v, h: StairHalfspace) -> bool:
        c = v[h.coord]
        return c > h.level if h.pos else c <= h.level

    def complement(self, h: StairHalfspace) -> StairHalfspace:
        return StairHalfspace(h.coord, h.level, not h.pos)

    def halfspace_str(self, h: StairHalfspace) -> str:
        op = ">" if h.pos else "<="
        return f"{_AXES[h.coord]}{op}{h.level}"

    def parse_halfspace(self, s: str) -> StairHalfspace:
        m = _TOKEN.match(s.strip())
        if not m:
            raise ModelError(f"bad staircase halfspace {s!r} (want e.g. 'y>0' or 'x<=-2')")
        axis, op, level = m.groups()
        return StairHalfspace(_AXES.index(axis), int(level), op == ">")

    def halfspace_relation(self, h: StairHalfspace, k: StairHalfspace) -> str:
        if h.hyperplane() == k.hyperplane():
            return EQUAL if h.pos == k.pos else COMPLEMENT
        hc, kc = self.complement(h), self.complement(k)
        if not _feasible([h, kc]):
            return H_IN_K
        if not _feasible([hc, k]):
            return K_IN_H
        if not _feasible([h, k]):
            return DISJOINT
        if not _feasible([hc, kc]):
            return COVER
        return TRANSVERSE

    def tightly_nested(self, h: StairHalfspace, k: StairHalfspace) -> bool:
        if self.halfspace_relation(h, k) != K_IN_H:
            return False
        if h.coord == k.coord:
            # only same-type thresholds sit between same-coordinate nests
            return abs(h.level - k.level) == 1
        # cross-coordinate nesting {y># } > {x># } (or the complement pattern)
        # admits a threshold strictly between unless the levels agree
        return h.level == k.level

    def interval(self, x, y) -> FiniteOrderInterval:
        x, y = self._check(x), self._check(y)
        refs: list[StairHalfspace] = []
        for c in (0, 1):
            a, b = x[c], y[c]
            if b > a:
                refs.extend(StairHalfspace(c, lvl, True) for lvl in range(a, b))
            else:
                refs.extend(StairHalfspace(c, lvl, False) for lvl in range(b, a))
        return FiniteOrderInterval(self, x, y, refs)

    def _dual_edge(self, h: StairHalfspace, slack: int = 0) -> tuple:
        """(outer, inner) endpoints of one dual edge, slack steps from the corner."""
        g = h.level
        if h.coord == 0:
            out, inn = (g, g + 1 + slack), (g + 1, g + 1 + slack)
        else:
            out, inn = (g - slack, g), (g - slack, g + 1)
        return (out, inn) if h.pos else (inn, out)

    def outer_endpoint(self, h: StairHalfspace):
        return self._dual_edge(h)[0]

    def inner_endpoint(self, h: StairHalfspace):
        return self._dual_edge(h)[1]

    def dual_endpoints(self, h: StairHalfspace, window: int, *, outside: bool) -> tuple[list, bool]:
        pts = [self._dual_edge(h, slack)[0 if outside else 1] for slack in range(window + 1)]
        return pts, False  # every hyperplane here has infinitely many dual edges

    def edge_halfspace(self, v, w) -> StairHalfspace:
        dx, dy = w[0] - v[0], w[1] - v[1]
        if abs(dx) + abs(dy) != 1:
            raise ModelError("not an edge")
        c = 0 if dx else 1
        step = dx or dy
        return StairHalfspace(c, v[c] if step > 0 else w[c], step > 0)

    # -- action (Z by diagonal shifts) ------------------------------------

    def act_vertex(self, g: int, v) -> tuple[int, int]:
        return (v[0] + g, v[1] + g)

    def act(self, g: int, h: StairHalfspace) -> StairHalfspace:
        return StairHalfspace(h.coord, h.level + g, h.pos)

    def group_str(self, g: int) -> str:
        return str(g)

    def _shift_between(self, a: tuple, b: tuple) -> int | None:
        """Shift g with act(g, b) == a, if any."""
        if len(a) != len(b):
            return None
        g = a[0].level - b[0].level
        ok = all(
            p.coord == q.coord and p.pos == q.pos and p.level - q.level == g
            for p, q in zip(a, b)
        )
        return g if ok else None

    def chain_orbit_sign(self, s_chain: tuple, t_chain: tuple) -> int:
        fwd = self._shift_between(t_chain, s_chain) is not None
        bwd = self._shift_between(t_chain, self.reverse_chain(s_chain)) is not None
        if fwd and bwd:
            raise ModelError("degenerate segment: equals a translate of its own reverse")
        return 1 if fwd else (-1 if bwd else 0)

    def spec_dict(self) -> dict:
        return {"kind": "staircase"}

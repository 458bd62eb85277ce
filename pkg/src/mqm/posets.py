"""Small finite posets as bitmask tables.

Used for heaps of reduced words and for halfspace intervals ordered by
reverse inclusion.  Elements are 0..n-1; all sets of elements are Python
ints treated as bitmasks, which keeps cover/betweenness queries O(1).
"""

from __future__ import annotations

from typing import Callable, Iterator, Sequence


class Poset:
    """Strict partial order given by predecessor bitmasks.

    pred[i] is the set of elements strictly below i, succ[i] strictly above.
    """

    def __init__(self, pred: Sequence[int]):
        self.n = len(pred)
        self.pred = list(pred)
        self.succ = [0] * self.n
        for j in range(self.n):
            p = self.pred[j]
            while p:
                low = p & -p
                self.succ[low.bit_length() - 1] |= 1 << j
                p ^= low
        self._covers: list[tuple[int, int]] | None = None

    @classmethod
    def from_dependence(cls, items: Sequence, dep: Callable) -> "Poset":
        """Order generated by i < j (as positions) whenever dep(items[i], items[j]).

        This is the heap order of a word: the transitive closure of the
        dependence relation on positions.
        """
        n = len(items)
        pred = [0] * n
        for j in range(n):
            acc = 0
            for i in range(j):
                if dep(items[i], items[j]):
                    acc |= pred[i] | (1 << i)
            pred[j] = acc
        return cls(pred)

    @classmethod
    def from_leq(cls, n: int, leq: Callable[[int, int], bool]) -> "Poset":
        """Order from an explicit comparison oracle (leq strict-or-equal)."""
        pred = [0] * n
        for j in range(n):
            for i in range(n):
                if i != j and leq(i, j):
                    pred[j] |= 1 << i
        return cls(pred)

    def lt(self, i: int, j: int) -> bool:
        return (self.pred[j] >> i) & 1 == 1

    def comparable(self, i: int, j: int) -> bool:
        return i == j or self.lt(i, j) or self.lt(j, i)

    def between(self, i: int, j: int) -> int:
        """Bitmask of elements strictly between i and j (assumes i < j)."""
        return self.succ[i] & self.pred[j]

    def covers(self) -> list[tuple[int, int]]:
        """All covering relations i <. j."""
        if self._covers is None:
            out = []
            for j in range(self.n):
                p = self.pred[j]
                while p:
                    low = p & -p
                    i = low.bit_length() - 1
                    if not self.between(i, j):
                        out.append((i, j))
                    p ^= low
            self._covers = out
        return self._covers

    def minimal(self) -> list[int]:
        return [i for i in range(self.n) if not self.pred[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if not self.succ[i]]

    def cover_chains(self, length: int) -> list[tuple[int, ...]]:
        """All chains (i_1 <. i_2 <. ... <. i_length) of covering relations."""
        if length < 1:
            raise ValueError("chain length must be >= 1")
        if length == 1:
            return [(i,) for i in range(self.n)]
        up: dict[int, list[int]] = {i: [] for i in range(self.n)}
        for i, j in self.covers():
            up[i].append(j)
        chains: list[tuple[int, ...]] = []

        def extend(chain: tuple[int, ...]) -> None:
            if len(chain) == length:
                chains.append(chain)
                return
            for j in up[chain[-1]]:
                extend(chain + (j,))

        for i in range(self.n):
            extend((i,))
        return chains

    def chain_is_isolated(self, chain: Sequence[int]) -> bool:
        """True when nothing outside the chain sits strictly between its ends.

        For a covering chain this is exactly the condition that some linear
        extension lists the chain consecutively.
        """
        if len(chain) == 1:
            return True
        middle = 0
        for c in chain[1:-1]:
            middle |= 1 << c
        return self.between(chain[0], chain[-1]) == middle

    def downsets(self) -> Iterator[int]:
        """All downward-closed subsets, as bitmasks (exponential; small posets)."""
        sets = {0}
        for j in self._linear_positions():
            new = set()
            for s in sets:
                if self.pred[j] & ~s == 0:
                    new.add(s | (1 << j))
            sets |= new
        return iter(sorted(sets))

    def _linear_positions(self) -> list[int]:
        # a topological order (index order is NOT one for from_leq posets)
        order, placed = [], 0
        while len(order) < self.n:
            for i in range(self.n):
                if not (placed >> i) & 1 and self.pred[i] & ~placed == 0:
                    order.append(i)
                    placed |= 1 << i
        return order

    def linear_extensions(self, limit: int = 100000) -> list[tuple[int, ...]]:
        """All linear extensions (guarded; test-scale posets only)."""
        out: list[tuple[int, ...]] = []
        full = (1 << self.n) - 1

        def rec(placed_mask: int, acc: tuple[int, ...]) -> None:
            if len(out) >= limit:
                raise ValueError("too many linear extensions")
            if placed_mask == full:
                out.append(acc)
                return
            for i in range(self.n):
                if not (placed_mask >> i) & 1 and self.pred[i] & ~placed_mask == 0:
                    rec(placed_mask | (1 << i), acc + (i,))

        rec(0, ())
        return out

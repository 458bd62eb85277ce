"""Canonical forms and geodesic combinatorics for partially commutative groups.

Words are stored as tuples of encoded letters: generator i with exponent +1
is the even int 2*i, with exponent -1 the odd int 2*i+1.  Plain integer
comparison of encoded letters therefore realises the generator order (by
declaration) refined by "positive before negative", which is the tie-break
used for canonical forms.

The normal form is computed by piling: every generator owns a pile; a letter
drops onto its own pile and a marker onto every pile it does not commute
with.  A letter landing directly on its own inverse cancels it (this is
exactly the free cancellation allowed in the trace), removing the partner
markers as well.  Reading the piles back bottom-up, always taking the least
available generator, yields the lexicographically least reduced word.  The
result is independent of the input's letter order within its trace class,
and every reduced word of the same group element piles to the same output.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .graphs import DefiningGraph
from .posets import Poset


class WordError(ValueError):
    """Raised for malformed word input."""


# ---------------------------------------------------------------------------
# letters


def letter(gen_index: int, sign: int) -> int:
    return 2 * gen_index + (1 if sign < 0 else 0)


def gen_of(let: int) -> int:
    return let >> 1


def sign_of(let: int) -> int:
    return -1 if let & 1 else 1


def inv_letter(let: int) -> int:
    return let ^ 1


def parse_word(text: str, graph: DefiningGraph) -> tuple[int, ...]:
    """Parse comma-separated tokens 'v' / 'v^-1' into encoded letters."""
    text = text.strip()
    if not text:
        return ()
    out = []
    for pos, tok in enumerate(text.split(",")):
        tok = tok.strip()
        if not tok:
            raise WordError(f"empty token at position {pos}")
        if tok.endswith("^-1"):
            name, sg = tok[:-3], -1
        elif "^" in tok:
            raise WordError(f"bad token {tok!r} at position {pos} (only ^-1 is allowed)")
        else:
            name, sg = tok, 1
        if name not in graph.index:
            raise WordError(f"unknown generator {name!r} at position {pos}")
        out.append(letter(graph.index[name], sg))
    return tuple(out)


def format_word(letters: Sequence[int], graph: DefiningGraph) -> str:
    toks = []
    for let in letters:
        name = graph.vertices[gen_of(let)]
        toks.append(name if not let & 1 else name + "^-1")
    return ",".join(toks)


# ---------------------------------------------------------------------------
# piling


def pile_reduce(letters: Iterable[int], graph: DefiningGraph) -> tuple[int, ...]:
    """Reduce a letter sequence to the canonical word of its group element."""
    n = graph.n
    piles: list[list[int]] = [[] for _ in range(n)]  # entries 2=pos, 3=neg, 0=marker
    noncommuters = graph.noncommuters
    for let in letters:
        g = let >> 1
        if g >= n or g < 0:
            raise WordError(f"letter outside alphabet: index {g}")
        entry = 2 + (let & 1)
        pile = piles[g]
        if pile and pile[-1] == 5 - entry:  # own inverse on top: cancel
            pile.pop()
            for j in noncommuters[g]:
                piles[j].pop()
        else:
            pile.append(entry)
            for j in noncommuters[g]:
                piles[j].append(0)

    # depile: least available generator first = lex-least linear extension
    fronts = [0] * n
    remaining = sum(1 for p in piles for e in p if e)
    out = []
    while remaining:
        for g in range(n):
            pile = piles[g]
            if fronts[g] < len(pile) and pile[fronts[g]]:
                out.append(2 * g + (pile[fronts[g]] - 2))
                fronts[g] += 1
                for j in noncommuters[g]:
                    fronts[j] += 1
                remaining -= 1
                break
    return tuple(out)


# ---------------------------------------------------------------------------
# traces


class Trace:
    """A group element, held in canonical (lex-least reduced) form."""

    __slots__ = ("graph", "word", "_hash")

    def __init__(self, graph: DefiningGraph, word: tuple[int, ...], *, _canonical: bool = False):
        self.graph = graph
        self.word = word if _canonical else pile_reduce(word, graph)
        self._hash = hash(self.word)

    # -- construction -------------------------------------------------------

    @classmethod
    def identity(cls, graph: DefiningGraph) -> "Trace":
        return cls(graph, (), _canonical=True)

    @classmethod
    def from_str(cls, text: str, graph: DefiningGraph) -> "Trace":
        return cls(graph, parse_word(text, graph))

    @classmethod
    def generator(cls, graph: DefiningGraph, name: str, sign: int = 1) -> "Trace":
        return cls(graph, (letter(graph.index[name], sign),), _canonical=True)

    # -- basics --------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Trace)
            and self.word == other.word
            and (self.graph is other.graph or self.graph == other.graph)
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Trace({self.as_str()!r})"

    def as_str(self) -> str:
        return format_word(self.word, self.graph)

    def _require_same(self, other: "Trace") -> None:
        if self.graph is not other.graph and self.graph != other.graph:
            raise WordError("mismatched defining graphs")

    # -- group operations -----------------------------------------------------

    def __mul__(self, other: "Trace") -> "Trace":
        self._require_same(other)
        return Trace(self.graph, pile_reduce(self.word + other.word, self.graph), _canonical=True)

    def __invert__(self) -> "Trace":
        rev = tuple(let ^ 1 for let in reversed(self.word))
        # a reversed reduced word is reduced; re-pile only to re-linearise
        return Trace(self.graph, pile_reduce(rev, self.graph), _canonical=True)

    def is_identity(self) -> bool:
        return not self.word

    def heap(self) -> Poset:
        """The heap order on letter positions of the canonical word."""
        return _heap_of(self.graph, self.word)

    # -- geodesic combinatorics ------------------------------------------------

    def dist(self, other: "Trace") -> int:
        self._require_same(other)
        return len((~self * other).word)

    def front_letters(self) -> dict[int, int]:
        """Letters at heap-minimal positions: {letter: position} (one per generator)."""
        return _front_letters(self.graph, self.word)

    def prefix_meet(self, other: "Trace") -> "Trace":
        """Longest common prefix: the median of (identity, self, other)."""
        self._require_same(other)
        g = self.graph
        xs, ys = list(self.word), list(other.word)
        out: list[int] = []
        while True:
            fx = _front_letters_list(g, xs)
            fy = _front_letters_list(g, ys)
            common = [let for let in fx if let in fy]
            if not common:
                break
            let = min(common)
            out.append(let)
            xs.pop(fx[let])
            ys.pop(fy[let])
        return Trace(g, pile_reduce(out, g), _canonical=True)

    def coset_rep(self, gens_mask: int) -> "Trace":
        """Minimal-length representative of self * <generators in gens_mask>.

        Strips heap-maximal letters whose generator lies in the subset, to a
        fixed point.  (Right multiplication can only ever cancel letters that
        are maximal at the time, so this reaches the unique shortest element.)
        """
        g = self.graph
        dep = g.dep_bits
        w = list(self.word)
        while True:
            hit = -1
            for i in range(len(w) - 1, -1, -1):
                gi = w[i] >> 1
                if not (gens_mask >> gi) & 1:
                    continue
                di = dep[gi]
                if all(not (di >> (w[j] >> 1)) & 1 for j in range(i + 1, len(w))):
                    hit = i
                    break
            if hit < 0:
                return Trace(g, pile_reduce(w, g), _canonical=True)
            w.pop(hit)

    def in_parabolic(self, gens_mask: int) -> bool:
        """True when every letter's generator lies in the subset."""
        return all((gens_mask >> (let >> 1)) & 1 for let in self.word)

    def support_mask(self) -> int:
        m = 0
        for let in self.word:
            m |= 1 << (let >> 1)
        return m


def gens_mask(graph: DefiningGraph, names: Iterable[str]) -> int:
    m = 0
    for v in names:
        m |= 1 << graph.index[v]
    return m


def _front_letters_list(graph: DefiningGraph, w: list[int]) -> dict[int, int]:
    dep = graph.dep_bits
    out: dict[int, int] = {}
    for i, let in enumerate(w):
        gi = let >> 1
        di = dep[gi]
        if all(not (di >> (w[j] >> 1)) & 1 for j in range(i)):
            out[let] = i
    return out


def _front_letters(graph: DefiningGraph, word: tuple[int, ...]) -> dict[int, int]:
    return _front_letters_list(graph, list(word))


@lru_cache(maxsize=65536)
def _heap_cached(key: tuple, word: tuple[int, ...]) -> Poset:
    graph: DefiningGraph = _heap_graphs[key]
    dep = graph.dep_bits
    return Poset.from_dependence(word, lambda a, b: (dep[a >> 1] >> (b >> 1)) & 1)


_heap_graphs: dict[tuple, DefiningGraph] = {}


def _heap_of(graph: DefiningGraph, word: tuple[int, ...]) -> Poset:
    key = (graph.vertices, graph.edges)
    _heap_graphs.setdefault(key, graph)
    return _heap_cached(key, word)

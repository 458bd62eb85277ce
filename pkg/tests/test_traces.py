"""Normal forms, heaps and the coset/meet machinery.

The oracle used throughout: the rewriting system "swap adjacent commuting
letters, delete adjacent inverse pairs" is complete for these groups, so an
exhaustive closure under both moves finds every equivalent word.  The
canonical form is then the lex-least among the shortest ones, computed here
with no reference to the piling algorithm under test.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mqm.graphs import cycle_graph, free_graph, path_graph
from mqm.posets import Poset
from mqm.traces import (
    Trace,
    WordError,
    format_word,
    gen_of,
    gens_mask,
    inv_letter,
    letter,
    parse_word,
    pile_reduce,
    sign_of,
)

GRAPHS = {
    "f2": free_graph("a", "b"),
    "edge": path_graph("a", "b"),
    "p4": path_graph("a", "b", "c", "d"),
    "c4": cycle_graph("a", "b", "c", "d"),
}


def letters_commute(graph, x, y):
    return graph.adjacent(graph.vertices[gen_of(x)], graph.vertices[gen_of(y)])


def word_closure(word, graph):
    """Every word reachable by commuting swaps and free cancellations."""
    seen = {tuple(word)}
    todo = [tuple(word)]
    while todo:
        w = todo.pop()
        for i in range(len(w) - 1):
            if w[i] == inv_letter(w[i + 1]):
                r = w[:i] + w[i + 2:]
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
            elif letters_commute(graph, w[i], w[i + 1]):
                r = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
    return seen


def oracle_normal_form(word, graph):
    closure = word_closure(word, graph)
    shortest = min(len(w) for w in closure)
    return min(w for w in closure if len(w) == shortest)


def random_word(rng, graph, max_len):
    n = rng.randrange(max_len + 1)
    return tuple(rng.randrange(2 * graph.n) for _ in range(n))


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_pile_reduce_matches_rewriting_oracle(name):
    graph = GRAPHS[name]
    rng = random.Random(7)
    for _ in range(80):
        w = random_word(rng, graph, 8)
        assert pile_reduce(w, graph) == oracle_normal_form(w, graph)


def test_parse_and_format():
    g = GRAPHS["c4"]
    w = parse_word("a,b^-1,c,c,d^-1", g)
    assert w == (letter(0, 1), letter(1, -1), letter(2, 1), letter(2, 1), letter(3, -1))
    assert format_word(w, g) == "a,b^-1,c,c,d^-1"
    assert parse_word("", g) == ()
    assert format_word((), g) == ""
    with pytest.raises(WordError):
        parse_word("a,zz", g)
    with pytest.raises(WordError):
        parse_word("a^2", g)


def test_letter_codec():
    for gi in range(4):
        for s in (1, -1):
            let = letter(gi, s)
            assert gen_of(let) == gi
            assert sign_of(let) == s
            assert inv_letter(inv_letter(let)) == let
            assert gen_of(inv_letter(let)) == gi
            assert sign_of(inv_letter(let)) == -s


letter_lists = st.lists(st.integers(min_value=0, max_value=7), max_size=10)


def clamp(letters, graph):
    return [x % (2 * graph.n) for x in letters]


@settings(max_examples=120, deadline=None)
@given(letters=letter_lists, name=st.sampled_from(sorted(GRAPHS)))
def test_pile_reduce_is_idempotent_and_inverse_cancels(letters, name):
    graph = GRAPHS[name]
    letters = clamp(letters, graph)
    w = pile_reduce(letters, graph)
    assert pile_reduce(w, graph) == w
    back = tuple(inv_letter(x) for x in reversed(letters))
    assert pile_reduce(tuple(letters) + back, graph) == ()


@settings(max_examples=80, deadline=None)
@given(a=letter_lists, b=letter_lists, name=st.sampled_from(sorted(GRAPHS)))
def test_group_laws(a, b, name):
    graph = GRAPHS[name]
    x = Trace(graph, tuple(clamp(a, graph)))
    y = Trace(graph, tuple(clamp(b, graph)))
    assert (x * y) * ~y == x
    assert ~(x * y) == ~y * ~x
    assert len(x * y) <= len(x) + len(y)
    assert (len(x) + len(y) - len(x * y)) % 2 == 0
    e = Trace.identity(graph)
    assert x * e == x and e * x == x


@settings(max_examples=60, deadline=None)
@given(a=letter_lists, b=letter_lists, c=letter_lists, name=st.sampled_from(sorted(GRAPHS)))
def test_dist_is_a_left_invariant_metric(a, b, c, name):
    graph = GRAPHS[name]
    x, y, z = (Trace(graph, tuple(clamp(w, graph))) for w in (a, b, c))
    assert x.dist(y) == y.dist(x)
    assert x.dist(y) <= x.dist(z) + z.dist(y)
    assert (x.dist(y) == 0) == (x == y)
    assert (z * x).dist(z * y) == x.dist(y)


def test_heap_linear_extensions_are_exactly_the_reduced_expressions():
    # Every linear extension of the heap spells an equivalent reduced word,
    # and together they exhaust the swap-closure of the canonical form.
    rng = random.Random(19)
    for name in ("p4", "c4"):
        graph = GRAPHS[name]
        for _ in range(25):
            x = Trace(graph, random_word(rng, graph, 7))
            word = x.word
            spelled = {tuple(word[i] for i in ext) for ext in x.heap().linear_extensions()}
            closure = {w for w in word_closure(word, graph) if len(w) == len(word)}
            assert spelled == closure


def oracle_prefixes(x):
    """All prefixes of x: one per downset of its heap."""
    out = set()
    for mask in x.heap().downsets():
        letters = tuple(x.word[i] for i in range(len(x.word)) if (mask >> i) & 1)
        out.add(Trace(x.graph, letters))
    return out


def test_prefix_meet_matches_downset_oracle():
    rng = random.Random(3)
    for name in ("f2", "c4"):
        graph = GRAPHS[name]
        for _ in range(40):
            x = Trace(graph, random_word(rng, graph, 6))
            y = Trace(graph, random_word(rng, graph, 6))
            common = oracle_prefixes(x) & oracle_prefixes(y)
            best = max(len(t) for t in common)
            tops = [t for t in common if len(t) == best]
            assert len(tops) == 1  # the common prefixes have a single maximum
            m = x.prefix_meet(y)
            assert m == tops[0]
            # the meet is a median point for (1, x, y)
            e = Trace.identity(graph)
            assert e.dist(m) + m.dist(x) == e.dist(x)
            assert e.dist(m) + m.dist(y) == e.dist(y)


def test_coset_rep_is_the_shortest_coset_element():
    # Any strictly shorter element of x<a,c> would be x*p with |p| <= 2|x|,
    # so a parabolic ball of radius 6 settles words of length <= 3.
    rng = random.Random(11)
    graph = GRAPHS["c4"]
    mask = gens_mask(graph, ["a", "c"])
    par = {Trace.identity(graph)}
    frontier = set(par)
    for _ in range(6):
        nxt = set()
        for t in frontier:
            for gi in (0, 2):
                for s in (1, -1):
                    u = t * Trace.generator(graph, graph.vertices[gi], s)
                    if u not in par:
                        nxt.add(u)
        par |= nxt
        frontier = nxt
    for _ in range(10):
        x = Trace(graph, random_word(rng, graph, 3))
        rep = x.coset_rep(mask)
        coset = {x * p for p in par}
        shortest = min(len(t) for t in coset)
        assert len(rep) == shortest
        assert rep in coset
        assert (~rep * x).in_parabolic(mask)
        assert sum(1 for t in coset if len(t) == shortest) == 1


def test_in_parabolic_and_support():
    graph = GRAPHS["p4"]
    mask_ac = gens_mask(graph, ["a", "c"])
    t = Trace.from_str("a,c,a^-1", graph)
    assert len(t) == 3  # a and c do not commute on the path
    assert t.in_parabolic(mask_ac)
    assert not t.in_parabolic(gens_mask(graph, ["a"]))
    assert t.support_mask() == mask_ac
    assert Trace.identity(graph).in_parabolic(0)
    # adjacent letters do collapse: a b a^-1 = b
    assert Trace.from_str("a,b,a^-1", graph) == Trace.generator(graph, "b")


def test_from_str_canonicalizes():
    graph = GRAPHS["c4"]
    # b,a with a-b an edge: canonical order puts a first
    t = Trace.from_str("b,a", graph)
    assert t.as_str() == "a,b"
    assert Trace.from_str("a,a^-1", graph).is_identity()


# --- poset internals used by the heap and interval code -------------------


def brute_covers(p):
    out = []
    for i in range(p.n):
        for j in range(p.n):
            if p.lt(i, j) and not any(p.lt(i, k) and p.lt(k, j) for k in range(p.n)):
                out.append((i, j))
    return out


def test_poset_covers_and_chains():
    # divisibility on 1..10
    p = Poset.from_leq(10, lambda i, j: (j + 1) % (i + 1) == 0 and i != j)
    assert sorted(p.covers()) == sorted(brute_covers(p))
    covers = set(p.covers())
    for chain in p.cover_chains(3):
        assert all((chain[t], chain[t + 1]) in covers for t in range(2))
    # brute count of cover 3-chains
    want = sum(1 for a, b in covers for c, d in covers if b == c)
    assert len(p.cover_chains(3)) == want


def test_chain_is_isolated_brute():
    p = Poset.from_leq(6, lambda i, j: i < j and (i, j) != (2, 3))
    for chain in p.cover_chains(2) + p.cover_chains(3):
        i, j = chain[0], chain[-1]
        betw = {k for k in range(p.n) if p.lt(i, k) and p.lt(k, j)}
        assert p.chain_is_isolated(chain) == (betw == set(chain[1:-1]))


def test_downsets_and_extensions_counts():
    antichain = Poset([0, 0, 0])
    assert len(list(antichain.downsets())) == 8
    assert len(antichain.linear_extensions()) == 6
    chain = Poset([0, 1, 3])  # 0 < 1 < 2
    assert len(list(chain.downsets())) == 4
    assert chain.linear_extensions() == [(0, 1, 2)]
    assert chain.minimal() == [0] and chain.maximal() == [2]
    with pytest.raises(ValueError):
        Poset([0] * 10).linear_extensions(limit=100)

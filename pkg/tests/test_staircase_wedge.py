"""The two unboundedness counterexamples, checked against hand-rolled
enumeration oracles.

The oracles below recompute f_s from the definition -- count globally tight
nested pairs in the interval, signed by which half of the segment orbit they
fall in -- using their own membership tables and their own orbit tests, so
they share no code with the counting layer.
"""

from itertools import permutations, product

import pytest

from mqm.complexes import ModelError
from mqm.counting import ChainSegment, f_s, staircase_search

# --- staircase oracle ------------------------------------------------------
# halfspace = (coord, level, pos): pos means {v[coord] > level}


def s_member(v, h):
    c, lvl, pos = h
    return (v[c] > lvl) == pos


def s_box(levels, margin=4):
    lo = min(levels) - margin
    hi = max(levels) + margin
    return [(x, y) for x in range(lo, hi + 1) for y in range(max(x, lo), hi + 1)]


def s_contains(h, k, box):
    """h >= k as sets, decided on a box wide enough to witness any escape."""
    return all(s_member(v, h) for v in box if s_member(v, k))


def s_tight(h, k):
    box = s_box([h[1], k[1]])
    if h == k or not s_contains(h, k, box) or s_contains(k, h, box):
        return False
    lo, hi = min(h[1], k[1]) - 1, max(h[1], k[1]) + 1
    for m in ((c, lvl, pos) for c in (0, 1) for lvl in range(lo, hi + 1) for pos in (True, False)):
        if m == h or m == k:
            continue
        if s_contains(h, m, box) and s_contains(m, k, box) and not s_contains(m, h, box) \
                and not s_contains(k, m, box):
            return False
    return True


def s_interval_halfspaces(x, y):
    out = []
    for c in (0, 1):
        a, b = x[c], y[c]
        out += [(c, lvl, True) for lvl in range(a, b)]
        out += [(c, lvl, False) for lvl in range(b, a)]
    return out


def s_sign(pair):
    # the segment is (y>0, x>0); its reverse is the complement pair backwards
    (c1, l1, p1), (c2, l2, p2) = pair
    if l1 == l2 and (c1, p1, c2, p2) == (1, True, 0, True):
        return 1
    if l1 == l2 and (c1, p1, c2, p2) == (0, False, 1, False):
        return -1
    return 0


def s_oracle(x, y):
    hs = s_interval_halfspaces(x, y)
    return sum(s_sign((h, k)) for h in hs for k in hs if s_tight(h, k))


@pytest.fixture(scope="module")
def s_seg(stair_model):
    return ChainSegment.from_str(stair_model, "y>0,x>0")


def test_staircase_f_s_matches_oracle(stair_model, s_seg):
    pts = [(0, 0), (0, 2), (2, 2), (-1, 1), (1, 3), (-2, 0), (2, 4)]
    for x in pts:
        for y in pts:
            assert f_s(s_seg, x, y) == s_oracle(x, y), (x, y)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_staircase_coboundary_is_minus_n(stair_model, s_seg, n):
    x, y, z = (0, 0), (0, n), (n, n)
    lib = f_s(s_seg, y, z) - f_s(s_seg, x, z) + f_s(s_seg, x, y)
    orc = s_oracle(y, z) - s_oracle(x, z) + s_oracle(x, y)
    assert lib == orc == -n


def test_staircase_f_s_antisymmetric(stair_model, s_seg):
    pts = [(0, 0), (0, 3), (3, 3), (-2, 2), (1, 4)]
    for x in pts:
        for y in pts:
            assert f_s(s_seg, x, y) == -f_s(s_seg, y, x)


def test_staircase_orbit_sign(stair_model):
    m = stair_model
    s = (m.parse_halfspace("y>0"), m.parse_halfspace("x>0"))
    shifted = (m.parse_halfspace("y>7"), m.parse_halfspace("x>7"))
    assert m.chain_orbit_sign(s, shifted) == 1
    assert m.chain_orbit_sign(s, m.reverse_chain(shifted)) == -1
    skew = (m.parse_halfspace("y>1"), m.parse_halfspace("x>0"))
    assert m.chain_orbit_sign(s, skew) == 0


def test_staircase_segment_validation(stair_model):
    with pytest.raises(ModelError):
        ChainSegment.from_str(stair_model, "x>0,y>0")  # wrong nesting order
    with pytest.raises(ModelError):
        ChainSegment.from_str(stair_model, "y>0,x>-2")  # nested but not tight
    with pytest.raises(ModelError):
        stair_model.parse_halfspace("z>0")


def test_staircase_search_on_boxes(stair_model):
    # a box of side n+1 carries an interleaved staircase of length n
    for n in (2, 3):
        region = [(x, y) for x in range(n + 1) for y in range(x, n + 1)]
        res = staircase_search(stair_model, region)
        assert res.sigma_lower_bound == n
        assert not res.capped
        # and the witness really is a staircase
        h, k = res.witness_h, res.witness_k
        assert len(h) == len(k) == n


# --- wedge oracle ----------------------------------------------------------
# halfspace = (half, axis, inner): inner means {v[axis] == half}


def w_member(v, h):
    half, axis, inner = h
    return (v[axis] == half) == inner


def w_halfspaces(n):
    return [(half, axis, inner) for half in (-1, 1) for axis in range(n)
            for inner in (True, False)]


def w_vertices(n):
    minus = {tuple(p) for p in product((-1, 0), repeat=n)}
    plus = {tuple(p) for p in product((0, 1), repeat=n)}
    return sorted(minus | plus)


def w_contains(h, k, verts):
    return all(w_member(v, h) for v in verts if w_member(v, k))


def w_tight(h, k, n, verts):
    if h == k or not w_contains(h, k, verts) or w_contains(k, h, verts):
        return False
    for m in w_halfspaces(n):
        if m in (h, k):
            continue
        if w_contains(h, m, verts) and w_contains(m, k, verts) \
                and not w_contains(m, h, verts) and not w_contains(k, m, verts):
            return False
    return True


def w_orbit_sign(s, pair, n):
    # complementing flips the side (inner), not the cube (half)
    rev = tuple((half, axis, not inner) for half, axis, inner in reversed(s))
    for rho in permutations(range(n)):
        for tau in permutations(range(n)):
            def move(h):
                half, axis, inner = h
                perm = rho if half < 0 else tau
                return (half, perm[axis], inner)

            if tuple(move(h) for h in s) == pair:
                return 1
            if tuple(move(h) for h in rev) == pair:
                return -1
    return 0


def w_oracle(x, y, n):
    verts = w_vertices(n)
    hs = [h for h in w_halfspaces(n) if w_member(y, h) and not w_member(x, h)]
    s = ((-1, 0, False), (1, 0, True))
    total = 0
    for h in hs:
        for k in hs:
            if w_tight(h, k, n, verts):
                total += w_orbit_sign(s, (h, k), n)
    return total


@pytest.mark.parametrize("n", [2, 3])
def test_wedge_coboundary_is_minus_n_squared(n):
    from mqm.complexes import WedgeModel

    model = WedgeModel(n)
    seg = ChainSegment.from_str(model, "-0:out,+0:in")
    xm, z, xp = (-1,) * n, (0,) * n, (1,) * n
    lib = f_s(seg, z, xp) - f_s(seg, xm, xp) + f_s(seg, xm, z)
    orc = w_oracle(z, xp, n) - w_oracle(xm, xp, n) + w_oracle(xm, z, n)
    assert lib == orc == -(n * n)


def test_wedge_f_s_matches_oracle(wedge3):
    seg = ChainSegment.from_str(wedge3, "-0:out,+0:in")
    verts = wedge3.vertices()
    sample = verts[::3] + [(-1, -1, -1), (1, 1, 1)]
    for x in sample:
        for y in sample:
            assert f_s(seg, x, y) == w_oracle(x, y, 3), (x, y)


def test_wedge_orbit_sign_matches_oracle(wedge2):
    m = wedge2
    s = (m.parse_halfspace("-0:out"), m.parse_halfspace("+0:in"))
    s_raw = ((-1, 0, False), (1, 0, True))
    hs = m.halfspaces()
    for h in hs:
        for k in hs:
            if h.hyperplane() == k.hyperplane():
                continue
            got = m.chain_orbit_sign(s, (h, k))
            assert got == w_orbit_sign(s_raw, (tuple(h), tuple(k)), 2)


def test_wedge_vertex_counts():
    from mqm.complexes import WedgeModel

    for n in (1, 2, 3, 4):
        assert len(WedgeModel(n).vertices()) == 2 ** (n + 1) - 1
    with pytest.raises(ModelError):
        WedgeModel(5)


def test_wedge_f_s_is_group_invariant(wedge2):
    seg = ChainSegment.from_str(wedge2, "-0:out,+0:in")
    verts = wedge2.vertices()
    for g in wedge2.group_elements():
        for x in verts:
            for y in verts:
                gx, gy = wedge2.act_vertex(g, x), wedge2.act_vertex(g, y)
                assert f_s(seg, gx, gy) == f_s(seg, x, y)

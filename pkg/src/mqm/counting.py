"""Subword counting on free groups and the signed segment counts f_s.

The two halves mirror each other: H_w counts (possibly overlapping) copies of
a word w minus copies of w^-1 in reduced words of a free group, and f_s
counts translates of a tightly nested halfspace chain s minus translates of
its reverse inside H-intervals.  On trees they agree; everything downstream
(defect scans, witnesses, the cup-product primitive) is built from these two
counters.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .complexes import K_IN_H, TRANSVERSE, CubicalModel, ModelError, RaagModel
from .graphs import DefiningGraph
from .traces import Trace, WordError, format_word, gens_mask, inv_letter, letter, parse_word

# ---------------------------------------------------------------------------
# free-group subword counts


def _check_reduced(w: Sequence[int], name: str) -> None:
    for i in range(len(w) - 1):
        if w[i] == inv_letter(w[i + 1]):
            raise WordError(f"{name} is not freely reduced at position {i}")


def count_overlapping(w: Sequence[int], g: Sequence[int]) -> int:
    """C_w(g): occurrences of w as a subword of g, overlaps allowed."""
    _check_reduced(w, "w")
    _check_reduced(g, "g")
    if not w:
        raise WordError("w must be nonempty")
    w = tuple(w)
    g = tuple(g)
    return sum(1 for i in range(len(g) - len(w) + 1) if g[i : i + len(w)] == w)


def count_nonoverlapping(w: Sequence[int], g: Sequence[int]) -> int:
    """c_w(g): maximal number of pairwise non-overlapping occurrences.

    Greedy left-to-right is optimal here (interval scheduling by right
    endpoint); the tests cross-check against brute force on short words.
    """
    _check_reduced(w, "w")
    _check_reduced(g, "g")
    if not w:
        raise WordError("w must be nonempty")
    w = tuple(w)
    g = tuple(g)
    n, m = len(g), len(w)
    count = 0
    i = 0
    while i + m <= n:
        if g[i : i + m] == w:
            count += 1
            i += m
        else:
            i += 1
    return count


def inverse_word(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(inv_letter(let) for let in reversed(w))


def brooks_big(w: Sequence[int], g: Sequence[int]) -> int:
    """H_w(g) = C_w(g) - C_{w^-1}(g)."""
    return count_overlapping(w, g) - count_overlapping(inverse_word(w), g)


def brooks_small(w: Sequence[int], g: Sequence[int]) -> int:
    """h_w(g) = c_w(g) - c_{w^-1}(g)."""
    return count_nonoverlapping(w, g) - count_nonoverlapping(inverse_word(w), g)


def is_self_overlapping(w: Sequence[int]) -> bool:
    """True iff w = uvu for a nonempty u (i.e. w has a border)."""
    _check_reduced(w, "w")
    w = tuple(w)
    return any(w[:k] == w[-k:] for k in range(1, len(w) // 2 + 1))


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    """Stack reduction; correct whenever the letters generate a free subgroup."""
    out: list[int] = []
    for let in letters:
        if out and out[-1] == inv_letter(let):
            out.pop()
        else:
            out.append(let)
    return tuple(out)


def retract_to_parabolic(word: Sequence[int], graph: DefiningGraph, keep_mask: int) -> tuple[int, ...]:
    """Image of the word under the retraction killing generators outside the mask.

    Only valid when the kept generators are pairwise non-adjacent (the image
    is then a free group and stack reduction computes the normal form).
    """
    kept = [let for let in word if (keep_mask >> (let >> 1)) & 1]
    return free_reduce(kept)


# ---------------------------------------------------------------------------
# segments


def is_rigid(word: Sequence[int], graph: DefiningGraph) -> bool:
    """Reduced, and consecutive letters are equal or non-commuting."""
    if not word:
        return False
    for p, q in zip(word, word[1:]):
        if p == q:
            continue
        gp, gq = p >> 1, q >> 1
        if gp == gq:           # p, q^-1 of the same generator: cancels
            return False
        if (graph.adj_bits[gp] >> gq) & 1:
            return False
    return True


def rigid_words(graph: DefiningGraph, length: int) -> list[tuple[int, ...]]:
    """All rigid words of the exact length, in lexicographic letter order."""
    if length < 1:
        raise ValueError("length must be >= 1")
    alphabet = [letter(i, s) for i in range(graph.n) for s in (1, -1)]
    alphabet.sort()
    out: list[tuple[int, ...]] = []

    def grow(word: tuple[int, ...]) -> None:
        if len(word) == length:
            out.append(word)
            return
        last = word[-1]
        for let in alphabet:
            if let == last or (
                let >> 1 != last >> 1 and not (graph.adj_bits[last >> 1] >> (let >> 1)) & 1
            ):
                grow(word + (let,))

    for let in alphabet:
        grow((let,))
    return out


def rigid_words_upto(graph: DefiningGraph, max_length: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for l in range(1, max_length + 1):
        out.extend(rigid_words(graph, l))
    return out


class WordSegment:
    """A tightly nested chain class on a group-on-itself model, named by its
    label word.

    Only rigid words are admitted: for those, a realizable chain with the
    right labels is automatically a translate of the segment (unique-geodesic
    rigidity), so the orbit test is a label comparison.
    """

    def __init__(self, model: RaagModel, word: Sequence[int]):
        if not isinstance(model, RaagModel):
            raise ModelError("word segments live on group-on-itself models")
        word = tuple(word)
        if not is_rigid(word, model.graph):
            raise WordError(
                "segment word must be rigid "
                "(reduced, consecutive letters equal or non-commuting)"
            )
        self.model = model
        self.word = word
        self.rev_word = inverse_word(word)
        # a reduced word never equals its reverse-inverse (the middle argument)
        assert self.rev_word != self.word

    @classmethod
    def from_str(cls, model: RaagModel, text: str) -> "WordSegment":
        return cls(model, parse_word(text, model.graph))

    @property
    def length(self) -> int:
        return len(self.word)

    def labels(self) -> tuple[int, ...]:
        return self.word

    def as_str(self) -> str:
        return format_word(self.word, self.model.graph)

    def __repr__(self) -> str:
        return f"WordSegment({self.as_str()!r})"

    def epsilon(self, iv, chain: Sequence[int]) -> int:
        labs = iv.labels(chain)
        if labs == self.word:
            return 1 if iv.realizable(chain) else 0
        if labs == self.rev_word:
            return -1 if iv.realizable(chain) else 0
        return 0

    def defect_bound(self) -> int | None:
        return defect_bound(self.model, self.length)


class ChainSegment:
    """A segment given by an explicit halfspace chain; the orbit test is the
    model's (used on the staircase and wedge models, whose groups are small
    or act by shifts)."""

    def __init__(self, model: CubicalModel, chain: Sequence):
        chain = tuple(chain)
        if not chain:
            raise ModelError("empty segment")
        for h, k in zip(chain, chain[1:]):
            if not model.tightly_nested(h, k):
                raise ModelError(
                    f"segment not tightly nested at {model.halfspace_str(h)} > "
                    f"{model.halfspace_str(k)}"
                )
        self.model = model
        self.chain = chain

    @classmethod
    def from_str(cls, model: CubicalModel, text: str) -> "ChainSegment":
        toks = [t.strip() for t in text.split(",") if t.strip()]
        return cls(model, tuple(model.parse_halfspace(t) for t in toks))

    @property
    def length(self) -> int:
        return len(self.chain)

    def as_str(self) -> str:
        return ",".join(self.model.halfspace_str(h) for h in self.chain)

    def __repr__(self) -> str:
        return f"ChainSegment({self.as_str()!r})"

    def epsilon(self, iv, chain: Sequence[int]) -> int:
        return self.model.chain_orbit_sign(self.chain, iv.chain_refs(chain))

    def defect_bound(self) -> int | None:
        return defect_bound(self.model, self.length)


Segment = WordSegment | ChainSegment


def segment_from_str(model: CubicalModel, text: str) -> Segment:
    if isinstance(model, RaagModel):
        return WordSegment.from_str(model, text)
    return ChainSegment.from_str(model, text)


def defect_bound(model: CubicalModel, length: int) -> int | None:
    """3(l-1) sigma d^l, when the model carries a certified sigma."""
    if model.sigma is None:
        return None
    return 3 * (length - 1) * model.sigma * model.dim**length


# ---------------------------------------------------------------------------
# the median counting quasimorphism


def f_s(segment: Segment, x, y) -> int:
    """Signed count of segment translates in [x, y]: sum of epsilon over
    covering chains of the interval."""
    iv = segment.model.interval(x, y)
    return sum(segment.epsilon(iv, c) for c in iv.cover_chains(segment.length))


def f_s_x(segment: Segment, x, gamma) -> int:
    return f_s(segment, x, segment.model.act_vertex(gamma, x))


def realizable_label_counts(iv, lengths: Sequence[int]) -> dict[int, Counter]:
    """Label histogram of realizable covering chains, per length.

    Lets one pair serve every word segment at once: f_s(x,y) =
    counts[l][w] - counts[l][reverse-inverse of w].
    """
    out: dict[int, Counter] = {}
    for l in lengths:
        ctr: Counter = Counter()
        for chain in iv.cover_chains(l):
            if iv.realizable(chain):
                ctr[iv.labels(chain)] += 1
        out[l] = ctr
    return out


def segments_through(model: CubicalModel, length: int, x, y, m) -> int:
    """Covering chains of [x,y] of the given length holding m in their
    interior (inside the first halfspace, outside the last)."""
    if model.dist(x, m) + model.dist(m, y) != model.dist(x, y):
        raise ModelError("m is not between x and y")
    iv = model.interval(x, y)
    refs = iv.refs()
    inside = [model.membership(m, h) for h in refs]
    return sum(
        1
        for chain in iv.cover_chains(length)
        if inside[chain[0]] and not inside[chain[-1]]
    )


# ---------------------------------------------------------------------------
# defect scans


@dataclass
class ScanResult:
    max_abs: int
    argmax: tuple | None
    bound: int | None
    bound_respected: bool | None
    triples_scanned: int
    runtime_ms: int

    def as_dict(self, model: CubicalModel | None = None) -> dict:
        arg = None
        if self.argmax is not None and model is not None:
            arg = [model.vertex_str(v) for v in self.argmax]
        elif self.argmax is not None:
            arg = list(self.argmax)
        return {
            "max": self.max_abs,
            "argmax": arg,
            "bound": self.bound,
            "bound_respected": self.bound_respected,
            "triples_scanned": self.triples_scanned,
            "runtime_ms": self.runtime_ms,
        }


def _pair_rows_job(args: tuple) -> list[list[int]]:
    """Worker: rebuild the model from its spec and fill f_s rows."""
    spec, seg_text, row_texts, col_texts = args
    from .complexes import model_from_spec

    model = model_from_spec(spec)
    seg = segment_from_str(model, seg_text)
    rows = [model.parse_vertex(t) for t in row_texts]
    cols = [model.parse_vertex(t) for t in col_texts]
    return [[0 if x == y else f_s(seg, x, y) for y in cols] for x in rows]


def pair_table(
    segment: Segment,
    rows: Sequence,
    cols: Sequence | None = None,
    *,
    workers: int = 1,
) -> np.ndarray:
    """f_s on rows x cols vertex pairs (exact, int64).

    With workers > 1 the rows are chunked across processes; the model is
    rebuilt in each worker from its spec, so results are deterministic and
    order-preserving.
    """
    model = segment.model
    if cols is None:
        cols = rows
    if workers > 1 and len(rows) > 2 * workers:
        from concurrent.futures import ProcessPoolExecutor

        spec = model.spec_dict()
        seg_text = segment.as_str()
        col_texts = [model.vertex_str(v) for v in cols]
        chunks = [list(rows[i::workers]) for i in range(workers)]
        jobs = [
            (spec, seg_text, [model.vertex_str(v) for v in ch], col_texts)
            for ch in chunks
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_pair_rows_job, jobs))
        table = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for w, res in enumerate(results):
            for local_i, row in enumerate(res):
                table[w + local_i * workers] = row
        return table
    table = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, x in enumerate(rows):
        for j, y in enumerate(cols):
            if x == y:
                continue
            table[i, j] = f_s(segment, x, y)
    return table


def coboundary_max(table: np.ndarray) -> tuple[int, tuple[int, int, int]]:
    """max |F(y,z) - F(x,z) + F(x,y)| over index triples, with the first
    maximizer in index order."""
    n = table.shape[0]
    best = -1
    arg = (0, 0, 0)
    for i in range(n):
        # delta[j, k] = F[j,k] - F[i,k] + F[i,j]
        d = np.abs(table - table[i][None, :] + table[i][:, None])
        m = int(d.max())
        if m > best:
            jk = np.unravel_index(int(d.argmax()), d.shape)
            best, arg = m, (i, int(jk[0]), int(jk[1]))
    return best, arg


def coboundary_scan(
    segment: Segment,
    triples: Sequence[tuple] | None = None,
    *,
    center=None,
    radius: int | None = None,
    pair_values: Callable | None = None,
    workers: int = 1,
) -> ScanResult:
    """Exact max of |delta^1 f_s| over a triple family.

    Either an explicit triple list or a ball (center/radius) is scanned; the
    ball mode tabulates f_s on pairs once and broadcasts.
    """
    t0 = time.monotonic()
    model = segment.model
    bound = segment.defect_bound()
    fval = pair_values if pair_values is not None else (lambda x, y: f_s(segment, x, y))

    if triples is not None:
        cache: dict[tuple, int] = {}

        def get(x, y):
            key = (x, y)
            if key not in cache:
                cache[key] = fval(x, y)
            return cache[key]

        best = -1
        arg = None
        for x, y, z in triples:
            val = abs(get(y, z) - get(x, z) + get(x, y))
            if val > best:
                best, arg = val, (x, y, z)
        scanned = len(triples)
    else:
        if radius is None:
            raise ValueError("need explicit triples or a radius")
        verts = model.ball(center, radius)
        table = pair_table(segment, verts, workers=workers)
        best, idx = coboundary_max(table)
        arg = tuple(verts[i] for i in idx)
        scanned = len(verts) ** 3

    ms = int((time.monotonic() - t0) * 1000)
    return ScanResult(
        max_abs=best,
        argmax=arg,
        bound=bound,
        bound_respected=None if bound is None else best <= bound,
        triples_scanned=scanned,
        runtime_ms=ms,
    )


# ---------------------------------------------------------------------------
# homogenization


@dataclass
class HomogenizationEstimate:
    value: Fraction          # f(gamma^N) / N
    lower: Fraction | None   # value - D/N when a defect bound D is known
    upper: Fraction | None
    N: int

    def as_dict(self) -> dict:
        return {
            "estimate": str(self.value),
            "lower": None if self.lower is None else str(self.lower),
            "upper": None if self.upper is None else str(self.upper),
            "N": self.N,
        }


def homogenize(f_of_power: Callable[[int], int | Fraction], N: int, defect=None) -> HomogenizationEstimate:
    """Fekete-style estimate of lim f(gamma^n)/n from the single value at N.

    `f_of_power(n)` must evaluate f at the n-th power of the group element.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    val = Fraction(f_of_power(N), N)
    lo = hi = None
    if defect is not None:
        lo, hi = val - Fraction(defect, N), val + Fraction(defect, N)
    return HomogenizationEstimate(val, lo, hi, N)


# ---------------------------------------------------------------------------
# witness constructions


@dataclass
class GammaNestedSegment:
    chain: tuple[int, ...]          # positions inside [x, gamma x]
    refs: tuple                     # the halfspaces themselves
    realizable: bool
    segment: Segment | None         # usable counting target when realizable

    @property
    def length(self) -> int:
        return len(self.chain)


def max_gamma_nested_segment(model: CubicalModel, gamma, x) -> GammaNestedSegment:
    """Longest covering chain (h_1, ..., h_l) of [x, gamma x] with
    h_l > gamma h_1, so that the chain and its gamma-translate concatenate.

    Only proper containment is demanded during the search; for a maximal
    chain the junction h_l > gamma h_1 is automatically tight, and this is
    asserted on the winner.
    """
    y = model.act_vertex(gamma, x)
    if x == y:
        raise ModelError("gamma fixes x: no interval to search")
    iv = model.interval(x, y)
    refs = iv.refs()
    for l in range(len(refs), 0, -1):
        hits = []
        for chain in iv.cover_chains(l):
            h_first = refs[chain[0]]
            h_last = refs[chain[-1]]
            if model.halfspace_relation(h_last, model.act(gamma, h_first)) == K_IN_H:
                hits.append(chain)
        if not hits:
            continue
        hits.sort(key=lambda c: (not iv.realizable(c), c))
        chain = hits[0]
        chain_refs = iv.chain_refs(chain)
        assert model.tightly_nested(chain_refs[-1], model.act(gamma, chain_refs[0]))
        realizable = iv.realizable(chain)
        seg: Segment | None = None
        if realizable:
            if isinstance(model, RaagModel):
                seg = WordSegment(model, iv.labels(chain))
            else:
                seg = ChainSegment(model, chain_refs)
        return GammaNestedSegment(chain, chain_refs, realizable, seg)
    raise ModelError("no gamma-nested chain in [x, gamma x]")


@dataclass
class SeparationWitness:
    w: tuple[int, ...]
    w_tilde: tuple[int, ...]
    v: int                   # encoded letter v^(sign of its first occurrence)
    v_prime: int             # generator index of the outside letter
    k: int
    w_prime: tuple[int, ...]
    checks: list[dict] = field(default_factory=list)
    all_pass: bool = True


def separating_witness(model: RaagModel, f_names: Sequence[str], w_text_or_word, verify_up_to: int = 10) -> SeparationWitness:
    """A word w' whose powers carry no translate of the w-segment although
    the retraction to <F> keeps the Brooks count of w growing.

    Follows the deterministic recipe: rotate a trailing v-run to the front,
    split around the first v-run, and plant a non-commuting outside letter
    inside it.
    """
    graph = model.graph
    if isinstance(w_text_or_word, str):
        w = parse_word(w_text_or_word, graph)
    else:
        w = tuple(w_text_or_word)
    f_idx = [graph.index[v] for v in f_names]
    if len(f_idx) < 2 or len(f_idx) >= graph.n:
        raise ModelError("need 2 <= |F| < |V(G)|")
    if not graph.is_independent(f_names):
        raise ModelError("F must be independent")
    if not is_rigid(w, graph):
        raise WordError("w must be rigid")
    if any((let >> 1) not in f_idx for let in w):
        raise WordError("w must be a word over F")
    if len(w) > 1 and w[0] == inv_letter(w[-1]):
        raise WordError("w must be cyclically reduced")
    if {let >> 1 for let in w} != set(f_idx):
        raise ModelError("every generator of F must occur in w")

    # v in F, v' outside F, non-adjacent -- first such pair in declaration order
    pair = None
    for vi in sorted(f_idx):
        for vpi in range(graph.n):
            if vpi in f_idx:
                continue
            if not (graph.adj_bits[vi] >> vpi) & 1:
                pair = (vi, vpi)
                break
        if pair:
            break
    if pair is None:
        raise ModelError(
            "no non-adjacent (v in F, v' outside F): <F> looks like a direct factor"
        )
    vi, vpi = pair

    # rotate any trailing run of v-letters to the front: w_tilde = v^m w v^-m
    t = len(w)
    while t > 0 and w[t - 1] >> 1 == vi:
        t -= 1
    if t == 0:
        raise ModelError("w is a power of v; need a second generator in play")
    w_tilde = w[t:] + w[:t]

    # split w_tilde = w1 V^k w2 around the first v-run (V = v or v^-1 as found)
    first = next(i for i, let in enumerate(w_tilde) if let >> 1 == vi)
    V = w_tilde[first]
    end = first
    while end < len(w_tilde) and w_tilde[end] == V:
        end += 1
    w1, k, w2 = w_tilde[:first], end - first, w_tilde[end:]
    vp = letter(vpi, 1)
    w_prime = (
        w1 + (inv_letter(V),) * k + (vp,) + (V,) * (3 * k) + (vp,) + (inv_letter(V),) * k + w2
    )
    assert is_rigid(w_prime, graph)

    seg = WordSegment(model, w)
    wp_trace = Trace(graph, w_prime)
    keep = gens_mask(graph, f_names)
    x = model.basepoint()
    wit = SeparationWitness(w, w_tilde, V, vpi, k, w_prime)
    power = Trace.identity(graph)
    for n in range(1, verify_up_to + 1):
        power = power * wp_trace
        fval = f_s(seg, x, power)
        brooks = brooks_big(w, retract_to_parabolic(power.word, graph, keep))
        ok = fval == 0 and brooks >= n - 1
        wit.checks.append({"n": n, "f_s_x": fval, "brooks_retract": brooks, "ok": ok})
        if not ok:
            wit.all_pass = False
    return wit


@dataclass
class DistanceWitness:
    a: int                   # encoded letters chosen by the selection rules
    b: int
    k: int
    witness: tuple[int, ...]
    checks: list[dict] = field(default_factory=list)
    all_pass: bool = True
    w2_in_w: bool = False


def brooks_distance_witness(graph: DefiningGraph, w_text, w2_text, verify_up_to: int = 6) -> DistanceWitness:
    """The word a^k w b^k separating H_w from H_{w'} on a free group.

    Selection follows the proof: a with "w does not start with a^-1, w' does
    not start or end with a"; b != a^-1 with "w does not end with b^-1, w'
    does not end with b"; k exceeding both lengths.
    """
    if graph.edges:
        raise ModelError("distance witnesses live on free groups (edgeless graph)")
    w = parse_word(w_text, graph) if isinstance(w_text, str) else tuple(w_text)
    w2 = parse_word(w2_text, graph) if isinstance(w2_text, str) else tuple(w2_text)
    _check_reduced(w, "w")
    _check_reduced(w2, "w'")
    if not w or not w2:
        raise WordError("both words must be nonempty")
    if w == w2:
        raise ModelError("w = w': the two quasimorphisms coincide, nothing to separate")
    alphabet = sorted(letter(i, s) for i in range(graph.n) for s in (1, -1))
    if len(alphabet) < 4:
        raise ModelError("need a free group of rank >= 2")

    a_sel = next(
        (
            s
            for s in alphabet
            if w[0] != inv_letter(s) and w2[0] != s and w2[-1] != s
        ),
        None,
    )
    if a_sel is None:
        raise ModelError("no admissible letter a for the witness")
    b_sel = next(
        (
            s
            for s in alphabet
            if s != inv_letter(a_sel) and w[-1] != inv_letter(s) and w2[-1] != s
        ),
        None,
    )
    if b_sel is None:
        raise ModelError("no admissible letter b for the witness")
    k = max(len(w), len(w2)) + 1
    witness = (a_sel,) * k + w + (b_sel,) * k
    _check_reduced(witness, "witness")
    assert witness[0] != inv_letter(witness[-1])  # cyclically reduced

    out = DistanceWitness(a_sel, b_sel, k, witness)
    out.w2_in_w = count_overlapping(w2, w) > 0
    power: tuple[int, ...] = ()
    for n in range(1, verify_up_to + 1):
        power = power + witness  # cyclically reduced: concatenation stays reduced
        h_w = brooks_big(w, power)
        h_w2 = brooks_big(w2, power)
        anti = count_overlapping(inverse_word(w), power)
        ok = h_w >= n and anti == 0
        out.checks.append({"n": n, "H_w": h_w, "H_w2": h_w2, "inverse_copies": anti, "ok": ok})
        if not ok:
            out.all_pass = False
    return out


# ---------------------------------------------------------------------------
# staircase search


@dataclass
class StaircaseSearchResult:
    sigma_lower_bound: int
    witness_h: tuple
    witness_k: tuple
    halfspaces_scanned: int
    region_size: int
    capped: bool
    runtime_ms: int

    def as_dict(self, model: CubicalModel) -> dict:
        return {
            "sigma_lower_bound": self.sigma_lower_bound,
            "witness_h": [model.halfspace_str(h) for h in self.witness_h],
            "witness_k": [model.halfspace_str(h) for h in self.witness_k],
            "halfspaces_scanned": self.halfspaces_scanned,
            "region_size": self.region_size,
            "capped": self.capped,
            "runtime_ms": self.runtime_ms,
        }


def staircase_search(model: CubicalModel, region: Sequence, bound: int = 8) -> StaircaseSearchResult:
    """Longest staircase among halfspaces dual to the region's edges.

    A staircase is a pair of proper chains (h_1 > ... > h_m, k_1 > ... > k_m)
    with h_i > k_i and h_i transverse to every earlier k_j.  The transversality
    condition reaches all the way back, so the search carries its history.
    Returns a certified lower bound for the staircase length.
    """
    t0 = time.monotonic()
    hs = model.halfspaces_in_region(region)
    rel_cache: dict[tuple, str] = {}

    def rel(a, b) -> str:
        key = (a, b)
        got = rel_cache.get(key)
        if got is None:
            got = model.halfspace_relation(a, b)
            rel_cache[key] = got
        return got

    pairs = [(h, k) for h in hs for k in hs if rel(h, k) == K_IN_H]
    best_len = 1 if pairs else 0
    best: list[tuple] = [pairs[0]] if pairs else []
    capped = False

    def extend(stack: list[tuple]) -> None:
        nonlocal best_len, best, capped
        if len(stack) > best_len:
            best_len, best = len(stack), list(stack)
        if len(stack) >= bound:
            capped = True
            return
        h_prev, k_prev = stack[-1]
        ks = [k for _, k in stack]
        for h2, k2 in pairs:
            if (
                rel(h_prev, h2) == K_IN_H
                and rel(k_prev, k2) == K_IN_H
                and all(rel(h2, kj) == TRANSVERSE for kj in ks)
            ):
                extend(stack + [(h2, k2)])

    for p in pairs:
        extend([p])

    ms = int((time.monotonic() - t0) * 1000)
    return StaircaseSearchResult(
        sigma_lower_bound=best_len,
        witness_h=tuple(h for h, _ in best),
        witness_k=tuple(k for _, k in best),
        halfspaces_scanned=len(hs),
        region_size=len(region),
        capped=capped,
        runtime_ms=ms,
    )


def certify_sigma(model: CubicalModel, radius: int, bound: int = 8) -> StaircaseSearchResult:
    """Run the staircase search on a ball and record the result on the model.

    The recorded sigma is a certified lower bound over the scanned region;
    finiteness for group-on-itself models is quoted, not computed.
    """
    res = staircase_search(model, model.ball(radius=radius), bound=bound)
    model.sigma = res.sigma_lower_bound
    model.sigma_region = f"ball radius {radius} around the basepoint"
    return res

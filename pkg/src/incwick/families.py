"""The five incomplete combinatorial families.

Families and their canonical encodings (all tuples, hashable, deterministic):

* P12     -- partitions of [n] into pairs and singletons: a tuple of blocks,
             each block an ascending tuple, blocks sorted by minimum.
             Singletons play the role of open blocks.
* INC12   -- the non-crossing members of P12 whose singletons are all outer.
* IP      -- pairs (blocks, opens): an arbitrary set partition together with
             a tuple of booleans marking the open blocks.
* INC     -- the members of IP with a non-crossing partition and all open
             blocks outer.
* IPRM    -- partial injections (lam, img): lam an ascending tuple of domain
             points, img the tuple of their images.  Equivalently a family of
             words: open words are linear orders, closed words are cycles.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import permutations, combinations
from math import factorial

from .poset import FinitePoset

PARTITION_FAMILIES = ("P12", "INC12", "IP", "INC")
FAMILIES = PARTITION_FAMILIES + ("IPRM",)

GENERATION_BOUND = {"P12": 8, "INC12": 8, "IP": 8, "INC": 8, "IPRM": 6}


# ---------------------------------------------------------------------------
# set partitions and non-crossing predicates
# ---------------------------------------------------------------------------

def set_partitions(n: int) -> list[tuple]:
    """All set partitions of [n] as canonical block tuples (restricted growth)."""
    if n == 0:
        return [()]
    out = []

    def grow(pos, blocks):
        if pos > n:
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(pos)
            grow(pos + 1, blocks)
            b.pop()
        blocks.append([pos])
        grow(pos + 1, blocks)
        blocks.pop()

    grow(1, [])
    return sorted(out)


def is_noncrossing(blocks) -> bool:
    bs = [b for b in blocks]
    for i in range(len(bs)):
        for j in range(i + 1, len(bs)):
            # two blocks cross iff their merged label word alternates
            # U..V..U..V, i.e. has four or more label runs
            merged = sorted([(p, 0) for p in bs[i]] + [(p, 1) for p in bs[j]])
            runs = 1
            for (_, a), (_, b) in zip(merged, merged[1:]):
                if a != b:
                    runs += 1
            if runs >= 4:
                return False
    return True


def block_depths(blocks) -> dict:
    """Depth of each block of a non-crossing partition (0 = outer)."""
    depths = {}
    for u in blocks:
        d = 0
        for v in blocks:
            if v != u and v[0] < u[0] and u[-1] < v[-1]:
                d += 1
        depths[u] = d
    return depths


def outer_blocks(blocks) -> tuple:
    d = block_depths(blocks)
    return tuple(b for b in blocks if d[b] == 0)


def is_interval_partition(blocks) -> bool:
    return all(b[-1] - b[0] + 1 == len(b) for b in blocks)


def is_nc_prime(blocks) -> bool:
    """Single outer block: the minimum and maximum of the ground set are linked."""
    ground = sorted(p for b in blocks for p in b)
    lo, hi = ground[0], ground[-1]
    return any(lo in b and hi in b for b in blocks)


def refines(sigma, pi) -> bool:
    owner = {}
    for i, b in enumerate(pi):
        for p in b:
            owner[p] = i
    return all(len({owner[p] for p in b}) == 1 for b in sigma)


def leq_ll(sigma, pi) -> bool:
    """sigma << pi: refinement with a covered restriction on every block."""
    if not refines(sigma, pi):
        return False
    for u in pi:
        restriction = tuple(b for b in sigma if b[0] in u)
        if not is_nc_prime(restriction):
            return False
    return True


def open_blocks_s_prime(sigma, pi_open_blocks) -> tuple:
    """Blocks of sigma containing the smallest element of an open block of pi."""
    minima = {v[0] for v in pi_open_blocks}
    return tuple(b for b in sigma if minima & set(b))


def restrict(blocks, points) -> tuple:
    pts = set(points)
    out = [tuple(p for p in b if p in pts) for b in blocks]
    return tuple(sorted(b for b in out if b))


def relabel(blocks, mapping) -> tuple:
    return tuple(sorted(tuple(sorted(mapping[p] for p in b)) for b in blocks))


def nc_partitions(n: int) -> list[tuple]:
    """Non-crossing partitions of [n] by first-block decomposition."""
    memo = {}

    def of_list(points):
        points = tuple(points)
        if points in memo:
            return memo[points]
        if not points:
            return [()]
        first, rest = points[0], points[1:]
        out = []
        for k in range(len(rest) + 1):
            for others in combinations(rest, k):
                block = (first,) + others
                gaps, prev = [], first
                for p in others:
                    gaps.append([q for q in rest if prev < q < p])
                    prev = p
                gaps.append([q for q in rest if q > prev])
                partials = [()]
                for gap in gaps:
                    partials = [a + b for a in partials for b in of_list(tuple(gap))]
                for tail in partials:
                    out.append(tuple(sorted((tuple(sorted(block)),) + tail)))
        memo[points] = sorted(out)
        return memo[points]

    return of_list(tuple(range(1, n + 1)))


def sub_nc_partitions(points) -> list[tuple]:
    """Non-crossing partitions of an arbitrary ascending ground tuple."""
    n = len(points)
    back = {i + 1: points[i] for i in range(n)}
    return [relabel(blocks, back) for blocks in nc_partitions(n)]


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def _check_bound(family: str, n: int):
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 0 or n > GENERATION_BOUND[family]:
        raise ValueError(f"{family} generation bound exceeded at n={n}")


def generate(family: str, n: int) -> list:
    """Complete duplicate-free element list in deterministic order."""
    _check_bound(family, n)
    if family == "P12":
        return [p for p in set_partitions(n) if all(len(b) <= 2 for b in p)]
    if family == "INC12":
        return [p for p in generate("P12", n) if _inc12_member(p)]
    if family == "IP":
        out = []
        for blocks in set_partitions(n):
            for opens in _open_flag_choices(len(blocks)):
                out.append((blocks, opens))
        return sorted(out)
    if family == "INC":
        out = []
        for blocks in set_partitions(n):
            if not is_noncrossing(blocks):
                continue
            depths = block_depths(blocks)
            for opens in _open_flag_choices(len(blocks)):
                if all(depths[b] == 0 for b, o in zip(blocks, opens) if o):
                    out.append((blocks, opens))
        return sorted(out)
    # IPRM
    points = range(1, n + 1)
    out = []
    for k in range(n + 1):
        for lam in combinations(points, k):
            for img in permutations(points, k):
                out.append((lam, img))
    return sorted(out)


def _inc12_member(blocks) -> bool:
    if not is_noncrossing(blocks):
        return False
    depths = block_depths(blocks)
    return all(depths[b] == 0 for b in blocks if len(b) == 1)


def _open_flag_choices(k: int):
    for mask in range(1 << k):
        yield tuple(bool((mask >> i) & 1) for i in range(k))


def rank(family: str, x, n: int | None = None) -> int:
    """Number of open blocks (the grading)."""
    if family in ("P12", "INC12"):
        return sum(1 for b in x if len(b) == 1)
    if family in ("IP", "INC"):
        return sum(1 for o in x[1] if o)
    if n is None:
        raise ValueError("IPRM rank needs n")
    return n - len(x[0])


# ---------------------------------------------------------------------------
# order relations
# ---------------------------------------------------------------------------

def leq(family: str, x, y, n: int | None = None) -> bool:
    if family in ("P12", "INC12"):
        pairs_x = {b for b in x if len(b) == 2}
        return pairs_x <= set(y)
    if family in ("IP", "INC"):
        bx, ox = x
        by, oy = y
        closed_y = {b for b, o in zip(by, oy) if not o}
        owner = {}
        for i, b in enumerate(by):
            for p in b:
                owner[p] = i
        for b, o in zip(bx, ox):
            if not o:
                if b not in closed_y:
                    return False
            elif len({owner[p] for p in b}) != 1:
                return False
        return True
    lam_x, img_x = x
    lam_y, img_y = y
    fx = dict(zip(lam_x, img_x))
    fy = dict(zip(lam_y, img_y))
    return all(p in fy and fy[p] == q for p, q in fx.items())


def _leq_fast(family: str, elements):
    """Precomputed comparator for bulk poset construction."""
    if family in ("P12", "INC12"):
        pairs = {x: frozenset(b for b in x if len(b) == 2) for x in elements}
        blocks = {x: frozenset(x) for x in elements}
        return lambda x, y: pairs[x] <= blocks[y]
    if family in ("IP", "INC"):
        closed = {}
        opens = {}
        owner = {}
        for x in elements:
            bx, ox = x
            closed[x] = frozenset(b for b, o in zip(bx, ox) if not o)
            opens[x] = tuple(b for b, o in zip(bx, ox) if o)
            owner[x] = {p: i for i, b in enumerate(bx) for p in b}

        def cmp(x, y):
            if not closed[x] <= closed[y]:
                return False
            own = owner[y]
            for b in opens[x]:
                head = own[b[0]]
                if any(own[p] != head for p in b[1:]):
                    return False
            return True

        return cmp
    graphs = {x: frozenset(zip(x[0], x[1])) for x in elements}
    return lambda x, y: graphs[x] <= graphs[y]


_POSET_CACHE: dict[tuple, FinitePoset] = {}


def poset(family: str, n: int) -> FinitePoset:
    key = (family, n)
    if key not in _POSET_CACHE:
        elements = generate(family, n)
        _POSET_CACHE[key] = FinitePoset(elements, _leq_fast(family, elements))
    return _POSET_CACHE[key]


def bottom(family: str, n: int):
    if family in ("P12", "INC12"):
        return tuple((i,) for i in range(1, n + 1))
    if family in ("IP", "INC"):
        return (tuple((i,) for i in range(1, n + 1)), (True,) * n)
    return ((), ())


# ---------------------------------------------------------------------------
# closed-form Mobius functions mu(bottom, x)
# ---------------------------------------------------------------------------

def mobius_closed(family: str, x, n: int | None = None) -> int:
    if family == "P12":
        return (-1) ** sum(1 for b in x if len(b) == 2)
    if family == "INC12":
        depths = block_depths(x)
        pairs = [b for b in x if len(b) == 2]
        if any(depths[b] != 0 for b in pairs):
            return 0
        return (-1) ** len(pairs)
    if family == "IP":
        blocks, opens = x
        size = sum(len(b) for b in blocks)
        if any(len(b) != 1 for b, o in zip(blocks, opens) if not o):
            return 0
        n_open = sum(1 for o in opens if o)
        sign = (-1) ** (size - n_open)
        weight = 1
        for b, o in zip(blocks, opens):
            if o:
                weight *= factorial(len(b) - 1)
        return sign * weight
    if family == "INC":
        blocks, opens = x
        size = sum(len(b) for b in blocks)
        if not is_interval_partition(blocks):
            return 0
        if any(len(b) != 1 for b, o in zip(blocks, opens) if not o):
            return 0
        return (-1) ** (size - sum(1 for o in opens if o))
    lam, _ = x
    return (-1) ** len(lam)


# ---------------------------------------------------------------------------
# split intervals, projections, embeddings
# ---------------------------------------------------------------------------

def split_intervals(split) -> list[tuple]:
    out, start = [], 1
    for s in split:
        out.append(tuple(range(start, start + s)))
        start += s
    return out


def _wedge_with_intervals(blocks, split):
    intervals = split_intervals(split)
    pieces = []
    for b in blocks:
        for j in intervals:
            piece = tuple(p for p in b if p in set(j))
            if piece:
                pieces.append(piece)
    return tuple(sorted(pieces))


def project_tau(family: str, x, split) -> object:
    if family in ("P12", "INC12"):
        return _wedge_with_intervals(x, split)
    if family in ("IP", "INC"):
        blocks, opens = x
        closed = {b for b, o in zip(blocks, opens) if not o}
        pieces = _wedge_with_intervals(blocks, split)
        return (pieces, tuple(p not in closed for p in pieces))
    lam, img = x
    intervals = split_intervals(split)
    home = {}
    for j, iv in enumerate(intervals):
        for p in iv:
            home[p] = j
    keep = [(p, q) for p, q in zip(lam, img) if home[p] == home[q]]
    keep.sort()
    return (tuple(p for p, _ in keep), tuple(q for _, q in keep))


def alpha_embed(family: str, components, split) -> object:
    offsets = [0]
    for s in split:
        offsets.append(offsets[-1] + s)
    if family in ("P12", "INC12"):
        blocks = []
        for comp, off in zip(components, offsets):
            blocks.extend(tuple(p + off for p in b) for b in comp)
        return tuple(sorted(blocks))
    if family in ("IP", "INC"):
        tagged = []
        for comp, off in zip(components, offsets):
            for b, o in zip(comp[0], comp[1]):
                tagged.append((tuple(p + off for p in b), o))
        tagged.sort()
        return (tuple(b for b, _ in tagged), tuple(o for _, o in tagged))
    lam, img = [], []
    for comp, off in zip(components, offsets):
        lam.extend(p + off for p in comp[0])
        img.extend(q + off for q in comp[1])
    order = sorted(range(len(lam)), key=lambda i: lam[i])
    return (tuple(lam[i] for i in order), tuple(img[i] for i in order))


def is_incomplete_derangement(x, split) -> bool:
    """No domain point maps inside its own split interval."""
    lam, img = x
    home = {}
    for j, iv in enumerate(split_intervals(split)):
        for p in iv:
            home[p] = j
    return all(home[p] != home[q] for p, q in zip(lam, img))


# ---------------------------------------------------------------------------
# the order isomorphism INC(n) ~ INC12(2n)
# ---------------------------------------------------------------------------

def inc_to_inc12(x) -> tuple:
    """Encode on {1,1',...,n,n'} ~ [2n]: i -> 2i-1, i' -> 2i."""
    blocks, opens = x
    out = []
    for b, o in zip(blocks, opens):
        chain = list(b)
        k = len(chain)
        if o:
            out.append((2 * chain[0] - 1,))
            out.append((2 * chain[-1],))
        else:
            out.append(tuple(sorted((2 * chain[0] - 1, 2 * chain[-1]))))
        for j in range(k - 1):
            out.append(tuple(sorted((2 * chain[j], 2 * chain[j + 1] - 1))))
    return tuple(sorted(out))


def inc12_to_inc(y, n: int) -> tuple:
    """Inverse of inc_to_inc12 on the full image INC12(2n)."""
    links = {}
    closing = {}
    singles = set()
    for b in y:
        if len(b) == 1:
            singles.add(b[0])
            continue
        a, c = b
        if a % 2 == 0 and c % 2 == 1:
            links[a // 2] = (c + 1) // 2
        elif a % 2 == 1 and c % 2 == 0:
            closing[(a + 1) // 2] = c // 2
        else:
            raise ValueError("not in the image of the encoding")
    incoming = set(links.values())
    blocks, opens = [], []
    seen = set()
    for start in range(1, n + 1):
        if start in incoming or start in seen:
            continue
        chain = [start]
        while chain[-1] in links:
            chain.append(links[chain[-1]])
        seen.update(chain)
        lo, hi = chain[0], chain[-1]
        if closing.get(lo) == hi:
            opens.append(False)
        elif 2 * lo - 1 in singles and 2 * hi in singles:
            opens.append(True)
        else:
            raise ValueError("not in the image of the encoding")
        blocks.append(tuple(chain))
    order = sorted(range(len(blocks)), key=lambda i: blocks[i])
    return (tuple(blocks[i] for i in order), tuple(opens[i] for i in order))


# ---------------------------------------------------------------------------
# word model of partial injections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WordDecomposition:
    """Orbit words of a partial injection.

    Open words are linear; closed words are cycles stored in the rotation
    that ends at the numerically largest letter.
    """

    open_words: tuple
    closed_words: tuple


def iprm_to_words(x, n: int) -> WordDecomposition:
    lam, img = x
    f = dict(zip(lam, img))
    targets = set(img)
    opens, closeds = [], []
    seen = set()
    for start in range(1, n + 1):
        if start in targets or start in seen:
            continue
        chain = [start]
        while chain[-1] in f:
            chain.append(f[chain[-1]])
        seen.update(chain)
        opens.append(tuple(chain))
    for start in range(1, n + 1):
        if start in seen or start not in f:
            continue
        cycle = [start]
        while f[cycle[-1]] != start:
            cycle.append(f[cycle[-1]])
        seen.update(cycle)
        top = cycle.index(max(cycle))
        closeds.append(tuple(cycle[top + 1:] + cycle[:top + 1]))
    key = lambda w: max(w)
    return WordDecomposition(
        tuple(sorted(opens, key=key)), tuple(sorted(closeds, key=key))
    )


def words_to_iprm(words: WordDecomposition) -> tuple:
    pairs = []
    for w in words.open_words:
        pairs.extend(zip(w, w[1:]))
    for w in words.closed_words:
        pairs.extend(zip(w, w[1:]))
        pairs.append((w[-1], w[0]))
    pairs.sort()
    return (tuple(p for p, _ in pairs), tuple(q for _, q in pairs))


LETTER_CLASSES = (
    "valley",
    "closed_singleton",
    "double_rise",
    "double_fall",
    "cycle_max",
    "peak",
)


def letter_stats(x, n: int) -> dict:
    """Classify every letter of [n] into exactly one of the six classes.

    A missing neighbour (no predecessor / no successor in the word) counts as
    larger than the letter, so isolated points and the smaller ends of open
    words are valleys, while the largest letter appended to the end (start) of
    an open word is a double rise (double fall).
    """
    lam, img = x
    f = dict(zip(lam, img))
    finv = {q: p for p, q in f.items()}
    words = iprm_to_words(x, n)
    cycle_tops = {w[-1] for w in words.closed_words if len(w) >= 2}
    counts = dict.fromkeys(LETTER_CLASSES, 0)
    for w in range(1, n + 1):
        if f.get(w) == w:
            counts["closed_singleton"] += 1
            continue
        pred_up = w not in finv or finv[w] > w
        succ_up = w not in f or f[w] > w
        if pred_up and succ_up:
            counts["valley"] += 1
        elif succ_up:
            counts["double_rise"] += 1
        elif pred_up:
            counts["double_fall"] += 1
        elif w in cycle_tops:
            counts["cycle_max"] += 1
        else:
            counts["peak"] += 1
    return counts


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render(family: str, x) -> str:
    if family in ("P12", "INC12"):
        return "{" + "|".join(" ".join(map(str, b)) for b in x) + "}"
    if family in ("IP", "INC"):
        blocks, opens = x
        parts = [" ".join(map(str, b)) + ("*" if o else "") for b, o in zip(blocks, opens)]
        return "{" + "|".join(parts) + "}"
    lam, img = x
    return "{" + " ".join(f"{p}->{q}" for p, q in zip(lam, img)) + "}"

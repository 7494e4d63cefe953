"""Coefficient algebras with a star-linear functional, and the algebra of
noncommuting symbols X(a) over them.

An algebra mode fixes how words of letters multiply and how the functional E
evaluates:

* free        -- E[w] is the formal moment symbol of w as written;
* commutative -- letters commute, words canonicalize by sorting;
* tracial     -- E is a trace, moment words canonicalize up to rotation;
* indicator   -- letters are indicator functions of unions of disjoint
                 measured atoms; products intersect and E is the measure,
                 always a rational number.

A letter may be flagged idempotent (a projection): powers collapse and E of
the letter is the formal parameter t.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .exact import Poly
from . import families

ZERO_WORD = object()  # sentinel for a word that multiplies to zero


class Mode:
    def __init__(
        self,
        kind: str,
        atoms: Mapping[str, Fraction] | None = None,
        letters: Mapping[str, Sequence[str]] | None = None,
        idempotent: Sequence[str] = (),
    ):
        if kind not in ("free", "commutative", "tracial", "indicator"):
            raise ValueError(f"unknown algebra mode {kind!r}")
        self.kind = kind
        self.atoms = {k: Fraction(v) for k, v in (atoms or {}).items()}
        self.letters = {k: frozenset(v) for k, v in (letters or {}).items()}
        self.idempotent = frozenset(idempotent)
        if kind == "indicator" and not self.atoms:
            raise ValueError("indicator mode needs measured atoms")

    def __repr__(self):
        return f"Mode({self.kind})"

    def region(self, letter) -> frozenset:
        if isinstance(letter, tuple):
            return frozenset(letter)
        return self.letters[letter]

    def canon_slot(self, word):
        """Canonical form of a word used as one argument of X or W.

        Returns a tuple of letters, or ZERO_WORD when the product vanishes.
        """
        word = tuple(word)
        if not word:
            raise ValueError("empty algebra word")
        if self.kind == "indicator":
            region = self.region(word[0])
            for letter in word[1:]:
                region &= self.region(letter)
            if not region:
                return ZERO_WORD
            return (tuple(sorted(region)),)
        if self.kind == "commutative":
            word = tuple(sorted(word))
        if self.idempotent:
            word = self._collapse(word)
        return word

    def _collapse(self, word):
        out = []
        for letter in word:
            if out and letter in self.idempotent and out[-1] == letter:
                continue
            out.append(letter)
        return tuple(out)

    def canon_moment(self, word):
        """Canonical word indexing the moment symbol E[word]."""
        word = tuple(word)
        if self.kind == "commutative":
            word = tuple(sorted(word))
        elif self.kind == "tracial":
            word = min(word[i:] + word[:i] for i in range(len(word)))
        if self.idempotent:
            word = self._collapse(word)
        return word

    def E(self, word) -> Poly:
        """The star-linear functional on one algebra word."""
        word = self.canon_slot(word)
        if word is ZERO_WORD:
            return Poly.zero
        if self.kind == "indicator":
            region = frozenset(word[0])
            return Poly.const(sum(self.atoms[a] for a in region))
        if len(word) == 1 and word[0] in self.idempotent:
            return Poly.param("t")
        return Poly.moment(self.canon_moment(word))

    def star_word(self, word):
        return tuple(reversed(word))

    def star_poly(self, p: Poly) -> Poly:
        """Star on coefficients: E[w]* = E[reversed w] (letters self-adjoint)."""
        return p.map_moment_words(lambda w: self.canon_moment(self.star_word(w)))


FREE = Mode("free")
COMMUTATIVE = Mode("commutative")
TRACIAL = Mode("tracial")


def indicator_mode(measures: Mapping[str, Fraction | int]) -> Mode:
    """One indicator letter per disjoint measured atom, named after it."""
    return Mode(
        "indicator",
        atoms=measures,
        letters={name: (name,) for name in measures},
    )


def projection_mode(letter: str = "a") -> Mode:
    """Commutative mode with a single idempotent letter; E[a^k] = t."""
    return Mode("commutative", idempotent=(letter,))


class Gamma:
    """Element of the unital algebra generated by symbols X(a).

    Stored as a map from products X(w1)...X(wk) -- encoded as a tuple of
    canonical slot words -- to Poly coefficients.  The empty product is the
    unit.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Poly] | None = None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def unit(cls) -> "Gamma":
        return cls({(): Poly.one})

    @classmethod
    def scalar(cls, coeff: Poly) -> "Gamma":
        return cls({(): coeff} if coeff else None)

    @classmethod
    def x(cls, mode: Mode, *words) -> "Gamma":
        """X(w1) X(w2) ... X(wk) for algebra words (letters or letter tuples)."""
        slots = []
        for w in words:
            if isinstance(w, str):
                w = (w,)
            slot = mode.canon_slot(w)
            if slot is ZERO_WORD:
                return cls()
            slots.append(slot)
        return cls({tuple(slots): Poly.one})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Gamma):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other) -> "Gamma":
        out = dict(self.terms)
        for xw, c in other.terms.items():
            new = out.get(xw, Poly.zero) + c
            if new:
                out[xw] = new
            else:
                out.pop(xw, None)
        return Gamma(out)

    def __neg__(self) -> "Gamma":
        return Gamma({xw: -c for xw, c in self.terms.items()})

    def __sub__(self, other) -> "Gamma":
        return self + (-other)

    def __mul__(self, other) -> "Gamma":
        if isinstance(other, (int, Fraction, Poly)):
            other = other if isinstance(other, Poly) else Poly.const(other)
            if not other:
                return Gamma()
            return Gamma({xw: c * other for xw, c in self.terms.items()})
        out: dict = {}
        for x1, c1 in self.terms.items():
            for x2, c2 in other.terms.items():
                xw = x1 + x2
                new = out.get(xw, Poly.zero) + c1 * c2
                if new:
                    out[xw] = new
                else:
                    del out[xw]
        return Gamma(out)

    __rmul__ = __mul__

    def star(self, mode: Mode) -> "Gamma":
        """Involution: reverses X-products, stars arguments and coefficients."""
        out: dict = {}
        for xw, c in self.terms.items():
            slots = []
            for w in reversed(xw):
                slot = mode.canon_slot(mode.star_word(w))
                if slot is ZERO_WORD:
                    slots = None
                    break
                slots.append(slot)
            if slots is None:
                continue
            key = tuple(slots)
            new = out.get(key, Poly.zero) + mode.star_poly(c)
            if new:
                out[key] = new
            else:
                del out[key]
        return Gamma(out)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for xw in sorted(self.terms):
            c = self.terms[xw].render()
            body = "".join(
                "X(" + "".join(map(_letter_name, w)) + ")" for w in xw
            )
            if not body:
                parts.append(c)
            elif c == "1":
                parts.append(body)
            else:
                parts.append(f"({c})*{body}" if " " in c else f"{c}*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return self.render()


def _letter_name(letter) -> str:
    if isinstance(letter, tuple):
        return "1{" + "&".join(letter) + "}"
    return str(letter)


def sort_x_words(g: Gamma) -> Gamma:
    """Canonicalize under a fully commutative X-algebra (sorts the factors
    of every X-product).  Only meaningful when that commutativity is part of
    the model, as in the partition-family representation theory."""
    out = Gamma()
    for xw, c in g.terms.items():
        out = out + Gamma({tuple(sorted(xw)): c})
    return out


# ---------------------------------------------------------------------------
# partitioned functionals and contractions
# ---------------------------------------------------------------------------

def block_functional(mode: Mode, words: Sequence, blocks) -> Poly:
    """Product over blocks of E[word of the block], positions ascending."""
    out = Poly.one
    for u in blocks:
        w = []
        for p in u:
            w.extend(words[p - 1])
        out = out * mode.E(tuple(w))
        if not out:
            return Poly.zero
    return out


def partitioned_E(mode: Mode, words: Sequence, blocks) -> Poly:
    """The functional E^pi for a non-crossing partition pi of the positions.

    In scalar coefficients the recursively nested definition unfolds to the
    plain product of block moments taken in increasing position order.
    """
    if not families.is_noncrossing(blocks):
        raise ValueError("partitioned functional needs a non-crossing partition")
    return block_functional(mode, words, blocks)


def contraction(mode: Mode, words: Sequence, blocks, opens) -> tuple:
    """Split a word tuple along an incomplete partition.

    Returns (prefactor, tensor): the product of closed-block moments and the
    tuple of open-block words, blocks ordered by their largest element.
    """
    order = sorted(range(len(blocks)), key=lambda i: blocks[i][-1])
    prefactor = Poly.one
    tensor = []
    for i in order:
        w = []
        for p in blocks[i]:
            w.extend(words[p - 1])
        if opens[i]:
            slot = mode.canon_slot(tuple(w))
            if slot is ZERO_WORD:
                return Poly.zero, ()
            tensor.append(slot)
        else:
            prefactor = prefactor * mode.E(tuple(w))
            if not prefactor:
                return Poly.zero, ()
    return prefactor, tuple(tensor)


def pattern_E(mode: Mode, a_words: Sequence, b_words: Sequence, blocks) -> Poly:
    """Mirrored-pair functional used by the inner product formula.

    Positions 1..n carry the a-words and positions n+1..2n the b-words in
    reversed order; each interval block U of [n] is joined with its mirror
    image 2n+1-U, giving a non-crossing pairing pattern of [2n].
    """
    if len(a_words) != len(b_words):
        raise ValueError("pattern functional needs equally long word tuples")
    n = len(a_words)
    if not families.is_interval_partition(blocks):
        raise ValueError("pattern functional needs an interval partition")
    sequence = list(a_words) + [b_words[n - 1 - i] for i in range(n)]
    mirrored = tuple(
        tuple(sorted(set(u) | {2 * n + 1 - p for p in u})) for u in blocks
    )
    return partitioned_E(mode, sequence, mirrored)

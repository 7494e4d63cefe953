"""Wick (Kailath-Segall) products: recursions, basis rewriting, states.

Each family defines W(a1 (x) ... (x) an) by a recursion that multiplies the
top term by X(a_{n+1}) on the right and subtracts lower-order corrections;
the q-deformed family instead builds from the left.  Solving the recursion
for the leading term rewrites any product of X's into the W basis, and the
state phi reads off the coefficient of the empty Wick product.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .exact import Poly
from .gamma import Gamma, Mode, ZERO_WORD, FREE, COMMUTATIVE, contraction
from . import families
from .families import iprm_to_words, letter_stats

WICK_FAMILIES = ("P12", "INC12", "IP", "INC", "IPRM", "IPRM_WEIGHTED", "MEIXNER", "Q")

SIX_FAMILIES = ("P12", "INC12", "IP", "INC", "IPRM", "MEIXNER")


def default_letters(n: int) -> list[str]:
    if n > 12:
        raise ValueError("letter alphabet exhausted")
    return [chr(ord("a") + i) for i in range(n)]


@dataclass
class Report:
    family: str
    identity: str
    mode: str
    n: int | None = None
    split: tuple | None = None
    passed: bool = True
    counterexample: str | None = None

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "identity": self.identity,
            "mode": self.mode,
            "pass": self.passed,
        }
        if self.n is not None:
            out["n"] = self.n
        if self.split is not None:
            out["split"] = list(self.split)
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out

    def __bool__(self):
        return self.passed


def _gamma_diff_summary(lhs: Gamma, rhs: Gamma) -> str | None:
    diff = lhs - rhs
    if not diff:
        return None
    xw = sorted(diff.terms)[0]
    return f"coefficient of {Gamma({xw: Poly.one}).render()} differs by {diff.terms[xw].render()}"


class WickSpace:
    """Expansion engine for one family in one algebra mode.

    Parameters (alpha, beta, beta1, beta2, t, gamma, q) default to the formal
    parameters; pass rationals or Poly values to specialize.
    """

    def __init__(self, family: str, mode: Mode, params: Mapping | None = None):
        if family not in WICK_FAMILIES:
            raise ValueError(f"unknown Wick family {family!r}")
        self.family = family
        self.mode = mode
        names = ("alpha", "beta", "beta1", "beta2", "t", "gamma", "q")
        self.p = {name: Poly.param(name) for name in names}
        for name, value in (params or {}).items():
            self.p[name] = value if isinstance(value, Poly) else Poly.const(value)
        self._expand_cache: dict = {}
        self._wick_cache: dict = {}

    # -- tensors ------------------------------------------------------------

    def tensor(self, words: Sequence) -> tuple | None:
        """Canonicalize a tuple of algebra words; None if some slot vanishes."""
        slots = []
        for w in words:
            if isinstance(w, str):
                w = (w,)
            slot = self.mode.canon_slot(w)
            if slot is ZERO_WORD:
                return None
            slots.append(slot)
        return tuple(slots)

    # -- the recursion ------------------------------------------------------

    def _corrections(self, T: tuple, b: tuple):
        """Terms subtracted in W(T + b) = W(T) X(b) - sum(corrections)."""
        fam, E, p = self.family, self.mode.E, self.p
        n = len(T)
        if fam == "P12":
            for i in range(n):
                yield E(T[i] + b), T[:i] + T[i + 1:]
        elif fam == "INC12":
            if n >= 1:
                yield E(T[-1] + b), T[:-1]
        elif fam == "IP":
            yield E(b), T
            for i in range(n):
                rest = T[:i] + T[i + 1:]
                yield Poly.one, rest + (T[i] + b,)
                yield E(T[i] + b), rest
        elif fam == "INC":
            yield E(b), T
            if n >= 1:
                yield Poly.one, T[:-1] + (T[-1] + b,)
                yield E(T[-1] + b), T[:-1]
        elif fam == "IPRM":
            yield E(b), T
            for i in range(n):
                rest = T[:i] + T[i + 1:]
                yield Poly.one, rest + (T[i] + b,)
                yield Poly.one, rest + (b + T[i],)
                yield E(T[i] + b), rest
            for i in range(n):
                for j in range(i + 1, n):
                    rest = tuple(T[k] for k in range(n) if k not in (i, j))
                    yield Poly.one, rest + (T[i] + b + T[j],)
                    yield Poly.one, rest + (T[j] + b + T[i],)
        elif fam == "IPRM_WEIGHTED":
            yield p["alpha"] * E(b), T
            for i in range(n):
                rest = T[:i] + T[i + 1:]
                yield p["beta1"], rest + (T[i] + b,)
                yield p["beta2"], rest + (b + T[i],)
                yield p["t"] * E(T[i] + b), rest
            for i in range(n):
                for j in range(i + 1, n):
                    rest = tuple(T[k] for k in range(n) if k not in (i, j))
                    yield p["gamma"], rest + (T[i] + b + T[j],)
                    yield p["gamma"], rest + (T[j] + b + T[i],)
        elif fam == "MEIXNER":
            yield p["alpha"] * E(b), T
            if n >= 1:
                yield p["beta"], T[:-1] + (T[-1] + b,)
                yield p["t"] * E(T[-1] + b), T[:-1]
            if n >= 2:
                yield p["gamma"], T[:-2] + (T[-2] + T[-1] + b,)
        else:
            raise ValueError("q family expands from the left")

    def _q_corrections(self, a: tuple, T: tuple):
        """Terms subtracted in W(a + T) = X(a) W(T) - sum(corrections)."""
        E, q = self.mode.E, self.p["q"]
        for i in range(len(T)):
            rest = T[:i] + T[i + 1:]
            qpow = q ** i
            yield qpow * E(a + T[i]), rest
            yield qpow, (a + T[i],) + rest
        yield E(a), T

    def _recanon(self, coeff: Poly, slots: tuple) -> tuple | None:
        out = []
        for w in slots:
            slot = self.mode.canon_slot(w)
            if slot is ZERO_WORD:
                return None
            out.append(slot)
        return tuple(out)

    def expand(self, T) -> Gamma:
        """W(T) written in the monomial basis, by literal recursion."""
        if T is None:
            return Gamma()
        T = tuple(T)
        if T in self._expand_cache:
            return self._expand_cache[T]
        if not T:
            result = Gamma.unit()
        elif self.family == "Q":
            a, rest = T[0], T[1:]
            result = Gamma.x(self.mode, a) * self.expand(rest)
            for coeff, T2 in self._q_corrections(a, rest):
                if coeff:
                    T2c = self._recanon(coeff, T2)
                    if T2c is not None:
                        result = result - coeff * self.expand(T2c)
        else:
            head, b = T[:-1], T[-1]
            result = self.expand(head) * Gamma.x(self.mode, b)
            for coeff, T2 in self._corrections(head, b):
                if coeff:
                    T2c = self._recanon(coeff, T2)
                    if T2c is not None:
                        result = result - coeff * self.expand(T2c)
        self._expand_cache[T] = result
        return result

    # -- W-basis rewriting ----------------------------------------------------

    def rmul_x(self, w: Mapping[tuple, Poly], word) -> dict:
        """W-basis form of (sum w) * X(word); not for the q family."""
        if self.family == "Q":
            raise ValueError("q family multiplies on the left")
        b = self.mode.canon_slot(word if not isinstance(word, str) else (word,))
        out: dict = {}
        if b is ZERO_WORD:
            return out

        def put(T, c):
            new = out.get(T, Poly.zero) + c
            if new:
                out[T] = new
            else:
                out.pop(T, None)

        for T, c in w.items():
            put(T + (b,), c)
            for coeff, T2 in self._corrections(T, b):
                if coeff:
                    T2c = self._recanon(coeff, T2)
                    if T2c is not None:
                        put(T2c, c * coeff)
        return out

    def lmul_x(self, word, w: Mapping[tuple, Poly]) -> dict:
        """W-basis form of X(word) * (sum w) for the q family."""
        a = self.mode.canon_slot(word if not isinstance(word, str) else (word,))
        out: dict = {}
        if a is ZERO_WORD:
            return out

        def put(T, c):
            new = out.get(T, Poly.zero) + c
            if new:
                out[T] = new
            else:
                out.pop(T, None)

        for T, c in w.items():
            put((a,) + T, c)
            for coeff, T2 in self._q_corrections(a, T):
                if coeff:
                    T2c = self._recanon(coeff, T2)
                    if T2c is not None:
                        put(T2c, c * coeff)
        return out

    def to_wick(self, g: Gamma) -> dict:
        """Rewrite a Gamma element in the W basis: map tensor -> coefficient."""
        total: dict = {}
        for xw, coeff in g.terms.items():
            if xw not in self._wick_cache:
                w = {(): Poly.one}
                if self.family == "Q":
                    for slot in reversed(xw):
                        w = self.lmul_x(slot, w)
                else:
                    for slot in xw:
                        w = self.rmul_x(w, slot)
                self._wick_cache[xw] = w
            for T, c in self._wick_cache[xw].items():
                new = total.get(T, Poly.zero) + coeff * c
                if new:
                    total[T] = new
                else:
                    del total[T]
        return total

    def phi(self, g: Gamma) -> Poly:
        """The state: phi(1) = 1 and phi(W) = 0 in positive degree."""
        return self.to_wick(g).get((), Poly.zero)

    # -- family objects as contractions --------------------------------------

    def object_contraction(self, element, words: Sequence, n: int) -> tuple:
        """(prefactor, tensor) of a family object acting on position words."""
        fam = self.family
        if fam in ("P12", "INC12"):
            blocks = element
            opens = tuple(len(b) == 1 for b in blocks)
            return contraction(self.mode, words, blocks, opens)
        if fam in ("IP", "INC", "MEIXNER"):
            blocks, opens = element
            return contraction(self.mode, words, blocks, opens)
        if fam in ("IPRM", "IPRM_WEIGHTED"):
            wd = iprm_to_words(element, n)
            prefactor = Poly.one
            for wrd in wd.closed_words:
                letters = []
                for pos in wrd:
                    letters.extend(words[pos - 1])
                prefactor = prefactor * self.mode.E(tuple(letters))
                if not prefactor:
                    return Poly.zero, ()
            slots = []
            merged = sorted(wd.open_words, key=max)
            for wrd in merged:
                letters = []
                for pos in wrd:
                    letters.extend(words[pos - 1])
                slot = self.mode.canon_slot(tuple(letters))
                if slot is ZERO_WORD:
                    return Poly.zero, ()
                slots.append(slot)
            return prefactor, tuple(slots)
        raise ValueError(f"no contraction convention for {fam}")


# ---------------------------------------------------------------------------
# identity verification
# ---------------------------------------------------------------------------

def _position_words(letters) -> list[tuple]:
    return [(l,) if isinstance(l, str) else tuple(l) for l in letters]


def _monomial(mode: Mode, letters) -> Gamma:
    return Gamma.x(mode, *letters)


def _poset_family(wick_family: str) -> str:
    return {"MEIXNER": "INC", "IPRM_WEIGHTED": "IPRM"}.get(wick_family, wick_family)


def verify_monomial(family: str, n: int, mode: Mode | None = None,
                    params: Mapping | None = None, letters=None) -> Report:
    """Check X(a1)...X(an) against the family's sum over incomplete objects."""
    mode = mode or FREE
    space = WickSpace(family, mode, params)
    letters = letters or default_letters(n)
    words = _position_words(letters)
    lhs = _monomial(mode, letters)
    rhs = Gamma()
    if family == "MEIXNER":
        from .meixner import coeff_C

        for element in families.generate("INC", n):
            pref, T = space.object_contraction(element, words, n)
            weight = coeff_C(element, space.p)
            rhs = rhs + (weight * pref) * space.expand(T)
    else:
        for element in families.generate(_poset_family(family), n):
            pref, T = space.object_contraction(element, words, n)
            rhs = rhs + pref * space.expand(T)
    bad = _gamma_diff_summary(lhs, rhs)
    return Report(family, "monomial", mode.kind, n=n, passed=bad is None,
                  counterexample=bad)


def interval_partitions(n: int) -> list[tuple]:
    """All interval partitions of [n], as canonical block tuples."""
    out = []
    for mask in range(1 << max(n - 1, 0)):
        blocks, start = [], 1
        for cut in range(1, n):
            if (mask >> (cut - 1)) & 1:
                blocks.append(tuple(range(start, cut + 1)))
                start = cut + 1
        blocks.append(tuple(range(start, n + 1)))
        out.append(tuple(blocks))
    return sorted(out)


def _x_product(mode: Mode, words: Sequence, blocks) -> Gamma:
    """X(a_V1) X(a_V2) ... with blocks ordered by largest element."""
    out = Gamma.unit()
    for u in sorted(blocks, key=lambda b: b[-1]):
        letters = []
        for p in u:
            letters.extend(words[p - 1])
        out = out * Gamma.x(mode, tuple(letters))
    return out


def verify_inversion(family: str, n: int, mode: Mode | None = None,
                     params: Mapping | None = None) -> Report:
    """Check the recursion's W against the claimed signed monomial sum."""
    mode = mode or (COMMUTATIVE if family == "IP" else FREE)
    space = WickSpace(family, mode, params)
    letters = default_letters(n)
    words = _position_words(letters)
    lhs = space.expand(space.tensor(letters))
    rhs = Gamma()

    def prefactor(blocks, opens) -> Poly:
        out = Poly.one
        for b, o in zip(blocks, opens):
            if not o:
                w = []
                for p in b:
                    w.extend(words[p - 1])
                out = out * mode.E(tuple(w))
        return out

    if family == "P12":
        for blocks in families.generate("P12", n):
            pairs = sum(1 for b in blocks if len(b) == 2)
            opens = tuple(len(b) == 1 for b in blocks)
            sign = Poly.const((-1) ** pairs)
            rhs = rhs + sign * prefactor(blocks, opens) * _x_product(
                mode, words, [b for b in blocks if len(b) == 1])
    elif family == "INC12":
        for blocks in families.generate("P12", n):
            if not families.is_interval_partition(blocks):
                continue
            pairs = sum(1 for b in blocks if len(b) == 2)
            opens = tuple(len(b) == 1 for b in blocks)
            sign = Poly.const((-1) ** pairs)
            rhs = rhs + sign * prefactor(blocks, opens) * _x_product(
                mode, words, [b for b in blocks if len(b) == 1])
    elif family == "IP":
        for blocks, opens in families.generate("IP", n):
            if any(len(b) != 1 for b, o in zip(blocks, opens) if not o):
                continue
            weight = Fraction(1)
            for b, o in zip(blocks, opens):
                if o:
                    weight *= factorial(len(b) - 1)
            sign = Poly.const((-1) ** (n - sum(opens)) * weight)
            rhs = rhs + sign * prefactor(blocks, opens) * _x_product(
                mode, words, [b for b, o in zip(blocks, opens) if o])
    elif family == "INC":
        for blocks, opens in families.generate("INC", n):
            if not families.is_interval_partition(blocks):
                continue
            if any(len(b) != 1 for b, o in zip(blocks, opens) if not o):
                continue
            sign = Poly.const((-1) ** (n - sum(opens)))
            rhs = rhs + sign * prefactor(blocks, opens) * _x_product(
                mode, words, [b for b, o in zip(blocks, opens) if o])
    elif family == "IPRM":
        for element in families.generate("IPRM", n):
            wd = iprm_to_words(element, n)
            sign = Poly.const((-1) ** len(element[0]))
            pref = Poly.one
            for wrd in wd.closed_words:
                # cycle words on the monomial side start at their largest
                # letter; the Wick-side convention ends at it.  The two
                # readings agree under a trace but only this one makes the
                # inversion an identity for noncommuting moments.
                wrd = (wrd[-1],) + wrd[:-1]
                letters_w = []
                for p in wrd:
                    letters_w.extend(words[p - 1])
                pref = pref * mode.E(tuple(letters_w))
            prod = Gamma.unit()
            for wrd in sorted(wd.open_words, key=max):
                letters_w = []
                for p in wrd:
                    letters_w.extend(words[p - 1])
                prod = prod * Gamma.x(mode, tuple(letters_w))
            rhs = rhs + sign * pref * prod
    elif family == "MEIXNER":
        from .meixner import inversion_coeffs

        coeffs = inversion_coeffs(space.p, n)
        o, c = coeffs.o, coeffs.c
        for blocks in interval_partitions(n):
            for opens in families._open_flag_choices(len(blocks)):
                weight = Poly.const((-1) ** (n - sum(opens)))
                for b, op in zip(blocks, opens):
                    weight = weight * (o if op else c)[len(b)]
                rhs = rhs + weight * prefactor(blocks, opens) * _x_product(
                    mode, words, [b for b, op in zip(blocks, opens) if op])
    else:
        raise ValueError(f"no inversion formula for {family!r}")
    bad = _gamma_diff_summary(lhs, rhs)
    return Report(family, "inversion", mode.kind, n=n, passed=bad is None,
                  counterexample=bad)


def verify_product(family: str, split: Sequence[int], mode: Mode | None = None,
                   params: Mapping | None = None) -> Report:
    """Check the product of per-interval W's against the inhomogeneous sum."""
    split = tuple(split)
    n = sum(split)
    if mode is None:
        # cycles spanning several intervals enter the derangement sum with
        # incompatible rotations unless moments are cyclically invariant,
        # so the permutation-family product needs a tracial functional
        from .gamma import TRACIAL

        mode = COMMUTATIVE if family == "IP" else (
            TRACIAL if family == "IPRM" else FREE)
    space = WickSpace(family, mode, params)
    letters = default_letters(n)
    words = _position_words(letters)
    lhs = Gamma.unit()
    for iv in families.split_intervals(split):
        lhs = lhs * space.expand(space.tensor([letters[p - 1] for p in iv]))

    def qualifies(element) -> bool:
        if family in ("P12", "INC12"):
            return all(len(b) == 1 for b in families.project_tau("P12", element, split))
        if family in ("IP", "INC"):
            blocks, opens = element
            wedge = families._wedge_with_intervals(blocks, split)
            if any(len(b) != 1 for b in wedge):
                return False
            return all(o for b, o in zip(blocks, opens) if len(b) == 1)
        return families.is_incomplete_derangement(element, split)

    rhs = Gamma()
    for element in families.generate(_poset_family(family), n):
        if not qualifies(element):
            continue
        pref, T = space.object_contraction(element, words, n)
        rhs = rhs + pref * space.expand(T)
    bad = _gamma_diff_summary(lhs, rhs)
    return Report(family, "product", mode.kind, split=split, passed=bad is None,
                  counterexample=bad)


def verify_weighted_iprm(n: int, mode: Mode | None = None,
                         params: Mapping | None = None) -> Report:
    """Monomial expansion of the five-parameter permutation recursion,
    weighted by the six letter statistics."""
    mode = mode or FREE
    space = WickSpace("IPRM_WEIGHTED", mode, params)
    letters = default_letters(n)
    words = _position_words(letters)
    lhs = _monomial(mode, letters)
    rhs = Gamma()
    weights = {
        "closed_singleton": space.p["alpha"],
        "double_rise": space.p["beta1"],
        "double_fall": space.p["beta2"],
        "cycle_max": space.p["t"],
        "peak": space.p["gamma"],
    }
    for element in families.generate("IPRM", n):
        stats = letter_stats(element, n)
        weight = Poly.one
        for cls, count in stats.items():
            if cls != "valley" and count:
                weight = weight * weights[cls] ** count
        pref, T = space.object_contraction(element, words, n)
        rhs = rhs + weight * pref * space.expand(T)
    bad = _gamma_diff_summary(lhs, rhs)
    return Report("IPRM_WEIGHTED", "weighted-monomial", mode.kind, n=n,
                  passed=bad is None, counterexample=bad)


def verify_commutative_iprm_rewrite(n: int) -> Report:
    """With commuting letters the permutation expansion collapses onto
    incomplete partitions with factorial block weights."""
    mode = COMMUTATIVE
    space = WickSpace("IPRM", mode)
    letters = default_letters(n)
    words = _position_words(letters)
    lhs = _monomial(mode, letters)
    rhs = Gamma()
    for blocks, opens in families.generate("IP", n):
        weight = Fraction(1)
        for b, o in zip(blocks, opens):
            weight *= factorial(len(b)) if o else factorial(len(b) - 1)
        pref, T = contraction(mode, words, blocks, opens)
        rhs = rhs + Poly.const(weight) * pref * space.expand(T)
    bad = _gamma_diff_summary(lhs, rhs)
    return Report("IPRM", "commutative-rewrite", mode.kind, n=n,
                  passed=bad is None, counterexample=bad)


# ---------------------------------------------------------------------------
# states, moments, cumulants
# ---------------------------------------------------------------------------

def state_phi(family: str, letters, mode: Mode | None = None,
              params: Mapping | None = None) -> Poly:
    mode = mode or FREE
    space = WickSpace(family, mode, params)
    return space.phi(_monomial(mode, letters))


def state_closed_sum(family: str, letters, mode: Mode | None = None,
                     params: Mapping | None = None) -> Poly:
    """Direct state oracle: sum over fully closed objects."""
    mode = mode or FREE
    n = len(letters)
    words = _position_words(letters)
    if family == "MEIXNER":
        from .meixner import meixner_moment

        space = WickSpace("MEIXNER", mode, params)
        return meixner_moment(words, space.p, mode)
    total = Poly.zero
    if family in ("P12", "INC12"):
        for blocks in families.generate(family, n):
            if any(len(b) != 2 for b in blocks):
                continue
            term = Poly.one
            for b in blocks:
                term = term * mode.E(words[b[0] - 1] + words[b[1] - 1])
            total = total + term
        return total
    if family in ("IP", "INC"):
        source = families.set_partitions(n) if family == "IP" else families.nc_partitions(n)
        from .gamma import block_functional

        for blocks in source:
            total = total + block_functional(mode, words, blocks)
        return total
    if family == "IPRM":
        for element in families.generate("IPRM", n):
            lam, _ = element
            if len(lam) != n:
                continue
            wd = iprm_to_words(element, n)
            term = Poly.one
            for wrd in wd.closed_words:
                letters_w = []
                for p in wrd:
                    letters_w.extend(words[p - 1])
                term = term * mode.E(tuple(letters_w))
            total = total + term
        return total
    raise ValueError(f"no closed-object state for {family!r}")


def _partition_poset(kind: str, n: int):
    from .poset import FinitePoset

    elements = families.set_partitions(n) if kind == "classical" else families.nc_partitions(n)
    return FinitePoset(elements, families.refines)


def cumulant(kind: str, family: str, n: int, mode: Mode | None = None,
             params: Mapping | None = None) -> Poly:
    """Joint cumulant K[X(a1), ..., X(an)] via Mobius inversion of moments.

    kind "classical" inverts over all set partitions, "free" over the
    non-crossing ones.
    """
    if kind not in ("classical", "free"):
        raise ValueError("cumulant kind must be classical or free")
    mode = mode or FREE
    space = WickSpace(family, mode, params)
    letters = default_letters(n)
    phi_cache: dict = {}

    def phi_of(positions) -> Poly:
        if positions not in phi_cache:
            phi_cache[positions] = space.phi(
                _monomial(mode, [letters[p - 1] for p in positions]))
        return phi_cache[positions]

    poset = _partition_poset(kind, n)
    top = (tuple(range(1, n + 1)),)
    total = Poly.zero
    for blocks in poset.elements:
        mu = poset.mobius(blocks, top)
        if not mu:
            continue
        term = Poly.const(mu)
        for u in blocks:
            term = term * phi_of(u)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# symmetry, traciality, positivity
# ---------------------------------------------------------------------------

def verify_adjoint(family: str, n: int, mode: Mode | None = None,
                   params: Mapping | None = None) -> Report:
    """W(a1 (x) ... (x) an)* = W(an (x) ... (x) a1).

    For the all-partitions family the natural representation has a fully
    commutative X-algebra, so X-products are compared up to reordering; for
    the permutation family cycle words enter through the functional, which
    must be tracial for the two rotation conventions to agree.
    """
    if mode is None:
        from .gamma import TRACIAL

        mode = COMMUTATIVE if family == "IP" else (
            TRACIAL if family == "IPRM" else FREE)
    space = WickSpace(family, mode, params)
    letters = default_letters(n)
    lhs = space.expand(space.tensor(letters)).star(mode)
    rhs = space.expand(space.tensor(list(reversed(letters))))
    if family in ("IP", "IPRM"):
        from .gamma import sort_x_words

        lhs, rhs = sort_x_words(lhs), sort_x_words(rhs)
    bad = _gamma_diff_summary(lhs, rhs)
    return Report(family, "adjoint", mode.kind, n=n, passed=bad is None,
                  counterexample=bad)


def verify_traciality(family: str, total_degree: int, trials: int = 20,
                      seed: int = 0, params: Mapping | None = None) -> Report:
    """phi(g h) = phi(h g) for random monomials g, h in tracial mode."""
    from .gamma import TRACIAL

    rng = random.Random(seed)
    space = WickSpace(family, TRACIAL, params)
    alphabet = default_letters(3)
    for _ in range(trials):
        k = rng.randint(1, total_degree - 1)
        m = rng.randint(1, total_degree - k)
        g = _monomial(TRACIAL, [rng.choice(alphabet) for _ in range(k)])
        h = _monomial(TRACIAL, [rng.choice(alphabet) for _ in range(m)])
        if space.phi(g * h) != space.phi(h * g):
            return Report(family, "traciality", "tracial",
                          passed=False,
                          counterexample=f"phi(gh) != phi(hg) for g={g.render()}, h={h.render()}")
    return Report(family, "traciality", "tracial")


def _det(matrix: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in matrix]
    k = len(m)
    det = Fraction(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, k):
            if m[r][col]:
                factor = m[r][col] * inv
                for c in range(col, k):
                    m[r][c] -= factor * m[col][c]
    return det


def gram_matrix(family: str, mode: Mode, degree: int, letters,
                params: Mapping | None = None) -> list[list[Fraction]]:
    """Gram matrix [phi(W(u)* W(v))] over tensors of total degree <= degree."""
    space = WickSpace(family, mode, params)
    tensors = [()]
    pool = [tensors]
    for _ in range(degree):
        pool.append([t + (l,) for t in pool[-1] for l in letters])
        tensors = tensors + pool[-1]
    gammas = [space.expand(space.tensor(t)) for t in tensors]
    stars = [g.star(mode) for g in gammas]
    size = len(tensors)
    gram = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            gram[i][j] = space.phi(stars[i] * gammas[j]).rational_value()
    return gram


def verify_positivity(family: str, mode: Mode, degree: int, letters,
                      params: Mapping | None = None) -> Report:
    gram = gram_matrix(family, mode, degree, letters, params)
    for k in range(1, len(gram) + 1):
        minor = _det([row[:k] for row in gram[:k]])
        if minor < 0:
            return Report(family, "positivity", mode.kind, n=degree, passed=False,
                          counterexample=f"leading principal minor {k} = {minor} < 0")
    return Report(family, "positivity", mode.kind, n=degree)

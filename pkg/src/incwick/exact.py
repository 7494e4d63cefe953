"""Exact scalar arithmetic: multivariate polynomials and truncated power series.

Every coefficient in this package is an element of the commutative ring
Q[alpha, beta, beta1, beta2, gamma, q, t, x][moment symbols], represented
sparsely with `fractions.Fraction` coefficients.  There is no floating point
anywhere.

A symbol is a tuple: ("p", name) for a formal parameter, or ("m", l1, l2, ...)
for the moment symbol E[l1 l2 ...] of a word in algebra letters.  Tuples
compare lexicographically, which fixes a canonical monomial order and makes
all rendering deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

PARAMETERS = ("alpha", "beta", "beta1", "beta2", "gamma", "q", "t", "x")

Scalar = Union[int, Fraction]


def param_symbol(name: str) -> tuple:
    if name not in PARAMETERS:
        raise ValueError(f"unknown parameter {name!r}")
    return ("p", name)


def moment_symbol(word: Sequence) -> tuple:
    if not word:
        raise ValueError("moment symbol needs a nonempty word")
    return ("m",) + tuple(word)


def _symbol_str(sym: tuple) -> str:
    if sym[0] == "p":
        return sym[1]
    return "E[" + "".join(_letter_str(l) for l in sym[1:]) + "]"


def _letter_str(letter) -> str:
    if isinstance(letter, tuple):
        # indicator-mode region: intersection of named atoms
        return "1{" + "&".join(letter) + "}" if letter else "1{}"
    return str(letter)


class Poly:
    """Sparse multivariate polynomial over Q in parameters and moment symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        # terms maps a sorted symbol tuple (the monomial) to a nonzero Fraction
        self.terms = dict(terms) if terms else {}

    @classmethod
    def const(cls, value: Scalar) -> "Poly":
        value = Fraction(value)
        return cls({(): value} if value else None)

    @classmethod
    def param(cls, name: str) -> "Poly":
        return cls({(param_symbol(name),): Fraction(1)})

    @classmethod
    def moment(cls, word: Sequence) -> "Poly":
        return cls({(moment_symbol(word),): Fraction(1)})

    zero = None  # set after class definition
    one = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_rational(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def rational_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {()}:
            raise ValueError(f"not a constant: {self}")
        return self.terms[()]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = out.get(mono, 0) + coeff
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                new = out.get(mono, 0) + c1 * c2
                if new:
                    out[mono] = new
                else:
                    del out[mono]
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one
        for _ in range(exponent):
            result = result * self
        return result

    def substitute(self, assignment: Mapping[tuple, "Poly | Scalar"]) -> "Poly":
        """Replace symbols by polynomials (or rationals); others are kept."""
        subs = {
            sym: (val if isinstance(val, Poly) else Poly.const(val))
            for sym, val in assignment.items()
        }
        result = Poly()
        for mono, coeff in self.terms.items():
            term = Poly.const(coeff)
            kept = []
            for sym in mono:
                if sym in subs:
                    term = term * subs[sym]
                else:
                    kept.append(sym)
            if kept:
                term = term * Poly({tuple(sorted(kept)): Fraction(1)})
            result = result + term
        return result

    def map_moment_words(self, fn) -> "Poly":
        """Rewrite every moment symbol's word through fn (canonicalization, star)."""
        out = Poly()
        for mono, coeff in self.terms.items():
            new_mono = []
            for sym in mono:
                if sym[0] == "m":
                    new_mono.append(moment_symbol(fn(sym[1:])))
                else:
                    new_mono.append(sym)
            out = out + Poly({tuple(sorted(new_mono)): coeff})
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            body = self._mono_str(mono)
            if body:
                mag = abs(coeff)
                head = body if mag == 1 else f"{mag}*{body}"
            else:
                head = str(abs(coeff))
            if not pieces:
                pieces.append(("-" if coeff < 0 else "") + head)
            else:
                pieces.append(("- " if coeff < 0 else "+ ") + head)
        return " ".join(pieces)

    @staticmethod
    def _mono_str(mono: tuple) -> str:
        if not mono:
            return ""
        factors = []
        i = 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            name = _symbol_str(mono[i])
            factors.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(factors)

    def __repr__(self):
        return self.render()


Poly.zero = Poly()
Poly.one = Poly.const(1)


def as_poly(value: "Poly | Scalar") -> Poly:
    return value if isinstance(value, Poly) else Poly.const(value)


class Series:
    """Truncated formal power series with Poly coefficients.

    Coefficients are exact; binary operations truncate to the smaller order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        coeffs = [as_poly(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be >= 0")
        coeffs = coeffs[: order + 1]
        coeffs += [Poly.zero] * (order + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)
        self.order = order

    @classmethod
    def constant(cls, value, order: int) -> "Series":
        return cls([as_poly(value)], order)

    @classmethod
    def z(cls, order: int) -> "Series":
        return cls([Poly.zero, Poly.one], order)

    def __getitem__(self, k: int) -> Poly:
        return self.coeffs[k] if k <= self.order else Poly.zero

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs, min(order, self.order))

    def agrees_with(self, other: "Series") -> bool:
        n = min(self.order, other.order)
        return all(self[k] == other[k] for k in range(n + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other) -> "Series":
        if not isinstance(other, Series):
            other = Series.constant(other, self.order)
        n = min(self.order, other.order)
        return Series([self[k] + other[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "Series":
        if not isinstance(other, Series):
            other = Series.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            other = as_poly(other)
            return Series([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [Poly.zero] * (n + 1)
        for i in range(n + 1):
            ci = self[i]
            if not ci:
                continue
            for j in range(n + 1 - i):
                cj = other[j]
                if cj:
                    out[i + j] = out[i + j] + ci * cj
        return Series(out, n)

    __rmul__ = __mul__

    def shift_up(self) -> "Series":
        """Multiply by z (order preserved, top coefficient dropped)."""
        return Series((Poly.zero,) + self.coeffs, self.order)

    def shift_down(self) -> "Series":
        """Divide by z; requires zero constant term."""
        if self.coeffs[0]:
            raise ValueError("shift_down needs zero constant term")
        return Series(self.coeffs[1:], self.order - 1)

    def inverse(self) -> "Series":
        """Multiplicative inverse; constant term must be a nonzero rational."""
        c0 = self.coeffs[0]
        if not c0.is_rational() or not c0:
            raise ValueError("series inverse needs a nonzero scalar constant term")
        inv0 = Poly.const(1 / c0.rational_value())
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = Poly.zero
            for i in range(1, n + 1):
                if self[i]:
                    acc = acc + self[i] * out[n - i]
            out.append(-inv0 * acc)
        return Series(out, self.order)

    def sqrt(self) -> "Series":
        """Square root with constant term 1."""
        if self.coeffs[0] != Poly.one:
            raise ValueError("series sqrt needs constant term 1")
        half = Fraction(1, 2)
        out = [Poly.one]
        for n in range(1, self.order + 1):
            acc = Poly.zero
            for i in range(1, n):
                acc = acc + out[i] * out[n - i]
            out.append((self[n] - acc) * half)
        return Series(out, self.order)

    def compose(self, inner: "Series") -> "Series":
        """self(inner); inner must have zero constant term."""
        if inner.coeffs[0]:
            raise ValueError("series composition needs zero inner constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        acc = Series.constant(self[n], n)
        for k in range(n - 1, -1, -1):
            acc = acc * inner + Series.constant(self[k], n)
        return acc

    def render(self, var: str = "z") -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c and k > 0:
                continue
            body = c.render()
            if len(c.terms) > 1:
                body = f"({body})"
            parts.append(body if k == 0 else (f"{body}*{var}" if k == 1 else f"{body}*{var}^{k}"))
        return " + ".join(parts) + f" + O({var}^{self.order + 1})"

    def __repr__(self):
        return self.render()


def solve_state_gf(r: Series, order: int) -> Series:
    """Solve 1/(z*m(z)) + r(z*m(z)) = 1/z for m with m(0) = 1.

    Multiplying through by z*m rewrites the equation as the fixed point
    m = 1 + z*m * r(z*m), whose z^n coefficient depends only on lower
    coefficients of m; iteration therefore settles one coefficient per pass.
    """
    if r.order < order:
        raise ValueError("r is given to insufficient order")
    r = r.truncate(order)
    m = Series.constant(1, order)
    for _ in range(order + 1):
        zm = m.shift_up()
        m = Series.constant(1, order) + zm * r.compose(zm)
    zm = m.shift_up()
    if not (Series.constant(1, order) + zm * r.compose(zm)).agrees_with(m):
        raise ArithmeticError("state generating function equation has no solution")
    return m

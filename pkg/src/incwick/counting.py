"""Enumeration tables for the incomplete families and the univariate
orthogonal-polynomial specializations of the Wick recursions.

Counts are exact integers from direct generation, cross-checked against the
closed forms (incomplete Bell/Stirling/Narayana numbers, rank counts).  With
a single idempotent letter the Wick products collapse to polynomials in
x = X(a); the classical three-term recurrences and explicit expansions are
verified as exact polynomial identities.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping, Sequence

from .exact import Poly, Series
from .gamma import projection_mode
from . import families
from .wick import Report, WickSpace


# ---------------------------------------------------------------------------
# standard integer sequences by recurrence
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def bell(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))


def involutions(n: int) -> int:
    a, b = 1, 1  # I(0), I(1)
    if n == 0:
        return 1
    for m in range(2, n + 1):
        a, b = b, b + (m - 1) * a
    return b


def stirling1_unsigned(n: int, k: int) -> int:
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return stirling1_unsigned(n - 1, k - 1) + (n - 1) * stirling1_unsigned(n - 1, k)


# ---------------------------------------------------------------------------
# count tables
# ---------------------------------------------------------------------------

def counts(family: str, n: int) -> dict[tuple[int, int], int]:
    """Exact counts by (closed blocks, open blocks) from direct enumeration."""
    table: dict[tuple[int, int], int] = {}
    for element in families.generate(family, n):
        if family in ("P12", "INC12"):
            k = sum(1 for b in element if len(b) == 2)
            l = sum(1 for b in element if len(b) == 1)
        elif family in ("IP", "INC"):
            blocks, opens = element
            k = sum(1 for o in opens if not o)
            l = sum(1 for o in opens if o)
        else:
            wd = families.iprm_to_words(element, n)
            k = len(wd.closed_words)
            l = len(wd.open_words)
        table[(k, l)] = table.get((k, l), 0) + 1
    return table


def rank_counts(family: str, n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for (k, l), c in counts(family, n).items():
        out[l] = out.get(l, 0) + c
    return out


def verify_counts(family: str, n: int) -> Report:
    """Direct enumeration against the closed-form counts."""
    table = counts(family, n)
    total = sum(table.values())
    ranks = rank_counts(family, n)

    def fail(msg):
        return Report(family, "counts", "exact", n=n, passed=False, counterexample=msg)

    if family == "P12":
        for (k, l), c in table.items():
            if 2 * k + l != n:
                return fail(f"impossible shape (k,l)=({k},{l})")
            expected = factorial(n) // (factorial(k) * 2 ** k * factorial(l))
            if c != expected:
                return fail(f"(k,l)=({k},{l}): {c} != {expected}")
        if total != involutions(n):
            return fail(f"total {total} != involutions {involutions(n)}")
    elif family == "INC12":
        if n % 2 == 0:
            m = n // 2
            if total != comb(n, m):
                return fail(f"total {total} != C({n},{m})")
            inc_ranks = rank_counts("INC", m) if m <= families.GENERATION_BOUND["INC"] else None
            if inc_ranks is not None:
                for l, c in ranks.items():
                    if l % 2:
                        if c:
                            return fail(f"odd singleton count {l}")
                    elif c != inc_ranks.get(l // 2, 0):
                        return fail(f"rank {l}: {c} != {inc_ranks.get(l // 2, 0)}")
    elif family == "IP":
        for (k, l), c in table.items():
            expected = comb(k + l, l) * stirling2(n, k + l)
            if c != expected:
                return fail(f"(k,l)=({k},{l}): {c} != {expected}")
        expected_total = sum(comb(n, i) * bell(i) * bell(n - i) for i in range(n + 1))
        if total != expected_total:
            return fail(f"total {total} != {expected_total}")
    elif family == "INC":
        if total != comb(2 * n, n):
            return fail(f"total {total} != C(2n,n)")
        for l in range(n + 1):
            expected = (2 * l + 1) * comb(2 * n, n - l) // (n + l + 1)
            if ranks.get(l, 0) != expected:
                return fail(f"rank {l}: {ranks.get(l, 0)} != {expected}")
    elif family == "IPRM":
        expected_total = sum(comb(n, l) ** 2 * factorial(l) for l in range(n + 1))
        if total != expected_total:
            return fail(f"total {total} != {expected_total}")
        for l in range(n + 1):
            expected = comb(n, l) ** 2 * factorial(n - l)
            if ranks.get(l, 0) != expected:
                return fail(f"rank {l}: {ranks.get(l, 0)} != {expected}")
        t = Poly.param("t")
        for l in range(n + 1):
            gf = Poly.zero
            for (k, ll), c in table.items():
                if ll == l:
                    gf = gf + Poly.const(c) * t ** k
            expected_gf = Poly.const(comb(n, l))
            for j in range(l, n):
                expected_gf = expected_gf * (t + j)
            if gf != expected_gf:
                return fail(f"first-kind generating polynomial at rank {l}")
    return Report(family, "counts", "exact", n=n)


# ---------------------------------------------------------------------------
# incomplete Narayana numbers
# ---------------------------------------------------------------------------

def narayana_table(n: int) -> dict[tuple[int, int, int], int]:
    out = {}
    for m in range(n + 1):
        for (k, l), c in counts("INC", m).items():
            out[(m, k, l)] = c
    return out


def verify_narayana(n: int) -> Report:
    """Recursion, trivariate functional equation, and the rank closed form."""
    table = narayana_table(n)

    def N(m, k, l):
        return table.get((m, k, l), 0) if m >= 0 and k >= 0 and l >= 0 else 0

    def fail(msg):
        return Report("INC", "narayana", "exact", n=n, passed=False, counterexample=msg)

    for m in range(n):
        for k in range(m + 2):
            for l in range(m + 2):
                rec = N(m, k - 1, l) + N(m, k, l - 1) + sum(
                    N(i, j, l) * N(m - i, k - j, 0)
                    for i in range(1, m + 1) for j in range(k + 1)
                )
                if N(m + 1, k, l) != rec:
                    return fail(f"recursion fails at (n,k,l)=({m + 1},{k},{l})")

    t, x = Poly.param("t"), Poly.param("x")
    coeffs = []
    reduced = []
    for m in range(n + 1):
        cm = Poly.zero
        rm = Poly.zero
        for (mm, k, l), c in table.items():
            if mm == m:
                cm = cm + Poly.const(c) * t ** k * x ** l
                if l == 0:
                    rm = rm + Poly.const(c) * t ** k
        coeffs.append(cm)
        reduced.append(rm)
    F = Series(coeffs, n)
    Ft = Series(reduced, n)
    lhs = F
    rhs = Series.constant(1, n) + (t * F + x * F + (F - Series.constant(1, n)) * Ft).shift_up()
    if not lhs.agrees_with(rhs):
        return fail("trivariate functional equation fails")

    ones = {("p", "t"): 1}
    F1 = Series([c.substitute(ones) for c in coeffs], n)
    s = Series([Poly.one, Poly.const(-4)], n).sqrt()
    denom = Series.constant(1, n) - Series([Poly.zero, 2 * (x + 1)], n) + s
    closed = (Series.constant(1, n) + s) * denom.inverse()
    if not F1.agrees_with(closed):
        return fail("rank generating function fails")

    both = {("p", "t"): 1, ("p", "x"): 1}
    for m in range(n + 1):
        if coeffs[m].substitute(both).rational_value() != comb(2 * m, m):
            return fail(f"central binomial fails at {m}")
    return Report("INC", "narayana", "exact", n=n)


# ---------------------------------------------------------------------------
# univariate specializations
# ---------------------------------------------------------------------------

X = Poly.param("x")
T = Poly.param("t")


def univariate_wick(family: str, n: int) -> Poly:
    """W(a^(x)n) for an idempotent letter with E[a^k] = t, as a polynomial
    in x = X(a) with coefficients in t."""
    mode = projection_mode("a")
    space = WickSpace(family, mode)
    g = space.expand(space.tensor(["a"] * n))
    out = Poly.zero
    for xw, coeff in g.terms.items():
        out = out + coeff * X ** len(xw)
    return out


def binomial_poly(m: int) -> Poly:
    """binom(x, m) as an exact polynomial."""
    out = Poly.one
    for j in range(m):
        out = out * (X - j)
    return out * Fraction(1, factorial(m))


def explicit_charlier(n: int) -> Poly:
    """C_n(x,t) = sum_k (-1)^k (n!/k!) t^k binom(x, n-k)."""
    out = Poly.zero
    for k in range(n + 1):
        out = out + Poly.const((-1) ** k * Fraction(factorial(n), factorial(k))) \
            * T ** k * binomial_poly(n - k)
    return out


def explicit_free_charlier(n: int) -> Poly:
    """P_n(x,t) over interval partitions with closed singletons: the open-block
    shape count is binom(n-k-1, l-1) binom(k+l, l), plus the all-closed term."""
    out = Poly.const((-1) ** n) * T ** n
    for l in range(1, n + 1):
        for k in range(0, n - l + 1):
            if n - k - 1 < l - 1:
                continue
            shape = comb(n - k - 1, l - 1) * comb(k + l, l)
            out = out + Poly.const((-1) ** (n - l) * shape) * T ** k * X ** l
    return out


def explicit_laguerre(n: int) -> Poly:
    """L_n: signed rank sums with rising factorials (t+l)...(t+n-1)."""
    out = Poly.zero
    for l in range(n + 1):
        term = Poly.const((-1) ** (n - l) * comb(n, l))
        for j in range(l, n):
            term = term * (T + j)
        out = out + term * X ** l
    return out


def verify_recurrences(family: str, nmax: int) -> Report:
    """x W_n = W_{n+1} + c_n W_n + d_n W_{n-1} with the classical coefficients."""
    w = [univariate_wick(family, m) for m in range(nmax + 2)]
    for m in range(nmax + 1):
        lhs = X * w[m]
        if family == "P12":
            rhs = w[m + 1] + Poly.const(m) * T * (w[m - 1] if m else Poly.zero)
        elif family == "IP":
            rhs = w[m + 1] + (T + m) * w[m] + Poly.const(m) * T * (w[m - 1] if m else Poly.zero)
        elif family == "IPRM":
            rhs = w[m + 1] + (T + 2 * m) * w[m] + (
                Poly.const(m) * T + Poly.const(m * (m - 1))) * (w[m - 1] if m else Poly.zero)
        else:
            raise ValueError(f"no displayed recurrence for {family!r}")
        if lhs != rhs:
            return Report(family, "three-term-recurrence", "projection", n=m,
                          passed=False, counterexample=f"fails at degree {m}")
    return Report(family, "three-term-recurrence", "projection", n=nmax)


def verify_explicit_polynomials(nmax: int) -> Report:
    """Explicit Charlier, free Charlier, and Laguerre forms match the recursions."""
    for m in range(nmax + 1):
        if univariate_wick("IP", m) != explicit_charlier(m):
            return Report("IP", "explicit-polynomial", "projection", n=m, passed=False,
                          counterexample=f"Charlier fails at degree {m}")
        if univariate_wick("INC", m) != explicit_free_charlier(m):
            return Report("INC", "explicit-polynomial", "projection", n=m, passed=False,
                          counterexample=f"free Charlier fails at degree {m}")
        if univariate_wick("IPRM", m) != explicit_laguerre(m):
            return Report("IPRM", "explicit-polynomial", "projection", n=m, passed=False,
                          counterexample=f"Laguerre fails at degree {m}")
    return Report("ALL", "explicit-polynomial", "projection", n=nmax)


def verify_laguerre_monomial(n: int) -> Report:
    """x^n expands over partial injections with t to the closed-word count."""
    lhs = X ** n
    rhs = Poly.zero
    rhs2 = Poly.zero
    lag = [explicit_laguerre(m) for m in range(n + 1)]
    for element in families.generate("IPRM", n):
        wd = families.iprm_to_words(element, n)
        rhs = rhs + T ** len(wd.closed_words) * lag[len(wd.open_words)]
    for l in range(n + 1):
        term = Poly.const(comb(n, l))
        for j in range(l, n):
            term = term * (T + j)
        rhs2 = rhs2 + term * lag[l]
    ok = lhs == rhs == rhs2
    return Report("IPRM", "laguerre-monomial", "projection", n=n, passed=ok,
                  counterexample=None if ok else "monomial display fails")


def verify_laguerre_product(split: Sequence[int]) -> Report:
    """prod_i L_{s(i)} matches the t-weighted sum over incomplete derangements."""
    split = tuple(split)
    n = sum(split)
    lag = [explicit_laguerre(m) for m in range(n + 1)]
    lhs = Poly.one
    for s in split:
        lhs = lhs * lag[s]
    rhs = Poly.zero
    for element in families.generate("IPRM", n):
        if not families.is_incomplete_derangement(element, split):
            continue
        wd = families.iprm_to_words(element, n)
        rhs = rhs + T ** len(wd.closed_words) * lag[len(wd.open_words)]
    ok = lhs == rhs
    return Report("IPRM", "laguerre-product", "projection", split=split, passed=ok,
                  counterexample=None if ok else "product display fails")


# ---------------------------------------------------------------------------
# table output
# ---------------------------------------------------------------------------

def table_rows(family: str, n: int) -> list[tuple]:
    table = counts(family, n)
    return [(family, n, k, l, c) for (k, l), c in sorted(table.items())]


def render_table(rows: list[tuple], fmt: str = "tsv") -> str:
    if fmt == "tsv":
        header = "family\tn\tclosed\topen\tcount"
        return "\n".join([header] + ["\t".join(map(str, r)) for r in rows])
    if fmt == "json":
        return json.dumps(
            [dict(zip(("family", "n", "closed", "open", "count"), r)) for r in rows],
            indent=0, sort_keys=True)
    raise ValueError(f"unknown table format {fmt!r}")

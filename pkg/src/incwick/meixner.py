"""Free Meixner coefficient calculus.

Motzkin-path weights, the monomial-expansion coefficients over incomplete
non-crossing partitions and their closed/open block factorization, moments,
the inner product, the interval-partition inversion coefficients o_k and c_k
with their degenerate-case closed forms, lattice-path identities, the
two-route coefficient-sum pipeline, and the q-state counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .exact import Poly, Series, solve_state_gf
from .gamma import Mode, FREE, COMMUTATIVE, indicator_mode, partitioned_E, pattern_E
from . import families
from .wick import Report, WickSpace, default_letters, interval_partitions, _monomial


def _params(params: Mapping | None) -> dict:
    out = {name: Poly.param(name) for name in ("alpha", "beta", "t", "gamma")}
    for name, value in (params or {}).items():
        out[name] = value if isinstance(value, Poly) else Poly.const(value)
    return out


# ---------------------------------------------------------------------------
# Motzkin paths
# ---------------------------------------------------------------------------

def motzkin_poly(n: int, beta=None, gamma=None) -> Poly:
    """Sum over Motzkin paths of length n: beta per flat, gamma per down step."""
    beta = Poly.param("beta") if beta is None else (beta if isinstance(beta, Poly) else Poly.const(beta))
    gamma = Poly.param("gamma") if gamma is None else (gamma if isinstance(gamma, Poly) else Poly.const(gamma))
    if n < 0:
        raise ValueError("path length must be nonnegative")
    level = {0: Poly.one}
    for _ in range(n):
        nxt: dict = {}
        for h, w in level.items():
            for dh, step in ((1, Poly.one), (0, beta), (-1, gamma)):
                if h + dh < 0:
                    continue
                new = nxt.get(h + dh, Poly.zero) + w * step
                if new:
                    nxt[h + dh] = new
        level = nxt
    return level.get(0, Poly.zero)


def jacobi_path_moment(n: int, diag: Sequence[Poly], sub: Sequence[Poly]) -> Poly:
    """Motzkin-path moment with level weights: flat at height h gets diag[h],
    a down step from height h gets sub[h-1]; weights repeat their last entry."""
    def at(seq, i):
        return seq[min(i, len(seq) - 1)]

    level = {0: Poly.one}
    for _ in range(n):
        nxt: dict = {}
        for h, w in level.items():
            updates = [(h + 1, w), (h, w * at(diag, h))]
            if h >= 1:
                updates.append((h - 1, w * at(sub, h - 1)))
            for hh, ww in updates:
                if ww:
                    nxt[hh] = nxt.get(hh, Poly.zero) + ww
        level = {h: w for h, w in nxt.items() if w}
    return level.get(0, Poly.zero)


# ---------------------------------------------------------------------------
# expansion coefficients and their factorization
# ---------------------------------------------------------------------------

def kappa(n: int, params: Mapping | None = None) -> Poly:
    """Closed-block weight: alpha for a point, t * M_{n-2}(beta, gamma) after."""
    p = _params(params)
    if n < 1:
        raise ValueError("block size must be positive")
    if n == 1:
        return p["alpha"]
    return p["t"] * motzkin_poly(n - 2, p["beta"], p["gamma"])


def omega(n: int, params: Mapping | None = None) -> Poly:
    """Open-block weight M_{n-1}(beta, gamma)."""
    p = _params(params)
    if n < 1:
        raise ValueError("block size must be positive")
    return motzkin_poly(n - 1, p["beta"], p["gamma"])


def coeff_C(element, params: Mapping | None = None) -> Poly:
    """Expansion coefficient of one incomplete non-crossing partition.

    Literal double sum over refinements sigma <= pi that restrict to covered
    partitions on closed blocks, with singletons of sigma allowed only at
    singletons of pi or at smallest elements of open blocks.
    """
    p = _params(params)
    blocks, opens = element
    n = sum(len(b) for b in blocks)
    n_blocks = len(blocks)
    n_open = sum(1 for o in opens if o)
    closed_singletons = sum(1 for b, o in zip(blocks, opens) if not o and len(b) == 1)
    allowed_singletons = {b[0] for b, o in zip(blocks, opens) if not o and len(b) == 1}
    allowed_singletons |= {b[0] for b, o in zip(blocks, opens) if o}
    open_minima = {b[0] for b, o in zip(blocks, opens) if o}
    allowed_singletons = {b[0] for b, o in zip(blocks, opens) if len(b) == 1} | open_minima

    per_block = []
    for b, o in zip(blocks, opens):
        candidates = families.sub_nc_partitions(b)
        if not o:
            candidates = [t for t in candidates if families.is_nc_prime(t)]
        per_block.append(candidates)

    total = Poly.zero
    sigmas = [()]
    for candidates in per_block:
        sigmas = [s + t for s in sigmas for t in candidates]
    for sigma in sigmas:
        if any(len(b) == 1 and b[0] not in allowed_singletons for b in sigma):
            continue
        k_sigma = len(sigma)
        e_beta = n - 2 * k_sigma + n_open + closed_singletons
        e_t = (n_blocks - n_open) - closed_singletons
        e_gamma = k_sigma - n_blocks
        if min(e_beta, e_t, e_gamma) < 0:
            raise ArithmeticError("negative exponent in expansion coefficient")
        total = total + (
            p["alpha"] ** closed_singletons
            * p["beta"] ** e_beta
            * p["t"] ** e_t
            * p["gamma"] ** e_gamma
        )
    return total


def verify_kappa_omega_factorization(n: int, params: Mapping | None = None) -> Report:
    """C^(pi,S) factors over blocks into closed and open weights."""
    p = _params(params)
    for element in families.generate("INC", n):
        blocks, opens = element
        expected = Poly.one
        for b, o in zip(blocks, opens):
            expected = expected * (omega(len(b), p) if o else kappa(len(b), p))
        if coeff_C(element, p) != expected:
            return Report("MEIXNER", "kappa-omega", "formal", n=n, passed=False,
                          counterexample=families.render("INC", element))
    return Report("MEIXNER", "kappa-omega", "formal", n=n)


# ---------------------------------------------------------------------------
# moments and the inner product
# ---------------------------------------------------------------------------

def meixner_moment(words: Sequence, params: Mapping | None = None,
                   mode: Mode | None = None) -> Poly:
    """Joint moment: sum over non-crossing partitions of C^pi E^pi."""
    mode = mode or FREE
    p = _params(params)
    n = len(words)
    total = Poly.zero
    for blocks in families.nc_partitions(n):
        weight = coeff_C((blocks, (False,) * len(blocks)), p)
        total = total + weight * partitioned_E(mode, words, blocks)
    return total


def verify_moment_formula(n: int, mode: Mode | None = None,
                          params: Mapping | None = None) -> Report:
    mode = mode or FREE
    space = WickSpace("MEIXNER", mode, params)
    letters = default_letters(n)
    words = [(l,) for l in letters]
    direct = space.phi(_monomial(mode, letters))
    formula = meixner_moment(words, space.p, mode)
    ok = direct == formula
    return Report("MEIXNER", "moment", mode.kind, n=n, passed=ok,
                  counterexample=None if ok else
                  f"phi={direct.render()} formula={formula.render()}")


def inner_product(a_words: Sequence, b_words: Sequence,
                  params: Mapping | None = None, mode: Mode | None = None) -> Poly:
    """<W(a1..an), W(b1..bk)> via mirrored interval patterns."""
    mode = mode or FREE
    p = _params(params)
    n, k = len(a_words), len(b_words)
    if n != k:
        return Poly.zero
    if n == 0:
        return Poly.one
    total = Poly.zero
    for blocks in interval_partitions(n):
        weight = p["t"] ** len(blocks) * p["gamma"] ** (n - len(blocks))
        total = total + weight * pattern_E(mode, a_words, b_words, blocks)
    return total


def verify_inner_product(a_words: Sequence, b_words: Sequence,
                         mode: Mode | None = None,
                         params: Mapping | None = None) -> Report:
    """The pattern formula equals phi(W(a-tensor) W(reversed b-tensor))."""
    mode = mode or FREE
    space = WickSpace("MEIXNER", mode, params)
    ta = space.tensor(a_words)
    tb = space.tensor(tuple(reversed(b_words)))
    via_phi = space.phi(space.expand(ta) * space.expand(tb))
    via_pattern = inner_product(a_words, b_words, space.p, mode)
    ok = via_phi == via_pattern
    return Report("MEIXNER", "inner-product", mode.kind,
                  n=len(a_words), passed=ok,
                  counterexample=None if ok else
                  f"phi={via_phi.render()} pattern={via_pattern.render()}")


# ---------------------------------------------------------------------------
# inversion coefficients o_k, c_k
# ---------------------------------------------------------------------------

@dataclass
class InversionCoeffs:
    """o[k], c[k] for 1 <= k <= K (index 0 is a zero placeholder)."""

    o: list
    c: list
    case: str


def detect_case(params: Mapping) -> str:
    """Degenerate-case tag, decidable only for fully rational parameters."""
    p = _params(params)
    vals = {}
    for name in ("alpha", "beta", "t", "gamma"):
        if not p[name].is_rational():
            return "generic"
        vals[name] = p[name].rational_value()
    a, b, t, g = vals["alpha"], vals["beta"], vals["t"], vals["gamma"]
    if g == 0:
        return "I"
    if b * b == 4 * g:
        return "III'" if a * b == 2 * t else "III"
    # v = t/alpha is a root of the quadratic iff t^2 - alpha*beta*t + alpha^2*gamma = 0
    if a != 0 and t * t - a * b * t + a * a * g == 0:
        return "II'"
    return "II"


def inversion_coeffs(params: Mapping | None, K: int) -> InversionCoeffs:
    """Both sequences by their three-term recurrences (valid formally)."""
    p = _params(params)
    o = [Poly.zero, Poly.one]
    for k in range(2, K + 1):
        o.append(p["beta"] * o[k - 1] - p["gamma"] * o[k - 2])
    c = [Poly.zero]
    for k in range(1, K + 1):
        c.append(p["alpha"] * o[k] - p["t"] * o[k - 1])
    return InversionCoeffs(o[: K + 1], c, detect_case(params or {}))


def _sqrt_fraction(x: Fraction) -> Fraction | None:
    from math import isqrt

    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def case_closed_forms(params: Mapping, K: int) -> InversionCoeffs | None:
    """Evaluate the degenerate-case closed forms at rational parameters.

    Returns None when the detected case needs irrational roots (plain case II
    with a non-square discriminant).
    """
    case = detect_case(params)
    if case == "generic":
        return None
    p = _params(params)
    a = p["alpha"].rational_value()
    b = p["beta"].rational_value()
    t = p["t"].rational_value()
    g = p["gamma"].rational_value()
    o = [Fraction(0)] * (K + 1)
    c = [Fraction(0)] * (K + 1)
    if case == "I":
        for k in range(1, K + 1):
            o[k] = b ** (k - 1)
            c[k] = a if k == 1 else (a * b - t) * b ** (k - 2)
    elif case in ("II", "II'"):
        root = _sqrt_fraction(b * b - 4 * g)
        if root is None:
            return None
        u, v = (b + root) / 2, (b - root) / 2
        if case == "II'" and a != 0 and v != t / a:
            u, v = v, u
        for k in range(1, K + 1):
            o[k] = (u ** k - v ** k) / (u - v)
            if case == "II'":
                c[k] = a * (b - t / a) ** (k - 1)
            else:
                c[k] = (a * (u ** k - v ** k) - t * (u ** (k - 1) - v ** (k - 1))) / (u - v)
    else:  # III, III'
        h = b / 2
        for k in range(1, K + 1):
            o[k] = k * h ** (k - 1)
            if case == "III'":
                c[k] = a * h ** (k - 1)
            else:
                c[k] = a if k == 1 else (a * k * h - t * (k - 1)) * h ** (k - 2)
    return InversionCoeffs([Poly.const(x) for x in o], [Poly.const(x) for x in c], case)


def verify_case_closed_forms(params: Mapping, K: int = 10,
                             expect_case: str | None = None) -> Report:
    rec = inversion_coeffs(params, K)
    closed = case_closed_forms(params, K)
    label = f"oc-case-{rec.case}"
    if expect_case is not None and rec.case != expect_case:
        return Report("MEIXNER", label, "rational", n=K, passed=False,
                      counterexample=f"detected case {rec.case}, expected {expect_case}")
    if closed is None:
        return Report("MEIXNER", label, "rational", n=K, passed=False,
                      counterexample="closed form needs irrational roots")
    for k in range(1, K + 1):
        if rec.o[k] != closed.o[k] or rec.c[k] != closed.c[k]:
            return Report("MEIXNER", label, "rational", n=K, passed=False,
                          counterexample=f"k={k}: recurrence ({rec.o[k].render()}, "
                                         f"{rec.c[k].render()}) vs closed "
                                         f"({closed.o[k].render()}, {closed.c[k].render()})")
    return Report("MEIXNER", label, "rational", n=K)


def verify_oc_generating_functions(params: Mapping | None = None, K: int = 10) -> Report:
    """O(z) (1 - beta z + gamma z^2) = 1 and C(z) = (alpha - t z) O(z)."""
    p = _params(params)
    coeffs = inversion_coeffs(p, K + 2)
    O = Series(coeffs.o[1:], K)
    C = Series(coeffs.c[1:], K)
    quad = Series([Poly.one, -p["beta"], p["gamma"]], K)
    ok = (O * quad).agrees_with(Series.constant(1, K)) and (
        Series([p["alpha"], -p["t"]], K) * O).agrees_with(C)
    return Report("MEIXNER", "oc-generating-functions", "formal", n=K, passed=ok,
                  counterexample=None if ok else "series identity fails")


# ---------------------------------------------------------------------------
# lattice-path identities
# ---------------------------------------------------------------------------

def _nc_pair_singleton(n: int) -> list[tuple]:
    return [p for p in families.set_partitions(n)
            if all(len(b) <= 2 for b in p) and families.is_noncrossing(p)]


def verify_viennot(n: int, params: Mapping | None = None) -> Report:
    """Three expressions for the n-th moment of the free Meixner measure."""
    p = _params(params)
    a, b, t, g = p["alpha"], p["beta"], p["t"], p["gamma"]

    route_matchings = Poly.zero
    for blocks in _nc_pair_singleton(n):
        depths = families.block_depths(blocks)
        term = Poly.one
        for u in blocks:
            if len(u) == 1:
                term = term * (a if depths[u] == 0 else a + b)
            else:
                term = term * (t if depths[u] == 0 else t + g)
        route_matchings = route_matchings + term

    route_nc = Poly.zero
    for blocks in families.nc_partitions(n):
        singles = sum(1 for u in blocks if len(u) == 1)
        outer = families.outer_blocks(blocks)
        outer_nonsingle = sum(1 for u in outer if len(u) >= 2)
        k = len(blocks)
        term = (a ** singles
                * b ** (n - 2 * k + singles)
                * t ** outer_nonsingle
                * (t + g) ** (k - singles - outer_nonsingle))
        route_nc = route_nc + term

    route_paths = jacobi_path_moment(n, [a, a + b], [t, t + g])

    ok = route_matchings == route_nc == route_paths
    detail = None
    if not ok:
        detail = (f"matchings={route_matchings.render()} nc={route_nc.render()} "
                  f"paths={route_paths.render()}")
    return Report("MEIXNER", "viennot", "formal", n=n, passed=ok, counterexample=detail)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def large_schroder(n: int) -> int:
    """S_0 = 1; S_m = S_{m-1} + sum_j S_j S_{m-1-j}."""
    s = [1]
    for m in range(1, n + 1):
        s.append(s[m - 1] + sum(s[j] * s[m - 1 - j] for j in range(m)))
    return s[n]


def verify_schroder_motzkin(n: int) -> Report:
    """Schroder numbers as free-cumulant sums over NC(n), and the Motzkin
    analogue over partitions without singletons."""
    sch = Fraction(large_schroder(n - 1))
    cumulant_sum = Fraction(0)
    power_sum = Fraction(0)
    for blocks in families.nc_partitions(n):
        term = Fraction(1)
        for u in blocks:
            term *= catalan(len(u) - 1)
        cumulant_sum += term
        outer = families.outer_blocks(blocks)
        outer_nonsingle = sum(1 for u in outer if len(u) >= 2)
        singles = sum(1 for u in blocks if len(u) == 1)
        power_sum += Fraction(2) ** (n - len(blocks) - outer_nonsingle)
        del singles
    ok = sch == cumulant_sum == power_sum

    motzkin_sum = Fraction(0)
    motzkin_power = Fraction(0)
    for blocks in families.nc_partitions(n):
        if any(len(u) == 1 for u in blocks):
            continue
        term = Fraction(1)
        for u in blocks:
            term *= motzkin_poly(len(u) - 2, 1, 1).rational_value()
        motzkin_sum += term
        outer = families.outer_blocks(blocks)
        motzkin_power += Fraction(2) ** (len(blocks) - len(outer))
    ok = ok and motzkin_sum == motzkin_power
    detail = None
    if not ok:
        detail = (f"Sch={sch} cumulant={cumulant_sum} power={power_sum}; "
                  f"Motzkin {motzkin_sum} vs {motzkin_power}")
    return Report("MEIXNER", "schroder-motzkin", "rational", n=n, passed=ok,
                  counterexample=detail)


# ---------------------------------------------------------------------------
# the coefficient-sum sequence, two routes
# ---------------------------------------------------------------------------

T_PARAMS = {"alpha": 1, "beta": 2, "t": 1, "gamma": 1}


def compute_T(nmax: int) -> tuple[list[int], list[int]]:
    """First nmax values of the coefficient sums, by direct enumeration over
    incomplete non-crossing partitions of 0..nmax-1 points (route A) and by
    the generating-function pipeline (route B)."""
    if nmax < 1 or nmax > 8:
        raise ValueError("supported range is 1 <= nmax <= 8")
    p = {k: Fraction(v) for k, v in T_PARAMS.items()}
    kw = {m: kappa(m, p).rational_value() for m in range(1, nmax)}
    ow = {m: omega(m, p).rational_value() for m in range(1, nmax)}

    route_a = []
    for size in range(nmax):
        total = Fraction(0)
        for blocks, opens in families.generate("INC", size):
            term = Fraction(1)
            for b, o in zip(blocks, opens):
                term *= ow[len(b)] if o else kw[len(b)]
            total += term
        route_a.append(int(total))

    order = nmax + 2
    F = Series([motzkin_poly(m, 2, 1) for m in range(order + 1)], order)
    r = Series.constant(1, order) + F.shift_up()          # alpha + t z F
    R = Series.constant(1, order) + (Series([Poly.one, Poly.one], order) * F)
    m_gf = solve_state_gf(r, order)
    zm = m_gf.shift_up()
    M = (Series.constant(1, order) - R.compose(zm).shift_up()).inverse()
    route_b = [int(M[k].rational_value()) for k in range(nmax)]
    return route_a, route_b


# ---------------------------------------------------------------------------
# the q-state counterexample
# ---------------------------------------------------------------------------

def q_counterexample(measure_i: Fraction | int = 1,
                     measure_j: Fraction | int = 1) -> dict:
    """phi_q(W_q(a0) W_q(a1,a2,a3) W_q(a4)) computed symbolically and in the
    two-indicator model; nonzero for 0 < q < 1, zero at q = 0 and q = 1."""
    q = Poly.param("q")

    space = WickSpace("Q", COMMUTATIVE)
    letters = ["a0", "a1", "a2", "a3", "a4"]
    w0 = space.expand(space.tensor([letters[0]]))
    w123 = space.expand(space.tensor(letters[1:4]))
    w4 = space.expand(space.tensor([letters[4]]))
    symbolic = space.phi(w0 * w123 * w4)
    expected = (q - q * q) * (
        Poly.moment(("a0", "a2")) * Poly.moment(("a1", "a3", "a4"))
        - Poly.moment(("a0", "a2", "a4")) * Poly.moment(("a1", "a3"))
    )

    mode = indicator_mode({"I": measure_i, "J": measure_j})
    ispace = WickSpace("Q", mode)
    seq = ["I", "J", "I", "J", "J"]
    n0 = ispace.expand(ispace.tensor([seq[0]]))
    n123 = ispace.expand(ispace.tensor(seq[1:4]))
    n4 = ispace.expand(ispace.tensor([seq[4]]))
    numeric = ispace.phi(n0 * n123 * n4)
    numeric_expected = (q - q * q) * Fraction(measure_i) * Fraction(measure_j)

    qsym = ("p", "q")
    return {
        "symbolic": symbolic,
        "expected_symbolic": expected,
        "numeric": numeric,
        "expected_numeric": numeric_expected,
        "at_q0": numeric.substitute({qsym: 0}),
        "at_q1": numeric.substitute({qsym: 1}),
        "matches": symbolic == expected and numeric == numeric_expected,
    }

"""Generic finite poset engine: order validation, meets, Mobius functions.

Elements are opaque hashable keys; the order is supplied as a predicate and
stored as up-set/down-set bitmasks, so interval scans and subset tests are
cheap even for a few thousand elements.
"""

from __future__ import annotations

from typing import Callable, Hashable, Sequence


class FinitePoset:
    def __init__(self, elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]):
        self.elements = list(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate poset elements")
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        up = [0] * n
        down = [0] * n
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                if leq(x, y):
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        self.up = up
        self.down = down
        self._validate()
        self._mobius_cache: dict[int, dict[int, int]] = {}

    def _validate(self):
        n = len(self.elements)
        for i in range(n):
            if not (self.up[i] >> i) & 1:
                raise ValueError(f"order not reflexive at {self.elements[i]!r}")
            if self.up[i] & self.down[i] != 1 << i:
                raise ValueError(f"order not antisymmetric at {self.elements[i]!r}")
        for i in range(n):
            rest = self.up[i] & ~(1 << i)
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if self.up[j] & ~self.up[i]:
                    raise ValueError("order not transitive")

    def __len__(self):
        return len(self.elements)

    def leq(self, x, y) -> bool:
        return bool((self.up[self.index[x]] >> self.index[y]) & 1)

    def _bits(self, mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask &= mask - 1

    def bottom(self):
        """The unique minimum, or None."""
        full = (1 << len(self.elements)) - 1
        for i in range(len(self.elements)):
            if self.up[i] == full:
                return self.elements[i]
        return None

    def meet(self, x, y):
        """Greatest lower bound of x and y, or None when it does not exist."""
        common = self.down[self.index[x]] & self.down[self.index[y]]
        for i in self._bits(common):
            if common & ~self.down[i] == 0:
                return self.elements[i]
        return None

    def mobius_from(self, x) -> dict:
        """mu(x, y) for every y >= x, by the defining recursion."""
        i = self.index[x]
        if i not in self._mobius_cache:
            mu: dict[int, int] = {}
            order = sorted(self._bits(self.up[i]), key=lambda j: bin(self.down[j] & self.up[i]).count("1"))
            for j in order:
                if j == i:
                    mu[j] = 1
                    continue
                acc = 0
                for k in self._bits(self.down[j] & self.up[i] & ~(1 << j)):
                    acc += mu[k]
                mu[j] = -acc
            self._mobius_cache[i] = mu
        return {self.elements[j]: v for j, v in self._mobius_cache[i].items()}

    def mobius(self, x, y) -> int:
        if not self.leq(x, y):
            raise ValueError("mobius requires x <= y")
        return self.mobius_from(x)[y]

    def mobius_table(self) -> dict:
        """mu(x, y) for every ordered pair x <= y."""
        table = {}
        for x in self.elements:
            for y, v in self.mobius_from(x).items():
                table[(x, y)] = v
        return table

    def zeta_sum_check(self) -> bool:
        """Defining property: sum of mu over every interval is an indicator."""
        for x in self.elements:
            mu = self.mobius_from(x)
            i = self.index[x]
            for j in self._bits(self.up[i]):
                y = self.elements[j]
                total = sum(mu[self.elements[k]] for k in self._bits(self.down[j] & self.up[i]))
                if total != (1 if x == y else 0):
                    return False
        return True


def check_product_hypothesis(family: str, split: Sequence[int]) -> dict:
    """Verify the split-embedding hypothesis behind the generic product formula.

    Checks that (a) juxtaposition of per-interval objects embeds the product
    poset order-isomorphically, (b) for every element t of the big poset the
    image elements below t are exactly the elements below the projection of t,
    and (c) the projection fixes image elements.  Returns a report dict with
    the first counterexample if any check fails.
    """
    from . import families

    split = list(split)
    n = sum(split)
    report = {
        "family": family,
        "identity": "product-hypothesis",
        "split": split,
        "pass": True,
        "counterexample": None,
    }

    def fail(msg):
        report["pass"] = False
        report["counterexample"] = msg
        return report

    big = families.poset(family, n)
    component_lists = [families.generate(family, s) for s in split]
    tuples = [()]
    for lst in component_lists:
        tuples = [t + (x,) for t in tuples for x in lst]
    image = {}
    for t in tuples:
        emb = families.alpha_embed(family, t, split)
        if emb in image:
            return fail(f"embedding not injective at {t!r}")
        image[emb] = t
    image_mask = 0
    for emb in image:
        image_mask |= 1 << big.index[emb]

    # (a) order isomorphism onto the image
    for t1 in tuples:
        for t2 in tuples:
            comp = all(
                families.leq(family, a, b, s) for a, b, s in zip(t1, t2, split)
            )
            e1 = families.alpha_embed(family, t1, split)
            e2 = families.alpha_embed(family, t2, split)
            if comp != big.leq(e1, e2):
                return fail(f"order mismatch between {t1!r} and {t2!r}")

    # (b) lower sets, (c) projection fixes the image
    for tau in big.elements:
        proj = families.project_tau(family, tau, split)
        j = big.index[tau]
        jp = big.index[proj]
        if big.down[j] & image_mask != big.down[jp]:
            return fail(f"lower-set condition fails at {tau!r}")
        if (1 << j) & image_mask and proj != tau:
            return fail(f"projection moves image element {tau!r}")
    return report

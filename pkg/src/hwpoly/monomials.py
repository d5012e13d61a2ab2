"""Monomial classes: the monomial basis of the d-th symmetric power of S^c.

A monomial class is a multiset of d multisets ("blocks") of c row indices.
Canonical form: each block sorted ascending, blocks sorted lexicographically.
Two reading words of column permutation assignments are identified exactly
when they agree as monomial classes.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .tableaux import check_partition

MonomialClass = tuple[tuple[int, ...], ...]


def canonical_monomial(blocks) -> MonomialClass:
    """Sort within blocks, then sort blocks; fixed point of itself."""
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def monomial_content(mono: MonomialClass, nrows: int) -> tuple[int, ...]:
    """How many times each row index 1..nrows appears across all blocks."""
    counts = [0] * nrows
    for block in mono:
        for r in block:
            counts[r - 1] += 1
    return tuple(counts)


def block_types(nrows: int, c: int) -> list[tuple[int, ...]]:
    """All sorted c-multisets over {1..nrows}, ascending lexicographic."""
    return list(combinations_with_replacement(range(1, nrows + 1), c))


def enumerate_weight_monomials(lam, d: int, c: int) -> list[MonomialClass]:
    """All canonical monomial classes of content lam, in lexicographic order.

    These are exactly the classes that can appear in the expansion of any
    tableau of shape lam, and they form the hash domain.
    """
    lam = check_partition(lam)
    if sum(lam) != d * c:
        raise ValueError(f"sum(lam)={sum(lam)} != d*c={d * c}")
    nrows = len(lam)
    blocks = block_types(nrows, c)
    out: list[MonomialClass] = []
    acc: list[tuple[int, ...]] = []

    def rec(idx, t, rem):
        if t == d:
            if not any(rem):
                out.append(tuple(acc))
            return
        if max(rem) > c * (d - t):
            return
        for j in range(idx, len(blocks)):
            b = blocks[j]
            new = list(rem)
            ok = True
            for r in b:
                new[r - 1] -= 1
                if new[r - 1] < 0:
                    ok = False
                    break
            if ok:
                acc.append(b)
                rec(j, t + 1, new)
                acc.pop()

    rec(0, 0, list(lam))
    return out


def count_weight_monomials(weight, d: int, c: int) -> int:
    """Number of monomial classes of the given content (order-insensitive).

    Accepts any nonnegative integer vector; zero entries are dropped.  This is
    the dimension of the corresponding weight space of the d-th symmetric
    power of S^c.
    """
    w = tuple(sorted((int(x) for x in weight), reverse=True))
    if any(x < 0 for x in w):
        return 0
    w = tuple(x for x in w if x)
    if sum(w) != d * c:
        return 0
    return _count_dp(w, d, c)


@lru_cache(maxsize=4096)
def _count_dp(w: tuple[int, ...], d: int, c: int) -> int:
    nrows = len(w)
    blocks = block_types(nrows, c)

    @lru_cache(maxsize=None)
    def f(j: int, rem: tuple[int, ...]) -> int:
        if not any(rem):
            return 1
        if j == len(blocks):
            return 0
        total = f(j + 1, rem)  # block j unused
        b = blocks[j]
        cur = list(rem)
        while True:
            ok = True
            for r in b:
                cur[r - 1] -= 1
                if cur[r - 1] < 0:
                    ok = False
            if not ok:
                break
            total += f(j + 1, tuple(cur))
        return total

    result = f(0, w)
    f.cache_clear()
    return result

"""Partitions and isobaric semistandard Young tableaux.

A partition doubles as a GL weight and as a tableau shape.  Tableaux of
shape ``lam`` with content ``(c,)*d`` (every entry 1..d used exactly c
times) are in bijection with chains of partitions that grow by a
horizontal strip of c boxes at each of d steps; enumeration, counting and
unranking all run over these chains, so weights with millions of tableaux
can be sampled without materializing the full list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

Partition = tuple[int, ...]


def check_partition(parts) -> Partition:
    """Validate and normalize a partition (weakly decreasing, positive)."""
    lam = tuple(int(x) for x in parts)
    if any(x <= 0 for x in lam):
        raise ValueError(f"partition entries must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"partition must be weakly decreasing: {lam}")
    return lam


def column_lengths(lam) -> list[int]:
    """Number of boxes in each column (the conjugate partition)."""
    lam = check_partition(lam)
    if not lam:
        return []
    return [sum(1 for r in lam if r >= i + 1) for i in range(lam[0])]


def count_assignments(lam) -> int:
    """Number of column permutation assignments: the product of mu_i!."""
    out = 1
    for m in column_lengths(lam):
        out *= math.factorial(m)
    return out


def irrep_dimension(lam, n: int) -> int:
    """Dimension of the irreducible GL(n) representation of highest weight lam.

    Hook content formula: prod over boxes (i,j) of (n + j - i) / hook(i,j),
    rows and columns 1-based.
    """
    lam = check_partition(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than n={n} parts")
    cols = column_lengths(lam)
    num = 1
    den = 1
    for i, row_len in enumerate(lam):
        for j in range(row_len):
            num *= n + (j + 1) - (i + 1)
            den *= (row_len - (j + 1)) + (cols[j] - (i + 1)) + 1
    assert num % den == 0
    return num // den


def partitions_of(n: int, max_parts: int | None = None) -> list[Partition]:
    """All partitions of n in descending lexicographic order."""
    out: list[Partition] = []

    def rec(rem, largest, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        if max_parts is not None and len(acc) >= max_parts:
            return
        for p in range(min(rem, largest), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return out


@dataclass(frozen=True)
class IsobaricTableau:
    """Semistandard filling of ``shape`` where each of 1..d appears c times."""

    shape: Partition
    rows: tuple[tuple[int, ...], ...]
    d: int
    c: int

    def __post_init__(self):
        if tuple(len(r) for r in self.rows) != tuple(self.shape):
            raise ValueError("row lengths do not match shape")

    @property
    def filling_rowmajor(self) -> tuple[int, ...]:
        return tuple(v for row in self.rows for v in row)

    def column(self, i: int) -> list[int]:
        """Entries of column i, top to bottom."""
        return [row[i] for row in self.rows if len(row) > i]

    def is_isobaric(self) -> bool:
        counts = [0] * (self.d + 1)
        for v in self.filling_rowmajor:
            if not 1 <= v <= self.d:
                return False
            counts[v] += 1
        return all(x == self.c for x in counts[1:])

    def is_semistandard(self) -> bool:
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if j and row[j - 1] > v:
                    return False
                if i and self.rows[i - 1][j] >= v:
                    return False
        return True

    def validate(self) -> "IsobaricTableau":
        if sum(self.shape) != self.d * self.c:
            raise ValueError("shape size != d*c")
        if not self.is_isobaric():
            raise ValueError("filling is not isobaric")
        if not self.is_semistandard():
            raise ValueError("filling is not semistandard")
        return self

    def __str__(self):
        return "/".join(",".join(str(v) for v in row) for row in self.rows)


def tableau_from_rows(rows, d: int | None = None, c: int | None = None) -> IsobaricTableau:
    """Build a tableau from row lists, inferring d (max entry) and c if omitted."""
    rows = tuple(tuple(int(v) for v in r) for r in rows)
    shape = check_partition(len(r) for r in rows)
    flat = [v for r in rows for v in r]
    if d is None:
        d = max(flat)
    if c is None:
        if len(flat) % d:
            raise ValueError("box count not divisible by inferred d")
        c = len(flat) // d
    return IsobaricTableau(shape, rows, d, c).validate()


def horizontal_strips(mu, c: int, lam) -> list[Partition]:
    """Partitions nu obtained from mu by adding a horizontal strip of c boxes,
    constrained to fit inside lam.  Returned in descending lexicographic order
    (this fixes the canonical chain order used for ranking tableaux)."""
    lam = tuple(lam)
    rows = len(lam)
    mu_full = list(mu) + [0] * (rows - len(mu))
    out: list[Partition] = []

    def rec(i, rem, acc):
        if i == rows:
            if rem == 0:
                out.append(tuple(x for x in acc if x))
            return
        lo = mu_full[i]
        hi = min(lam[i], mu_full[i] + rem)
        if i > 0:
            # weakly decreasing, and no two added boxes in one column
            hi = min(hi, acc[i - 1], mu_full[i - 1])
        for v in range(hi, lo - 1, -1):
            acc.append(v)
            rec(i + 1, rem - (v - lo), acc)
            acc.pop()

    rec(0, c, [])
    return out


@lru_cache(maxsize=64)
def _chain_counts(lam: Partition, d: int, c: int):
    """counts[t][shape] = number of strip chains from shape (after t steps) to lam."""
    counts = [dict() for _ in range(d + 1)]
    counts[d] = {lam: 1}
    # shapes reachable at step t, found forward; counted backward
    reach = [set() for _ in range(d + 1)]
    reach[0].add(())
    for t in range(d):
        for shape in reach[t]:
            for nu in horizontal_strips(shape, c, lam):
                reach[t + 1].add(nu)
    for t in range(d - 1, -1, -1):
        for shape in reach[t]:
            total = 0
            for nu in horizontal_strips(shape, c, lam):
                total += counts[t + 1].get(nu, 0)
            if total:
                counts[t][shape] = total
    return counts


def count_isobaric_tableaux(lam, d: int, c: int) -> int:
    """Number of semistandard tableaux of shape lam and content (c,)*d."""
    lam = check_partition(lam)
    if sum(lam) != d * c:
        raise ValueError(f"sum(lam)={sum(lam)} != d*c={d * c}")
    return _chain_counts(lam, d, c)[0].get((), 0)


def _chain_to_tableau(lam, chain, d, c) -> IsobaricTableau:
    rows = [[0] * r for r in lam]
    prev: Partition = ()
    for t, shape in enumerate(chain, start=1):
        for i, length in enumerate(shape):
            old = prev[i] if i < len(prev) else 0
            for j in range(old, length):
                rows[i][j] = t
        prev = shape
    return IsobaricTableau(tuple(lam), tuple(tuple(r) for r in rows), d, c)


def pieri_chain(tab: IsobaricTableau) -> list[Partition]:
    """The chain of partitions lam^1 ⊂ ... ⊂ lam^d occupied by entries <= t."""
    chain = []
    for t in range(1, tab.d + 1):
        shape = []
        for row in tab.rows:
            k = sum(1 for v in row if v <= t)
            if k:
                shape.append(k)
        chain.append(tuple(shape))
    return chain


def enumerate_isobaric_tableaux(lam, d: int, c: int, limit: int | None = None) -> list[IsobaricTableau]:
    """All tableaux of shape lam, content (c,)*d, in canonical chain order.

    The order is a DFS over Pieri chains with strip additions visited in
    descending lexicographic order; it matches unrank_isobaric_tableau.
    """
    lam = check_partition(lam)
    if sum(lam) != d * c:
        raise ValueError(f"sum(lam)={sum(lam)} != d*c={d * c}")
    total = count_isobaric_tableaux(lam, d, c)
    cap = limit if limit is not None else 2_000_000
    if total > cap:
        raise ValueError(
            f"{total} tableaux of shape {lam}; refusing to materialize more than {cap} "
            "(use count_isobaric_tableaux/unrank_isobaric_tableau instead)"
        )
    out: list[IsobaricTableau] = []

    def rec(t, shape, acc):
        if t == d:
            if shape == lam:
                out.append(_chain_to_tableau(lam, acc, d, c))
            return
        for nu in horizontal_strips(shape, c, lam):
            acc.append(nu)
            rec(t + 1, nu, acc)
            acc.pop()

    rec(0, (), [])
    return out


def unrank_isobaric_tableau(lam, d: int, c: int, index: int) -> IsobaricTableau:
    """The index-th tableau (0-based) in canonical chain order."""
    lam = check_partition(lam)
    counts = _chain_counts(lam, d, c)
    total = counts[0].get((), 0)
    if not 0 <= index < total:
        raise IndexError(f"tableau index {index} out of range [0, {total})")
    chain = []
    shape: Partition = ()
    rem = index
    for t in range(d):
        for nu in horizontal_strips(shape, c, lam):
            cnt = counts[t + 1].get(nu, 0)
            if rem < cnt:
                chain.append(nu)
                shape = nu
                break
            rem -= cnt
        else:
            raise AssertionError("unrank walked off the chain graph")
    return _chain_to_tableau(lam, chain, d, c)


def tableau_rank(tab: IsobaricTableau) -> int:
    """Position of a tableau in canonical chain order (inverse of unrank)."""
    lam = tab.shape
    counts = _chain_counts(lam, tab.d, tab.c)
    rank = 0
    shape: Partition = ()
    for t, target in enumerate(pieri_chain(tab)):
        for nu in horizontal_strips(shape, tab.c, lam):
            if nu == target:
                break
            rank += counts[t + 1].get(nu, 0)
        else:
            raise ValueError("tableau is not a valid strip chain")
        shape = target
    return rank

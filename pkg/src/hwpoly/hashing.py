"""Equivariant hashing of monomial classes.

The hash of a list of blocks is sum over blocks of (sum of iota over the
block)^k mod p, which depends only on the monomial class: it is symmetric
inside each block and across blocks.  Collision-freeness on a concrete
domain (all monomial classes of one weight) is established by explicit
verification; when the domain is too large for a birthday-bound prime to
fit in memory, ambiguous cells are re-hashed by further schemes in a chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .modular import random_prime
from .monomials import MonomialClass, enumerate_weight_monomials
from .seeding import derive_seed, derived_rng
from .tableaux import check_partition

# accumulation arrays hold int64; keep primes small enough for p-cell arrays
DEFAULT_P_CAP = 1 << 26
MAX_CHAIN_DEPTH = 4
_K_RANGE = (3, 64)


@dataclass(frozen=True)
class HashScheme:
    """One (k, p, iota) triple; iota is indexed by row value, iota[0] unused."""

    k: int
    p: int
    seed: int
    iota: tuple[int, ...]

    def hash_monomial(self, mono: MonomialClass) -> int:
        total = 0
        for block in mono:
            s = 0
            for r in block:
                s += self.iota[r]
            total += pow(s % self.p, self.k, self.p)
        return total % self.p


def scheme_from_seed(seed: int, nrows: int, p_lo: int, p_hi: int) -> HashScheme:
    """Reproducibly draw (k, p, iota) from a single seed."""
    rng = derived_rng("scheme", seed)
    k = rng.randrange(_K_RANGE[0], _K_RANGE[1] + 1)
    p = random_prime(rng, p_lo, p_hi)
    iota = (0,) + tuple(rng.randrange(p) for _ in range(nrows))
    return HashScheme(k=k, p=p, seed=seed, iota=iota)


def verify_hash_scheme(scheme: HashScheme, domain) -> list[list[MonomialClass]]:
    """Collision groups of the scheme on the domain; empty list means injective."""
    cells: dict[int, list[MonomialClass]] = {}
    for mono in domain:
        cells.setdefault(scheme.hash_monomial(mono), []).append(mono)
    return [group for group in cells.values() if len(group) > 1]


def estimate_chain_depth(domain_size: int, p_cap: int = DEFAULT_P_CAP) -> int:
    """Expected number of schemes needed, by the birthday heuristic.

    With D elements hashed into p cells the expected number of elements in
    colliding cells is about D^2/p; levels shrink geometrically until one
    uncapped birthday-range prime suffices.
    """
    depth = 1
    size = domain_size
    while 8 * size * size > p_cap and size > 1 and depth < MAX_CHAIN_DEPTH:
        size = max(1, math.ceil(size * size / (p_cap // 2)))
        depth += 1
    return depth


@dataclass
class HashChain:
    """A verified routing of one weight's monomial domain through 1+ schemes.

    routes[i] = (level, cell) for domain[i]: the first level whose cell holds
    domain[i] alone among the monomials routed to that level.
    """

    weight: tuple[int, ...]
    d: int
    c: int
    domain: list[MonomialClass]
    schemes: list[HashScheme]
    ambiguous: list[np.ndarray] = field(repr=False)  # uint8 masks, levels 0..len-2
    routes: np.ndarray = field(repr=False)  # (len(domain), 2) int64

    @property
    def depth(self) -> int:
        return len(self.schemes)

    def lookup(self, index: int) -> tuple[int, int]:
        level, cell = self.routes[index]
        return int(level), int(cell)


def build_hash_chain(
    lam,
    d: int,
    c: int,
    seed: int = 0,
    p_cap: int = DEFAULT_P_CAP,
    domain: list[MonomialClass] | None = None,
    max_attempts: int = 64,
) -> HashChain:
    """Draw and verify a scheme chain for the weight-lam monomial domain.

    Each level draws p from the birthday range [4*D^2, 8*D^2] for its
    subdomain of size D, capped at p_cap; capped levels route the monomials
    in colliding cells to the next level.  Raises if MAX_CHAIN_DEPTH levels
    cannot separate the domain.
    """
    lam = check_partition(lam)
    if domain is None:
        domain = enumerate_weight_monomials(lam, d, c)
    nrows = len(lam)
    schemes: list[HashScheme] = []
    masks: list[np.ndarray] = []
    routes = np.zeros((len(domain), 2), dtype=np.int64)
    pending = list(range(len(domain)))  # indices routed to the current level
    level = 0
    while pending:
        if level >= MAX_CHAIN_DEPTH:
            raise RuntimeError(
                f"hash chain for weight {lam}: {len(pending)} monomials still "
                f"colliding after {MAX_CHAIN_DEPTH} schemes (p_cap={p_cap}); "
                "raise p_cap or the chain depth"
            )
        size = len(pending)
        p_lo, p_hi = 4 * size * size, 8 * size * size
        p_lo = max(p_lo, 2 * nrows + 5)
        p_hi = max(p_hi, p_lo + 16)
        capped = p_hi > p_cap
        if capped:
            p_lo, p_hi = p_cap // 2, p_cap
        best: tuple[int, HashScheme, dict[int, list[int]]] | None = None
        attempts = min(max_attempts, 8) if capped else max_attempts
        for attempt in range(attempts):
            scheme = scheme_from_seed(derive_seed(seed, level, attempt), nrows, p_lo, p_hi)
            cells: dict[int, list[int]] = {}
            for idx in pending:
                cells.setdefault(scheme.hash_monomial(domain[idx]), []).append(idx)
            colliding = sum(len(g) for g in cells.values() if len(g) > 1)
            if best is None or colliding < best[0]:
                best = (colliding, scheme, cells)
            if colliding == 0:
                break
        assert best is not None
        colliding, scheme, cells = best
        if colliding and not capped:
            raise RuntimeError(
                f"hash chain for weight {lam}: no collision-free scheme in "
                f"{attempts} draws at level {level} (domain {size}, p in "
                f"[{p_lo}, {p_hi}))"
            )
        schemes.append(scheme)
        next_pending: list[int] = []
        mask = np.zeros(scheme.p, dtype=np.uint8)
        for cell, group in cells.items():
            if len(group) == 1:
                routes[group[0], 0] = level
                routes[group[0], 1] = cell
            else:
                mask[cell] = 1
                next_pending.extend(group)
        if next_pending:
            masks.append(mask)
        pending = sorted(next_pending)
        level += 1
    return HashChain(
        weight=lam, d=d, c=c, domain=domain,
        schemes=schemes, ambiguous=masks, routes=routes,
    )

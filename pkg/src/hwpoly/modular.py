"""Prime fields, primes, and exact linear algebra helpers.

All prime moduli used for linear algebra are kept below 2^31 so that numpy
int64 products never overflow; soundness is recovered by re-running every
verdict under a second independent prime (failure probabilities multiply),
plus exact rational verification of reported kernels.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

# residues of a*b with a,b < 2^31 fit in int64
MAX_PRIME = 2**31

# fixed default evaluation primes (independent of any hash prime)
DEFAULT_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24 with the fixed base set."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng, lo: int, hi: int) -> int:
    """A prime drawn uniformly-ish from [lo, hi) via rejection sampling."""
    if hi <= lo:
        raise ValueError(f"empty prime range [{lo}, {hi})")
    for _ in range(10_000):
        n = rng.randrange(lo, hi) | 1
        if n >= hi:
            continue
        if is_probable_prime(n):
            return n
    raise RuntimeError(f"no prime found in [{lo}, {hi})")


def _as_mod_array(M, q: int) -> np.ndarray:
    A = np.array([[int(x) % q for x in row] for row in M], dtype=np.int64)
    if A.ndim != 2:
        A = A.reshape(len(M), -1)
    return A


def rref_mod(M, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_q.  Returns (R, pivot column list)."""
    if q >= MAX_PRIME:
        raise ValueError(f"modulus {q} too large for int64 arithmetic")
    R = _as_mod_array(M, q)
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(R[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, col]), q - 2, q)
        R[r] = R[r] * inv % q
        mask = np.nonzero(R[:, col])[0]
        for i in mask:
            if i != r:
                R[i] = (R[i] - R[i, col] * R[r]) % q
        pivots.append(col)
        r += 1
    return R, pivots


def rank_mod(M, q: int) -> int:
    return len(rref_mod(M, q)[1])


def nullspace_mod(M, q: int) -> np.ndarray:
    """Canonical basis of {x : M x = 0} over F_q, one vector per row.

    Each basis vector has a 1 in one free column and zeros in the other free
    columns; this is the reduction mod q of the canonical rational kernel
    basis whenever q divides no pivot denominator.
    """
    R, pivots = rref_mod(M, q)
    ncols = R.shape[1]
    free = [j for j in range(ncols) if j not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, j in enumerate(free):
        basis[i, j] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-int(R[r, j])) % q
    return basis


class IncrementalRank:
    """Maintains an echelon basis mod q; add() reports whether rank grew."""

    def __init__(self, ncols: int, q: int):
        self.q = q
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivot_cols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vec) -> bool:
        q = self.q
        v = np.asarray(vec, dtype=np.int64) % q
        for row, pc in zip(self.rows, self.pivot_cols):
            if v[pc]:
                v = (v - v[pc] * row) % q
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        v = v * pow(int(v[pc]), q - 2, q) % q
        self.rows.append(v)
        self.pivot_cols.append(pc)
        return True


def crt_pair(a1: int, q1: int, a2: int, q2: int) -> int:
    """x mod q1*q2 with x = a1 (q1), x = a2 (q2)."""
    inv = pow(q1 % q2, q2 - 2, q2) if is_probable_prime(q2) else pow(q1, -1, q2)
    t = (a2 - a1) % q2 * inv % q2
    return (a1 + q1 * t) % (q1 * q2)


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """The unique n/d = a mod m with |n|, d <= sqrt(m/2), or None.

    Half-extended Euclidean algorithm; d must be coprime to m.
    """
    a %= m
    if a == 0:
        return Fraction(0)
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        quo = r0 // r1
        r0, r1 = r1, r0 - quo * r1
        t0, t1 = t1, t0 - quo * t1
    if r1 == 0 or abs(t1) > bound or gcd(r1, t1) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if gcd(t1, m) != 1:
        return None
    return Fraction(r1, t1)


def lift_kernel_rows(kernels: list[tuple[np.ndarray, int]]) -> list[list[int]] | None:
    """Lift matching canonical kernel bases mod several primes to primitive
    integer rows.  Returns None if any entry fails rational reconstruction."""
    mats = [K for K, _ in kernels]
    shape = mats[0].shape
    if any(K.shape != shape for K in mats):
        return None
    out: list[list[int]] = []
    for i in range(shape[0]):
        fracs: list[Fraction] = []
        for j in range(shape[1]):
            a, m = int(mats[0][i, j]), kernels[0][1]
            for K, q in kernels[1:]:
                a = crt_pair(a, m, int(K[i, j]), q)
                m *= q
            f = rational_reconstruct(a, m)
            if f is None:
                return None
            fracs.append(f)
        out.append(primitive_integer_vector(fracs))
    return out


def primitive_integer_vector(fracs) -> list[int]:
    """Clear denominators, divide by content, make first nonzero entry positive."""
    fracs = [Fraction(x) for x in fracs]
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-x for x in ints]
            break
    return ints

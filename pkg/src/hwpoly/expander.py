"""Expansion of isobaric tableaux into highest weight polynomials.

The signed sum over all column permutation assignments is evaluated with a
product of per-column plain-changes orders (each step of the combined
iterator applies a single adjacent transposition in a single column, so the
global sign simply alternates) and with equivariant hash values that are
updated incrementally: a transposition touches two boxes, hence two block
sums.  Accumulation happens in flat arrays of p cells, one per hash scheme
in the chain; coefficients are read off at the end over the weight-lam
monomial domain.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from .hashing import DEFAULT_P_CAP, HashChain, build_hash_chain
from .hwp import HighestWeightPolynomial
from .monomials import MonomialClass, canonical_monomial
from .tableaux import IsobaricTableau, column_lengths, count_assignments

_CHUNK = 1 << 23


def sign_of(assignment) -> int:
    """Sign of a column permutation assignment: product of column signs."""
    sign = 1
    for perm in assignment:
        p = [v - 1 for v in perm]
        for i in range(len(p)):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                sign = -sign
    return sign


def word_class_of(assignment, tableau: IsobaricTableau) -> MonomialClass:
    """Monomial class of the reading word: block t collects the numbers
    assigned to the boxes whose tableau entry is t."""
    blocks: list[list[int]] = [[] for _ in range(tableau.d)]
    for i, perm in enumerate(assignment):
        col = tableau.column(i)
        if len(perm) != len(col):
            raise ValueError(f"assignment column {i} has wrong length")
        for pos, val in enumerate(perm):
            blocks[col[pos] - 1].append(val)
    return canonical_monomial(blocks)


@lru_cache(maxsize=256)
def plain_changes(m: int) -> tuple[int, ...]:
    """Adjacent-swap schedule visiting all m! permutations (plain changes).

    Entry s is the position j such that swapping j, j+1 maps the s-th
    permutation to the (s+1)-th.
    """
    if m <= 1:
        return ()
    inner = plain_changes(m - 1)
    sched: list[int] = []
    pos = m - 1  # position of the largest element
    direction = -1
    for k in range(len(inner) + 1):
        for _ in range(m - 1):
            sched.append(pos - 1 if direction < 0 else pos)
            pos += direction
        if k < len(inner):
            sched.append(inner[k] + (1 if pos == 0 else 0))
            direction = -direction
    return tuple(sched)


@lru_cache(maxsize=256)
def _perm_table(m: int) -> tuple[tuple[int, ...], ...]:
    """All m! permutations in plain-changes order."""
    perm = list(range(1, m + 1))
    out = [tuple(perm)]
    for j in plain_changes(m):
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
        out.append(tuple(perm))
    return tuple(out)


class _IterState:
    """Mutable Gray-product state over the active (height >= 2) columns.

    Digit 0 is the rightmost active column (fastest); the leftmost column is
    the slowest digit, so fixing its permutation index slices the iteration
    into contiguous ranges.
    """

    def __init__(self, tableau: IsobaricTableau, chain: HashChain, start: int):
        lam = tableau.shape
        mus = column_lengths(lam)
        ncols = len(mus)
        self.tableau = tableau
        self.chain = chain
        self.nrows = len(lam)
        self.d = tableau.d
        # column-major box layout
        self.col_off = np.zeros(ncols, dtype=np.int64)
        off = 0
        entries = []
        for i in range(ncols):
            self.col_off[i] = off
            col = tableau.column(i)
            entries.extend(col)
            off += len(col)
        self.boxentry = np.array(entries, dtype=np.int64)
        self.active = [i for i in range(ncols) if mus[i] >= 2]
        self.digits = list(reversed(self.active))  # digit 0 fastest
        self.radix = np.array([math.factorial(mus[i]) for i in self.digits], dtype=np.int64)
        self.total = count_assignments(lam)
        sched_parts = [plain_changes(mus[i]) for i in self.digits]
        self.sched_off = np.zeros(len(self.digits) + 1, dtype=np.int64)
        for i, s in enumerate(sched_parts):
            self.sched_off[i + 1] = self.sched_off[i] + len(s)
        self.sched_flat = np.array(
            [j for s in sched_parts for j in s] or [0], dtype=np.int64
        )
        self.digit_col_off = np.array(
            [self.col_off[i] for i in self.digits], dtype=np.int64
        )
        # schemes
        S = chain.depth
        self.ks = np.array([sc.k for sc in chain.schemes], dtype=np.int64)
        self.ps = np.array([sc.p for sc in chain.schemes], dtype=np.int64)
        self.iota2 = np.zeros((S, self.nrows + 1), dtype=np.int64)
        for s, sc in enumerate(chain.schemes):
            self.iota2[s, : len(sc.iota)] = sc.iota
        self.seek(start)

    def seek(self, index: int):
        """Position the state at the given linear iteration index."""
        if not 0 <= index < self.total:
            raise IndexError(f"iteration index {index} out of range")
        K = len(self.digits)
        self.g = np.zeros(K, dtype=np.int64)
        self.dirs = np.ones(K, dtype=np.int64)
        m = index
        for i in range(K):
            a = m % int(self.radix[i])
            m //= int(self.radix[i])
            if m % 2 == 0:
                self.g[i] = a
            else:
                self.g[i] = int(self.radix[i]) - 1 - a
                self.dirs[i] = -1
        self.sign = 1 if index % 2 == 0 else -1
        # materialize box values from per-column permutation tables
        mus = column_lengths(self.tableau.shape)
        vals = np.zeros(len(self.boxentry), dtype=np.int64)
        pos = {col: g for col, g in zip(self.digits, self.g)}
        for i in range(len(mus)):
            table = _perm_table(mus[i])
            perm = table[pos.get(i, 0)]
            base = int(self.col_off[i])
            for j, v in enumerate(perm):
                vals[base + j] = v
        self.boxvals = vals
        # block sums and hash values per scheme
        S = len(self.chain.schemes)
        self.B = np.zeros((S, self.d + 1), dtype=np.int64)
        self.gammas = np.zeros(S, dtype=np.int64)
        for s in range(S):
            p = int(self.ps[s])
            for b, t in zip(self.boxvals, self.boxentry):
                self.B[s, t] = (self.B[s, t] + self.iota2[s, b]) % p
            acc = 0
            for t in range(1, self.d + 1):
                acc += pow(int(self.B[s, t]), int(self.ks[s]), p)
            self.gammas[s] = acc % p

    def step_py(self) -> bool:
        """Advance one assignment (pure Python).  False when exhausted."""
        K = len(self.digits)
        i = 0
        while i < K and not (0 <= self.g[i] + self.dirs[i] < self.radix[i]):
            self.dirs[i] = -self.dirs[i]
            i += 1
        if i == K:
            return False
        if self.dirs[i] > 0:
            j = int(self.sched_flat[self.sched_off[i] + self.g[i]])
        else:
            j = int(self.sched_flat[self.sched_off[i] + self.g[i] - 1])
        self.g[i] += self.dirs[i]
        base = int(self.digit_col_off[i])
        a = int(self.boxvals[base + j])
        b = int(self.boxvals[base + j + 1])
        t1 = int(self.boxentry[base + j])
        t2 = int(self.boxentry[base + j + 1])
        self.boxvals[base + j] = b
        self.boxvals[base + j + 1] = a
        if t1 != t2:
            for s in range(len(self.chain.schemes)):
                p = int(self.ps[s])
                k = int(self.ks[s])
                gamma = int(self.gammas[s])
                gamma -= pow(int(self.B[s, t1]), k, p) + pow(int(self.B[s, t2]), k, p)
                self.B[s, t1] = (self.B[s, t1] + self.iota2[s, b] - self.iota2[s, a]) % p
                self.B[s, t2] = (self.B[s, t2] + self.iota2[s, a] - self.iota2[s, b]) % p
                gamma += pow(int(self.B[s, t1]), k, p) + pow(int(self.B[s, t2]), k, p)
                self.gammas[s] = gamma % p
        self.sign = -self.sign
        return True

    def current_assignment(self) -> tuple[tuple[int, ...], ...]:
        """Current per-column permutations (for tests and the naive bridge)."""
        mus = column_lengths(self.tableau.shape)
        out = []
        for i in range(len(mus)):
            base = int(self.col_off[i])
            out.append(tuple(int(v) for v in self.boxvals[base : base + mus[i]]))
        return tuple(out)


def _accumulate_py(state: _IterState, nsteps: int, arrays: list[np.ndarray]) -> int:
    """Pure-Python accumulate-and-advance loop over nsteps assignments."""
    chain = state.chain
    S = chain.depth
    masks = chain.ambiguous
    done = 0
    while done < nsteps:
        for s in range(S):
            if s == S - 1 or masks[s][int(state.gammas[s])] == 0:
                arrays[s][int(state.gammas[s])] += state.sign
                break
        done += 1
        if done == nsteps:
            break
        if not state.step_py():
            break
    return done


def _accumulate_numba(state: _IterState, nsteps: int, arrays: list[np.ndarray]) -> int:
    from ._kernel import gray_accumulate

    dummy_a = np.zeros(1, dtype=np.int64)
    dummy_m = np.zeros(1, dtype=np.uint8)
    A = list(arrays) + [dummy_a] * (4 - len(arrays))
    masks = list(state.chain.ambiguous) + [dummy_m] * (3 - len(state.chain.ambiguous))
    sign, done = gray_accumulate(
        nsteps,
        state.sign,
        state.g,
        state.dirs,
        state.radix,
        state.sched_flat,
        state.sched_off,
        state.digit_col_off,
        state.boxvals,
        state.boxentry,
        state.chain.depth,
        state.ks,
        state.ps,
        state.iota2,
        state.B,
        state.gammas,
        A[0], A[1], A[2], A[3],
        masks[0], masks[1], masks[2],
    )
    state.sign = int(sign)
    return int(done)


def _numba_available() -> bool:
    try:
        from . import _kernel  # noqa: F401
        return True
    except ImportError:
        return False


def _run_range(tableau, chain, start, stop, arrays, backend, progress, progress_base):
    state = _IterState(tableau, chain, start)
    accumulate = _accumulate_numba if backend == "numba" else _accumulate_py
    done = 0
    todo = stop - start
    while done < todo:
        step = min(_CHUNK, todo - done)
        got = accumulate(state, step, arrays)
        done += got
        if progress is not None:
            progress(progress_base + done, state.total)
        if got < step:
            break
    if done != todo:
        raise AssertionError(f"iteration ended early: {done} of {todo}")
    return arrays


def expand_hwv(
    tableau: IsobaricTableau,
    chain: HashChain | None = None,
    seed: int = 0,
    workers: int = 1,
    p_cap: int = DEFAULT_P_CAP,
    backend: str = "auto",
    progress=None,
) -> HighestWeightPolynomial:
    """Expand one tableau into its highest weight polynomial.

    The result is independent of the hash chain, the backend and the worker
    count; the chain only has to be verified for the tableau's weight.
    """
    tableau.validate()
    lam = tableau.shape
    total = count_assignments(lam)
    if total >= 2**63:
        raise OverflowError(
            f"{total} assignments for shape {lam} exceed the int64 accumulator bound"
        )
    if chain is None:
        chain = build_hash_chain(lam, tableau.d, tableau.c, seed=seed, p_cap=p_cap)
    if chain.weight != tuple(lam):
        raise ValueError(f"hash chain is for weight {chain.weight}, tableau has {lam}")
    if backend == "auto":
        backend = "numba" if total >= 200_000 and _numba_available() else "python"
    if backend == "numba" and not _numba_available():
        raise RuntimeError("numba backend requested but numba is not importable")

    def fresh_arrays():
        return [np.zeros(sc.p, dtype=np.int64) for sc in chain.schemes]

    # contiguous ranges that only cut at first-column permutation boundaries
    first_col_radix = 1
    mus = column_lengths(lam)
    if mus and mus[0] >= 2:
        first_col_radix = math.factorial(mus[0])
    block = total // first_col_radix
    nworkers = max(1, min(workers, first_col_radix))
    bounds = [round(w * first_col_radix / nworkers) for w in range(nworkers + 1)]
    ranges = [
        (bounds[w] * block, bounds[w + 1] * block)
        for w in range(nworkers)
        if bounds[w] < bounds[w + 1]
    ]

    if len(ranges) == 1:
        arrays = _run_range(tableau, chain, 0, total, fresh_arrays(), backend, progress, 0)
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            futures = [
                pool.submit(
                    _run_range, tableau, chain, lo, hi, fresh_arrays(), backend,
                    progress if w == 0 else None, lo,
                )
                for w, (lo, hi) in enumerate(ranges)
            ]
            parts = [f.result() for f in futures]
        arrays = parts[0]
        for other in parts[1:]:
            for acc, extra in zip(arrays, other):
                acc += extra

    terms: dict[MonomialClass, int] = {}
    for idx, mono in enumerate(chain.domain):
        level, cell = chain.lookup(idx)
        coef = int(arrays[level][cell])
        if coef:
            terms[mono] = coef
    return HighestWeightPolynomial(
        d=tableau.d, c=tableau.c, weight=tuple(lam), tableau=tableau,
        terms=terms, schemes=tuple((sc.k, sc.p, sc.seed) for sc in chain.schemes),
    )

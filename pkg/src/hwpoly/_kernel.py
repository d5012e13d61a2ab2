"""Numba inner loop for the Gray-coded expansion.

Kept in its own module so importing the package never pays the numba
compilation cost unless a large expansion actually runs.  All moduli stay
below 2^31, so every product in the repeated-squaring loop fits in int64.
"""

from __future__ import annotations

import numba
import numpy as np  # noqa: F401


@numba.njit(cache=True, inline="always")
def _powmod(base, k, p):
    result = np.int64(1)
    b = base % p
    e = k
    while e > 0:
        if e & 1:
            result = result * b % p
        b = b * b % p
        e >>= 1
    return result


@numba.njit(cache=True, nogil=True)
def gray_accumulate(
    nsteps,
    sign,
    g,
    dirs,
    radix,
    sched_flat,
    sched_off,
    digit_col_off,
    boxvals,
    boxentry,
    depth,
    ks,
    ps,
    iota2,
    B,
    gammas,
    A0, A1, A2, A3,
    amb0, amb1, amb2,
):
    K = g.shape[0]
    done = 0
    while done < nsteps:
        # accumulate at the first level whose cell is unambiguous
        if depth == 1 or amb0[gammas[0]] == 0:
            A0[gammas[0]] += sign
        elif depth == 2 or amb1[gammas[1]] == 0:
            A1[gammas[1]] += sign
        elif depth == 3 or amb2[gammas[2]] == 0:
            A2[gammas[2]] += sign
        else:
            A3[gammas[3]] += sign
        done += 1
        if done == nsteps:
            break
        # advance: one adjacent transposition in one column
        i = 0
        while i < K:
            gi = g[i] + dirs[i]
            if 0 <= gi < radix[i]:
                break
            dirs[i] = -dirs[i]
            i += 1
        if i == K:
            break
        if dirs[i] > 0:
            j = sched_flat[sched_off[i] + g[i]]
        else:
            j = sched_flat[sched_off[i] + g[i] - 1]
        g[i] += dirs[i]
        base = digit_col_off[i]
        a = boxvals[base + j]
        b = boxvals[base + j + 1]
        t1 = boxentry[base + j]
        t2 = boxentry[base + j + 1]
        boxvals[base + j] = b
        boxvals[base + j + 1] = a
        if t1 != t2:
            for s in range(depth):
                p = ps[s]
                k = ks[s]
                gamma = gammas[s] - _powmod(B[s, t1], k, p) - _powmod(B[s, t2], k, p)
                B[s, t1] = (B[s, t1] + iota2[s, b] - iota2[s, a]) % p
                B[s, t2] = (B[s, t2] + iota2[s, a] - iota2[s, b]) % p
                gamma += _powmod(B[s, t1], k, p) + _powmod(B[s, t2], k, p)
                gammas[s] = gamma % p
        sign = -sign
    return sign, done

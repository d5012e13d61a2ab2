"""Exact evaluation of highest weight polynomials at degree-c forms.

A block (multiset of c row indices) pairs with the form coefficient of the
matching exponent vector divided by its multinomial:  F_alpha = g_alpha /
binom(c; alpha).  This is the coordinate of the form in the symmetric
tensor basis, and it is the normalization under which expanded tableaux are
genuinely of highest weight: invariant under adding a multiple of a later
variable to an earlier one, and scaling with the weight under the torus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .hwp import HighestWeightPolynomial
from .monomials import MonomialClass


@dataclass
class FormSample:
    """Exact coefficient vector of one degree-c form in n variables."""

    n: int
    c: int
    coeffs: dict[tuple[int, ...], int | Fraction]

    def __post_init__(self):
        clean = {}
        for alpha, g in self.coeffs.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.n or sum(alpha) != self.c or any(a < 0 for a in alpha):
                raise ValueError(f"bad exponent vector {alpha} for n={self.n}, c={self.c}")
            if g:
                clean[alpha] = g
        self.coeffs = clean

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(
            isinstance(g, int) or (isinstance(g, Fraction) and g.denominator == 1)
            for g in self.coeffs.values()
        )


def block_exponent(block, n: int) -> tuple[int, ...]:
    alpha = [0] * n
    for r in block:
        alpha[r - 1] += 1
    return tuple(alpha)


def multinomial(c: int, alpha) -> int:
    out = math.factorial(c)
    for a in alpha:
        out //= math.factorial(a)
    return out


def block_coordinate(block, f: FormSample) -> Fraction:
    """Coordinate of f paired with one block: g_alpha / binom(c; alpha)."""
    if block and max(block) > f.n:
        raise ValueError(f"block {block} references row > n={f.n}")
    alpha = block_exponent(block, f.n)
    g = f.coeffs.get(alpha, 0)
    return Fraction(g) / multinomial(f.c, alpha)


def evaluate_hwp(hwp: HighestWeightPolynomial, f: FormSample) -> Fraction:
    """Exact value: sum over terms of coeff times the product of block coordinates."""
    if f.c != hwp.c:
        raise ValueError(f"form degree {f.c} != polynomial block size {hwp.c}")
    if len(hwp.weight) > f.n:
        raise ValueError(f"weight {hwp.weight} needs n >= {len(hwp.weight)}, form has {f.n}")
    cache: dict[tuple[int, ...], Fraction] = {}
    total = Fraction(0)
    for mono, coef in hwp.terms.items():
        prod = Fraction(coef)
        for block in mono:
            v = cache.get(block)
            if v is None:
                v = block_coordinate(block, f)
                cache[block] = v
            if not v:
                prod = Fraction(0)
                break
            prod *= v
        total += prod
    return total


def _block_values_mod(blocks, f: FormSample, q: int) -> dict[tuple[int, ...], int]:
    values = {}
    for block in blocks:
        alpha = block_exponent(block, f.n)
        g = f.coeffs.get(alpha, 0)
        if isinstance(g, Fraction):
            if g.denominator != 1:
                raise ValueError("modular evaluation requires integer coefficients")
            g = g.numerator
        m = multinomial(f.c, alpha)
        values[block] = g % q * pow(m % q, q - 2, q) % q
    return values


def evaluate_hwp_mod(hwp: HighestWeightPolynomial, f: FormSample, q: int) -> int:
    """evaluate_hwp reduced mod a prime q > c (so no multinomial vanishes)."""
    if q <= hwp.c:
        raise ValueError(f"modulus {q} must exceed the block size c={hwp.c}")
    if f.c != hwp.c:
        raise ValueError(f"form degree {f.c} != polynomial block size {hwp.c}")
    blocks = {b for mono in hwp.terms for b in mono}
    values = _block_values_mod(blocks, f, q)
    total = 0
    for mono, coef in hwp.terms.items():
        prod = coef % q
        for block in mono:
            prod = prod * values[block] % q
        total = (total + prod) % q
    return total


def monomial_values_mod(domain: list[MonomialClass], f: FormSample, q: int) -> np.ndarray:
    """Values of every monomial class in domain at f, mod q (vectorized)."""
    if q <= f.c:
        raise ValueError(f"modulus {q} must exceed the block size c={f.c}")
    blocks = sorted({b for mono in domain for b in mono})
    index = {b: i for i, b in enumerate(blocks)}
    vals = _block_values_mod(blocks, f, q)
    bv = np.array([vals[b] for b in blocks], dtype=np.int64)
    if not domain:
        return np.zeros(0, dtype=np.int64)
    depth = len(domain[0])
    mat = np.array([[index[b] for b in mono] for mono in domain], dtype=np.int64)
    out = np.ones(len(domain), dtype=np.int64)
    for t in range(depth):
        out = out * bv[mat[:, t]] % q
    return out


# ---------------------------------------------------------------------------
# substitutions used by the highest-weight certification laws


def scale_variables(f: FormSample, factors) -> FormSample:
    """x_r -> t_r * x_r:  g_alpha picks up prod t_r^alpha_r."""
    factors = [Fraction(t) for t in factors]
    if len(factors) != f.n:
        raise ValueError("need one scale factor per variable")
    coeffs = {}
    for alpha, g in f.coeffs.items():
        scale = Fraction(1)
        for t, a in zip(factors, alpha):
            scale *= t**a
        coeffs[alpha] = Fraction(g) * scale
    return FormSample(f.n, f.c, coeffs)


def add_multiple_of_variable(f: FormSample, r: int, s: int, t) -> FormSample:
    """Substitute x_r -> x_r + t * x_s (1-based variable indices, r != s)."""
    if r == s:
        raise ValueError("r and s must differ")
    t = Fraction(t)
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for alpha, g in f.coeffs.items():
        a_r = alpha[r - 1]
        for j in range(a_r + 1):
            # choose j of the a_r copies of x_r to become t*x_s
            new = list(alpha)
            new[r - 1] = a_r - j
            new[s - 1] += j
            term = Fraction(g) * math.comb(a_r, j) * t**j
            key = tuple(new)
            coeffs[key] = coeffs.get(key, Fraction(0)) + term
    return FormSample(f.n, f.c, coeffs)


def substitute_linear(f: FormSample, U) -> FormSample:
    """Full linear substitution x_i -> sum_j U[i][j] * x_j (exact)."""
    U = [[Fraction(v) for v in row] for row in U]
    if len(U) != f.n or any(len(row) != f.n for row in U):
        raise ValueError("substitution matrix must be n x n")
    coeffs: dict[tuple[int, ...], Fraction] = {}
    zero = tuple([0] * f.n)
    for alpha, g in f.coeffs.items():
        # expand prod_i (sum_j U[i][j] x_j)^alpha_i
        poly = {zero: Fraction(g)}
        for i, a in enumerate(alpha):
            for _ in range(a):
                nxt: dict[tuple[int, ...], Fraction] = {}
                for mono, coef in poly.items():
                    for j, u in enumerate(U[i]):
                        if not u:
                            continue
                        key = list(mono)
                        key[j] += 1
                        key = tuple(key)
                        nxt[key] = nxt.get(key, Fraction(0)) + coef * u
                poly = nxt
        for mono, coef in poly.items():
            coeffs[mono] = coeffs.get(mono, Fraction(0)) + coef
    return FormSample(f.n, f.c, coeffs)


# ---------------------------------------------------------------------------
# file format: '#form n=<n> c=<c>' then '<alpha comma list> <value>' lines


def write_form_file(path, f: FormSample) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"#form n={f.n} c={f.c}\n")
        for alpha in sorted(f.coeffs):
            g = f.coeffs[alpha]
            fh.write(",".join(str(a) for a in alpha) + f" {g}\n")


def read_form_file(path) -> FormSample:
    n = c = None
    coeffs: dict[tuple[int, ...], int | Fraction] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#form"):
                for part in line.split()[1:]:
                    key, val = part.split("=")
                    if key == "n":
                        n = int(val)
                    elif key == "c":
                        c = int(val)
                continue
            if n is None or c is None:
                raise ValueError(f"{path}:{lineno}: form data before #form header")
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: malformed form line {line!r}")
            alpha = tuple(int(x) for x in parts[0].split(","))
            value = Fraction(parts[1])
            coeffs[alpha] = int(value) if value.denominator == 1 else value
    if n is None or c is None:
        raise ValueError(f"{path}: missing #form header")
    return FormSample(n, c, coeffs)

"""Isotypic decomposition of the degree-d slice of a family's ideal.

For each weight lam the multiplicity a of the corresponding irreducible in
the d-th symmetric power of S^c is computed exactly by the alternating
weight-multiplicity sum over the Weyl group; tableaux are then expanded one
at a time (in seeded random order) and kept while they increase the rank of
their evaluation vectors at generic forms, until a independent highest
weight polynomials are found.  The kernel of their evaluations at family
samples gives the component's contribution b to the ideal; kernels are
lifted to primitive integer vectors and re-verified modulo an independent
prime and exactly over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np

from .evaluation import FormSample, evaluate_hwp, monomial_values_mod
from .families import FamilySpec, sample
from .hwp import HighestWeightPolynomial, combine_hwps
from .modular import (
    DEFAULT_PRIMES,
    IncrementalRank,
    lift_kernel_rows,
    nullspace_mod,
    rank_mod,
)
from .monomials import count_weight_monomials
from .seeding import derived_rng
from .tableaux import (
    check_partition,
    count_isobaric_tableaux,
    irrep_dimension,
    partitions_of,
)


class RankInstabilityError(RuntimeError):
    """Rank or kernel dimension failed to stabilize across primes/batches."""


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@lru_cache(maxsize=8192)
def plethysm_multiplicity(lam, d: int, c: int) -> int:
    """Multiplicity of the weight-lam irreducible in the d-th symmetric power
    of S^c, via the alternating sum over the Weyl group of weight-space
    dimensions:  sum_w sgn(w) m_{lam + rho - w(rho)}.
    """
    lam = check_partition(lam)
    if sum(lam) != d * c:
        return 0
    n = len(lam)
    rho = list(range(n - 1, -1, -1))
    total = 0
    for w in permutations(range(n)):
        nu = [lam[i] + rho[i] - rho[w[i]] for i in range(n)]
        if any(x < 0 for x in nu):
            continue
        total += _perm_sign(w) * count_weight_monomials(nu, d, c)
    return total


def random_form(rng, n: int, c: int, height: int = 100) -> FormSample:
    """A dense random integer form, used as a generic evaluation point."""
    from .families import _exponents

    while True:
        coeffs = {alpha: rng.randint(-height, height) for alpha in _exponents(n, c)}
        f = FormSample(n, c, coeffs)
        if not f.is_zero:
            return f


def _support_arrays(hwps: list[HighestWeightPolynomial], q: int):
    """Shared support of several polynomials plus per-polynomial (index, coeff
    mod q) arrays for fast batched evaluation."""
    union = sorted(set().union(*(hwp.terms.keys() for hwp in hwps)))
    pos = {m: i for i, m in enumerate(union)}
    per = []
    for hwp in hwps:
        idx = np.array([pos[m] for m in hwp.terms], dtype=np.int64)
        coef = np.array([v % q for v in hwp.terms.values()], dtype=np.int64)
        per.append((idx, coef))
    return union, per


def _evaluation_matrix(hwps, samples, q: int) -> np.ndarray:
    """Rows = samples, columns = polynomials, entries mod q."""
    if not hwps:
        return np.zeros((len(samples), 0), dtype=np.int64)
    union, per = _support_arrays(hwps, q)
    E = np.zeros((len(samples), len(hwps)), dtype=np.int64)
    for i, f in enumerate(samples):
        vals = monomial_values_mod(union, f, q)
        for j, (idx, coef) in enumerate(per):
            if idx.size:
                E[i, j] = int(np.sum(coef * vals[idx] % q) % q)
    return E


def _candidate_ids(total: int, known: list[int], rng):
    """Deterministic candidate order: database entries first, then a seeded
    shuffle (or lazy sampling when the tableau count is huge)."""
    seen = set(known)
    yield from sorted(seen)
    if total <= 10_000:
        rest = [i for i in range(total) if i not in seen]
        rng.shuffle(rest)
        yield from rest
    else:
        while len(seen) < total:
            i = rng.randrange(total)
            if i not in seen:
                seen.add(i)
                yield i


def select_basis(
    lam,
    d: int,
    c: int,
    db,
    seed: int = 0,
    height: int = 100,
    workers: int = 1,
    progress=None,
    max_extra: int = 400,
):
    """Pick multiplicity-many tableaux whose expansions are independent.

    Returns (a, [(tableau_rank, polynomial), ...]) with the list of length a;
    expansions are fetched from / stored into the database.  Aborts if the
    rank seen under a second prime and fresh generic forms disagrees.
    """
    lam = check_partition(lam)
    a = plethysm_multiplicity(lam, d, c)
    total = count_isobaric_tableaux(lam, d, c)
    assert a <= total
    if a == 0:
        return 0, []
    q1, q2 = DEFAULT_PRIMES[0], DEFAULT_PRIMES[1]
    npanel = 2 * a + 16
    rng_panel = derived_rng("panel", seed, c, d, lam, 1)
    panel = [random_form(rng_panel, len(lam), c, height) for _ in range(npanel)]
    rng_cand = derived_rng("candidates", seed, c, d, lam)
    tracker = IncrementalRank(npanel, q1)
    selected: list[tuple[int, HighestWeightPolynomial]] = []
    examined = 0
    for tid in _candidate_ids(total, db.known_ids(c, d, lam), rng_cand):
        hwp = db.get_or_expand(lam, d, c, tid, seed=seed, workers=workers, progress=progress)
        examined += 1
        if not hwp.is_zero:
            vec = _evaluation_matrix([hwp], panel, q1)[:, 0]
            if tracker.add(vec):
                selected.append((tid, hwp))
                if len(selected) == a:
                    break
        if examined >= a + max_extra:
            raise RankInstabilityError(
                f"weight {lam}: examined {examined} tableaux but found only "
                f"{len(selected)} of {a} independent polynomials"
            )
    if len(selected) < a:
        raise RankInstabilityError(
            f"weight {lam}: exhausted all {total} tableaux at rank "
            f"{len(selected)} < multiplicity {a}"
        )
    # confirm under an independent prime and fresh forms
    rng_check = derived_rng("panel", seed, c, d, lam, 2)
    panel2 = [random_form(rng_check, len(lam), c, height) for _ in range(npanel)]
    E2 = _evaluation_matrix([hwp for _, hwp in selected], panel2, q2)
    if rank_mod(E2, q2) != a:
        raise RankInstabilityError(
            f"weight {lam}: selected basis rank disagrees under second prime"
        )
    return a, selected


@dataclass
class IsotypicReport:
    """One weight's contribution to the degree-d ideal slice."""

    weight: tuple[int, ...]
    a: int
    b: int
    dim_irrep: int
    basis_ids: list[int] = field(default_factory=list)
    kernel: list[list[int]] = field(default_factory=list)
    combos: list[HighestWeightPolynomial] = field(default_factory=list)
    primes: tuple[int, ...] = ()
    samples_used: int = 0
    verified_exact: bool = False
    verified_second_prime: bool = False


def _family_samples(family, rng, count, height):
    return [sample(family, rng, height=height) for _ in range(count)]


def isotypic_kernel(
    lam,
    d: int,
    c: int,
    family: FamilySpec,
    db,
    seed: int = 0,
    height: int = 100,
    workers: int = 1,
    progress=None,
) -> IsotypicReport:
    """b = dim of the linear combinations of the weight-lam basis that vanish
    on the family, with the kernel basis lifted to primitive integer rows."""
    lam = check_partition(lam)
    if len(lam) > family.n:
        raise ValueError(f"weight {lam} needs n >= {len(lam)}, family has n={family.n}")
    dim_l = irrep_dimension(lam, family.n)
    a, selected = select_basis(
        lam, d, c, db, seed=seed, height=height, workers=workers, progress=progress
    )
    report = IsotypicReport(weight=lam, a=a, b=0, dim_irrep=dim_l)
    if a == 0:
        return report
    report.basis_ids = [tid for tid, _ in selected]
    hwps = [hwp for _, hwp in selected]
    base_m = a + 8

    def kernel_under(prime, prime_tag):
        count = base_m
        rng = derived_rng("kernel", seed, c, d, lam, prime_tag, 0)
        samples = _family_samples(family, rng, count, height)
        E = _evaluation_matrix(hwps, samples, prime)
        K = nullspace_mod(E, prime)
        for round_ in range(1, 5):
            rng_b = derived_rng("kernel", seed, c, d, lam, prime_tag, round_)
            extra = _family_samples(family, rng_b, count, height)
            E = np.vstack([E, _evaluation_matrix(hwps, extra, prime)])
            K2 = nullspace_mod(E, prime)
            if K2.shape[0] == K.shape[0]:
                return K2, E.shape[0]
            K = K2
        raise RankInstabilityError(
            f"weight {lam}: kernel dimension kept shrinking after {E.shape[0]} samples"
        )

    q_list = list(DEFAULT_PRIMES)
    K1, used1 = kernel_under(q_list[0], 1)
    K2, used2 = kernel_under(q_list[1], 2)
    if K1.shape[0] != K2.shape[0]:
        raise RankInstabilityError(
            f"weight {lam}: kernel dimension disagrees between primes "
            f"({K1.shape[0]} mod {q_list[0]} vs {K2.shape[0]} mod {q_list[1]})"
        )
    b = int(K1.shape[0])
    report.b = b
    report.primes = (q_list[0], q_list[1])
    report.samples_used = used1 + used2
    report.verified_second_prime = True
    if b == 0:
        return report
    kernels = [(K1, q_list[0]), (K2, q_list[1])]
    rows = lift_kernel_rows(kernels)
    tag = 3
    while rows is None and tag <= 4:
        K_extra, _ = kernel_under(q_list[tag - 1], tag)
        if K_extra.shape[0] != b:
            raise RankInstabilityError(
                f"weight {lam}: kernel dimension disagrees under prime {q_list[tag - 1]}"
            )
        kernels.append((K_extra, q_list[tag - 1]))
        report.primes = tuple(q for _, q in kernels)
        rows = lift_kernel_rows(kernels)
        tag += 1
    if rows is None:
        raise RankInstabilityError(
            f"weight {lam}: kernel entries failed rational reconstruction over "
            f"{len(kernels)} primes"
        )
    report.kernel = rows
    report.combos = [combine_hwps(row, hwps) for row in rows]
    # a-posteriori checks: exact vanishing at fresh samples, plus the lifted
    # rows must lie in the kernel seen by the second prime's samples
    rng_exact = derived_rng("exactcheck", seed, c, d, lam)
    fresh = _family_samples(family, rng_exact, 3, height)
    for combo in report.combos:
        if not combo.content_ok():
            raise AssertionError(f"weight {lam}: kernel combination broke the content invariant")
        for f in fresh:
            if evaluate_hwp(combo, f) != Fraction(0):
                raise RankInstabilityError(
                    f"weight {lam}: lifted kernel vector does not vanish exactly"
                )
    report.verified_exact = True
    return report


def ideal_slice(
    d: int,
    c: int,
    n: int,
    family: FamilySpec,
    db,
    seed: int = 0,
    height: int = 100,
    weight=None,
    workers: int = 1,
    progress=None,
) -> list[IsotypicReport]:
    """Reports for every weight of the degree-d slice, dominant weights first.

    The slice of the ideal is zero exactly when every b is zero.  Weights
    with no tableaux are skipped outright.
    """
    if family.c != c:
        raise ValueError(f"family produces degree {family.c}, asked for c={c}")
    if weight is not None:
        lams = [check_partition(weight)]
    else:
        lams = partitions_of(d * c, max_parts=n)
    out = []
    for lam in lams:
        if count_isobaric_tableaux(lam, d, c) == 0:
            continue
        out.append(
            isotypic_kernel(
                lam, d, c, family, db,
                seed=seed, height=height, workers=workers, progress=progress,
            )
        )
    return out


def format_reports(reports: list[IsotypicReport]) -> str:
    """The text report: one block per weight, kernel rows over the basis ids."""
    lines = []
    for rep in reports:
        weight = ",".join(str(x) for x in rep.weight)
        lines.append(f"weight={weight} a={rep.a} b={rep.b} dim_irrep={rep.dim_irrep}")
        if rep.a:
            lines.append("basis=" + ",".join(str(t) for t in rep.basis_ids))
        for row in rep.kernel:
            lines.append("kernel=" + " ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"

"""Exact samplers for GL-invariant families of forms.

A family is stored as its coordinate map: for every exponent vector alpha of
the target degree, an integer polynomial in the parameters.  Sampling plugs
integer parameter points into these polynomials, so samples are exact;
Jacobians come from exact formal differentiation of the same polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .evaluation import FormSample
from .modular import DEFAULT_PRIMES, rank_mod
from .seeding import derived_rng

# sparse polynomial in the parameters: exponent tuple -> integer coefficient
ParamPoly = dict[tuple[int, ...], int]


def _poly_add(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    out = dict(a)
    for e, v in b.items():
        w = out.get(e, 0) + v
        if w:
            out[e] = w
        else:
            out.pop(e, None)
    return out


def _poly_eval(a: ParamPoly, point) -> int:
    total = 0
    for e, v in a.items():
        term = v
        for x, k in zip(point, e):
            if k:
                term *= x**k
        total += term
    return total


def _poly_diff(a: ParamPoly, j: int) -> ParamPoly:
    out: ParamPoly = {}
    for e, v in a.items():
        if e[j]:
            le = list(e)
            le[j] -= 1
            out[tuple(le)] = v * e[j]
    return out


def _poly_degree(a: ParamPoly) -> int:
    return max((sum(e) for e in a), default=0)


@dataclass
class FamilySpec:
    """A polynomial map from parameter space into degree-c forms in n variables."""

    kind: str  # 'symmetroid' | 'veronese' | 'generic'
    n: int
    c: int
    nparams: int
    coords: dict[tuple[int, ...], ParamPoly]
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for alpha in self.coords:
            if len(alpha) != self.n or sum(alpha) != self.c:
                raise ValueError(f"coordinate exponent {alpha} not of degree c={self.c}")


def _exponents(n: int, c: int):
    """All exponent vectors of total degree c in n variables, lexicographic."""
    out = []

    def rec(i, rem, acc):
        if i == n - 1:
            out.append(tuple(acc) + (rem,))
            return
        for v in range(rem, -1, -1):
            acc.append(v)
            rec(i + 1, rem - v, acc)
            acc.pop()

    rec(0, c, [])
    return out


def ambient_dimension(n: int, c: int) -> int:
    """dim of the space of degree-c forms in n variables."""
    import math

    return math.comb(n + c - 1, c)


def _sym_param_layout(m: int, n: int, sliced: bool):
    """Parameter slots for n symmetric m x m matrices; the sliced layout keeps
    only the diagonal of the first matrix."""
    slots = []
    for i in range(n):
        for u in range(m):
            for v in range(u, m):
                if sliced and i == 0 and u != v:
                    continue
                slots.append((i, u, v))
    return slots


def _det_param_poly(m: int, n: int, sliced: bool) -> dict[tuple[int, ...], ParamPoly]:
    """Coefficients of det(sum_i x_i A_i) as polynomials in the matrix entries.

    Works in the joint ring Z[x][params] with keys (x-exponent, param-exponent)
    and expands the determinant by cofactors along rows with a subset cache.
    """
    slots = _sym_param_layout(m, n, sliced)
    slot_index = {s: j for j, s in enumerate(slots)}
    nparams = len(slots)
    zero_x = tuple([0] * n)

    def entry(u, v):
        # sum_i x_i * param(i, u, v); symmetric access
        poly = {}
        for i in range(n):
            key = (i, u, v) if u <= v else (i, v, u)
            if key not in slot_index:
                continue
            xexp = list(zero_x)
            xexp[i] = 1
            pexp = [0] * nparams
            pexp[slot_index[key]] = 1
            poly[(tuple(xexp), tuple(pexp))] = 1
        return poly

    def jmul(a, b):
        out = {}
        for (xa, pa), va in a.items():
            for (xb, pb), vb in b.items():
                key = (
                    tuple(x + y for x, y in zip(xa, xb)),
                    tuple(x + y for x, y in zip(pa, pb)),
                )
                w = out.get(key, 0) + va * vb
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return out

    def jadd(a, b, sign):
        out = dict(a)
        for key, v in b.items():
            w = out.get(key, 0) + sign * v
            if w:
                out[key] = w
            else:
                out.pop(key, None)
        return out

    # minors[S] = det of rows (m-|S|..m-1) on column set S, built bottom-up
    minors = {(): {(zero_x, tuple([0] * nparams)): 1}}
    for size in range(1, m + 1):
        row = m - size
        nxt = {}
        for cols in combinations(range(m), size):
            acc: dict = {}
            for pos, col in enumerate(cols):
                rest = cols[:pos] + cols[pos + 1 :]
                term = jmul(entry(row, col), minors[rest])
                acc = jadd(acc, term, 1 if pos % 2 == 0 else -1)
            nxt[cols] = acc
        minors = nxt
    full = minors[tuple(range(m))]
    coords: dict[tuple[int, ...], ParamPoly] = {}
    for (xexp, pexp), v in full.items():
        coords.setdefault(xexp, {})[pexp] = v
    return coords


def symmetroid_family(m: int, n: int, sliced: bool = False) -> FamilySpec:
    """Determinants of n-variable pencils of symmetric m x m matrices (c = m).

    With sliced=True the first matrix is restricted to its diagonal, the
    coordinate choice under which fiber dimensions are usually quoted.
    """
    if m > 6:
        raise ValueError("symmetroid determinant expansion supported for m <= 6")
    coords = _det_param_poly(m, n, sliced)
    slots = _sym_param_layout(m, n, sliced)
    label = f"symmetroid:{m}" + (" (sliced)" if sliced else "")
    return FamilySpec(
        kind="symmetroid", n=n, c=m, nparams=len(slots), coords=coords,
        label=label, meta={"m": m, "sliced": sliced},
    )


def veronese_family(n: int, c: int) -> FamilySpec:
    """Powers of linear forms: parameters are the n coefficients of the form."""
    zero = tuple([0] * n)
    poly: dict[tuple[int, ...], ParamPoly] = {zero: {tuple([0] * n): 1}}
    linear = {}
    for r in range(n):
        xexp = [0] * n
        xexp[r] = 1
        pexp = [0] * n
        pexp[r] = 1
        linear[(tuple(xexp), tuple(pexp))] = 1
    # (sum_r a_r x_r)^c in the joint ring
    joint = {(zero, tuple([0] * n)): 1}
    for _ in range(c):
        nxt: dict = {}
        for (xa, pa), va in joint.items():
            for (xb, pb), vb in linear.items():
                key = (
                    tuple(x + y for x, y in zip(xa, xb)),
                    tuple(x + y for x, y in zip(pa, pb)),
                )
                nxt[key] = nxt.get(key, 0) + va * vb
        joint = nxt
    coords: dict[tuple[int, ...], ParamPoly] = {}
    for (xexp, pexp), v in joint.items():
        coords.setdefault(xexp, {})[pexp] = v
    return FamilySpec(
        kind="veronese", n=n, c=c, nparams=n, coords=coords, label="veronese"
    )


def sample(spec: FamilySpec, rng, height: int = 100, max_retries: int = 32) -> FormSample:
    """Draw integer parameters uniformly in [-height, height] and push through
    the family map exactly; all-zero outputs are redrawn."""
    if height < 1:
        raise ValueError("height must be >= 1")
    for _ in range(max_retries):
        point = [rng.randint(-height, height) for _ in range(spec.nparams)]
        coeffs = {}
        for alpha, poly in spec.coords.items():
            g = _poly_eval(poly, point)
            if g:
                coeffs[alpha] = g
        if coeffs:
            return FormSample(spec.n, spec.c, coeffs)
    raise RuntimeError(f"family {spec.label}: {max_retries} zero draws in a row")


def jacobian_matrix(spec: FamilySpec, point) -> list[list[int]]:
    """d(coordinates)/d(parameters) at an integer point, exact."""
    alphas = sorted(spec.coords)
    rows = []
    for alpha in alphas:
        poly = spec.coords[alpha]
        rows.append([_poly_eval(_poly_diff(poly, j), point) for j in range(spec.nparams)])
    return rows


def jacobian_rank(spec: FamilySpec, rng, height: int = 100) -> int:
    """Rank of the Jacobian at a random point = dim of the image closure.

    Computed mod two fixed primes at two independent points; a disagreement
    means a special point was drawn, so it is redrawn.
    """
    q1, q2 = DEFAULT_PRIMES[0], DEFAULT_PRIMES[1]
    for _ in range(6):
        ranks = set()
        for _ in range(2):
            point = [rng.randint(-height, height) for _ in range(spec.nparams)]
            J = jacobian_matrix(spec, point)
            ranks.add(rank_mod(J, q1))
            ranks.add(rank_mod(J, q2))
        if len(ranks) == 1:
            return ranks.pop()
    raise RuntimeError(f"family {spec.label}: jacobian rank did not stabilize")


# ---------------------------------------------------------------------------
# generic family files:
#   #family generic n=<n> c=<c> params=<a>
#   <alpha comma list> : <plus-separated monomials coef*p1^e1*...>


def _parse_param_monomial(text: str, nparams: int) -> tuple[tuple[int, ...], int]:
    coef = 1
    exp = [0] * nparams
    for factor in text.split("*"):
        factor = factor.strip()
        if not factor:
            raise ValueError("empty factor")
        if factor.lstrip("+-").isdigit():
            coef *= int(factor)
            continue
        if not factor.startswith("p"):
            raise ValueError(f"bad factor {factor!r}")
        body = factor[1:]
        if "^" in body:
            idx, power = body.split("^")
        else:
            idx, power = body, "1"
        j = int(idx) - 1
        if not 0 <= j < nparams:
            raise ValueError(f"parameter p{idx} out of range")
        exp[j] += int(power)
    return tuple(exp), coef


def parse_generic_family(text: str, label: str = "generic") -> FamilySpec:
    n = c = nparams = None
    coords: dict[tuple[int, ...], ParamPoly] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#family"):
            parts = line.split()
            if "generic" not in parts:
                raise ValueError(f"line {lineno}: only generic family files supported")
            for part in parts[1:]:
                if "=" in part:
                    key, val = part.split("=")
                    if key == "n":
                        n = int(val)
                    elif key == "c":
                        c = int(val)
                    elif key == "params":
                        nparams = int(val)
            continue
        if n is None or c is None or nparams is None:
            raise ValueError(f"line {lineno}: coordinate before #family header")
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected '<alpha> : <polynomial>'")
        alpha_text, poly_text = line.split(":", 1)
        alpha = tuple(int(x) for x in alpha_text.strip().split(","))
        poly: ParamPoly = {}
        for mono_text in poly_text.split("+"):
            mono_text = mono_text.strip()
            if not mono_text:
                continue
            exp, coef = _parse_param_monomial(mono_text, nparams)
            w = poly.get(exp, 0) + coef
            if w:
                poly[exp] = w
            else:
                poly.pop(exp, None)
        if poly:
            coords[alpha] = _poly_add(coords.get(alpha, {}), poly)
    if n is None or c is None or nparams is None:
        raise ValueError("missing #family header")
    degrees = {_poly_degree(p) for p in coords.values() if p}
    if len(degrees) > 1:
        raise ValueError(
            f"generic family components must be homogeneous of equal parameter "
            f"degree; found degrees {sorted(degrees)}"
        )
    for alpha, poly in coords.items():
        for e in poly:
            if sum(e) != max(degrees, default=0):
                raise ValueError(
                    f"coordinate {alpha}: non-homogeneous parameter polynomial"
                )
    return FamilySpec(
        kind="generic", n=n, c=c, nparams=nparams, coords=coords, label=label
    )


def read_generic_family(path) -> FamilySpec:
    with open(path, encoding="utf-8") as fh:
        return parse_generic_family(fh.read(), label=f"generic:{path}")

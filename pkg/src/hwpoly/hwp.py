"""Highest weight polynomials and their on-disk format.

Text format (UTF-8, LF), one term per line between a fixed header and a
``#terms`` integrity trailer::

    #hwp v1
    #params d=2 c=2
    #weight 2,2
    #tableau 1,1,2,2
    #hash k=17 p=101 seed=12345
    2 1,1;2,2
    -2 1,2;1,2
    #terms 2

``#hash`` lines repeat once per scheme of the chain that produced the file
(zero or more); ``#tableau -`` marks a polynomial that is not the expansion
of a single tableau (e.g. a kernel combination).  Files ending in ``.gz``
are gzip-compressed transparently.
"""

from __future__ import annotations

import gzip
from dataclasses import dataclass, field

from .monomials import MonomialClass, monomial_content
from .tableaux import IsobaricTableau, Partition, tableau_from_rows


class HwpParseError(ValueError):
    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


@dataclass
class HighestWeightPolynomial:
    """Sparse integer combination of monomial classes of one weight."""

    d: int
    c: int
    weight: Partition
    tableau: IsobaricTableau | None
    terms: dict[MonomialClass, int] = field(default_factory=dict)
    schemes: tuple[tuple[int, int, int], ...] = ()  # (k, p, seed) per hash level

    def __post_init__(self):
        self.terms = {m: int(v) for m, v in self.terms.items() if v}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[MonomialClass, int]]:
        return sorted(self.terms.items())

    def content_ok(self) -> bool:
        """Every monomial in the support must have content equal to the weight."""
        nrows = len(self.weight)
        return all(
            monomial_content(m, nrows) == tuple(self.weight) for m in self.terms
        )

    def same_polynomial(self, other: "HighestWeightPolynomial") -> bool:
        return (
            (self.d, self.c, self.weight) == (other.d, other.c, other.weight)
            and self.terms == other.terms
        )


def combine_hwps(coeffs, hwps) -> HighestWeightPolynomial:
    """Integer linear combination of polynomials of one (d, c, weight)."""
    hwps = list(hwps)
    if not hwps:
        raise ValueError("empty combination")
    head = hwps[0]
    terms: dict[MonomialClass, int] = {}
    for coef, hwp in zip(coeffs, hwps, strict=True):
        if (hwp.d, hwp.c, hwp.weight) != (head.d, head.c, head.weight):
            raise ValueError("cannot combine polynomials of different weights")
        for mono, v in hwp.terms.items():
            terms[mono] = terms.get(mono, 0) + int(coef) * v
    return HighestWeightPolynomial(
        d=head.d, c=head.c, weight=head.weight, tableau=None, terms=terms
    )


def _open_text(path, mode):
    path = str(path)
    if path.endswith(".gz"):
        return gzip.open(path, mode + "t", encoding="utf-8", newline="\n")
    return open(path, mode, encoding="utf-8", newline="\n")


def _format_monomial(mono: MonomialClass) -> str:
    return ";".join(",".join(str(r) for r in block) for block in mono)


def _parse_monomial(text: str) -> MonomialClass:
    return tuple(
        tuple(int(r) for r in block.split(","))
        for block in text.split(";")
    )


def write_hwp_file(path, hwp: HighestWeightPolynomial) -> None:
    with _open_text(path, "w") as fh:
        fh.write("#hwp v1\n")
        fh.write(f"#params d={hwp.d} c={hwp.c}\n")
        fh.write("#weight " + ",".join(str(x) for x in hwp.weight) + "\n")
        if hwp.tableau is not None:
            fh.write("#tableau " + ",".join(str(v) for v in hwp.tableau.filling_rowmajor) + "\n")
        else:
            fh.write("#tableau -\n")
        for k, p, seed in hwp.schemes:
            fh.write(f"#hash k={k} p={p} seed={seed}\n")
        count = 0
        for mono, coef in hwp.sorted_terms():
            fh.write(f"{coef} {_format_monomial(mono)}\n")
            count += 1
        fh.write(f"#terms {count}\n")


def _parse_kv(parts, path, lineno):
    out = {}
    for part in parts:
        if "=" not in part:
            raise HwpParseError(path, lineno, f"expected key=value, got {part!r}")
        key, val = part.split("=", 1)
        out[key] = int(val)
    return out


def read_hwp_file(path) -> HighestWeightPolynomial:
    d = c = None
    weight: Partition | None = None
    filling: list[int] | None = None
    schemes: list[tuple[int, int, int]] = []
    terms: dict[MonomialClass, int] = {}
    trailer: int | None = None
    with _open_text(path, "r") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            if lineno == 1:
                if line != "#hwp v1":
                    raise HwpParseError(path, lineno, "missing '#hwp v1' header")
                continue
            if line.startswith("#params "):
                kv = _parse_kv(line.split()[1:], path, lineno)
                d, c = kv.get("d"), kv.get("c")
            elif line.startswith("#weight "):
                weight = tuple(int(x) for x in line.split(None, 1)[1].split(","))
            elif line.startswith("#tableau"):
                body = line.split(None, 1)[1] if " " in line else "-"
                filling = None if body == "-" else [int(x) for x in body.split(",")]
            elif line.startswith("#hash "):
                kv = _parse_kv(line.split()[1:], path, lineno)
                if not {"k", "p", "seed"} <= kv.keys():
                    raise HwpParseError(path, lineno, "truncated #hash line")
                schemes.append((kv["k"], kv["p"], kv["seed"]))
            elif line.startswith("#terms "):
                trailer = int(line.split()[1])
            elif line.startswith("#"):
                raise HwpParseError(path, lineno, f"unknown header line {line!r}")
            else:
                if trailer is not None:
                    raise HwpParseError(path, lineno, "term after #terms trailer")
                parts = line.split(None, 1)
                if len(parts) != 2:
                    raise HwpParseError(path, lineno, f"malformed term line {line!r}")
                try:
                    coef = int(parts[0])
                    mono = _parse_monomial(parts[1])
                except ValueError as exc:
                    raise HwpParseError(path, lineno, f"malformed term line: {exc}") from None
                if mono in terms:
                    raise HwpParseError(path, lineno, "duplicate monomial")
                terms[mono] = coef
    if d is None or c is None or weight is None:
        raise HwpParseError(path, 0, "missing #params or #weight header")
    if trailer is None:
        raise HwpParseError(path, 0, "missing #terms trailer (truncated file?)")
    if trailer != len(terms):
        raise HwpParseError(path, 0, f"#terms says {trailer}, file has {len(terms)}")
    tableau = None
    if filling is not None:
        rows = []
        pos = 0
        for length in weight:
            rows.append(filling[pos : pos + length])
            pos += length
        if pos != len(filling):
            raise HwpParseError(path, 0, "#tableau length does not match weight")
        tableau = tableau_from_rows(rows, d=d, c=c)
    return HighestWeightPolynomial(
        d=d, c=c, weight=weight, tableau=tableau, terms=terms, schemes=tuple(schemes)
    )

"""Dimension bookkeeping for a family: source, ambient, image and fiber.

dim V is the parameter count, dim W the ambient form space, dim X the rank
of the Jacobian at a random point (exact, two primes, two points), and the
generic fiber dimension is dim V - dim X.  Symmetroids are reported in two
parameter conventions: the raw one (all matrices fully symmetric) and the
sliced one (first matrix diagonal), which is how their fiber dimensions are
usually quoted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import FamilySpec, ambient_dimension, jacobian_rank, symmetroid_family
from .seeding import derived_rng


@dataclass
class DimensionsReport:
    label: str
    dim_W: int
    conventions: dict[str, tuple[int, int, int, int]]  # name -> (V, W, X, fiber)
    primary: str

    @property
    def primary_tuple(self) -> tuple[int, int, int, int]:
        return self.conventions[self.primary]

    def projective_codim(self) -> int:
        _, dim_w, dim_x, _ = self.primary_tuple
        return (dim_w - 1) - (dim_x - 1)

    def format(self) -> str:
        lines = [f"family={self.label} dim_W={self.dim_W}"]
        for name in sorted(self.conventions, key=lambda k: k != self.primary):
            v, w, x, fib = self.conventions[name]
            lines.append(
                f"{name}: dim_V={v} dim_W={w} dim_X={x} fiber_dim={fib}"
            )
        return "\n".join(lines) + "\n"


def dimensions(family: FamilySpec, seed: int = 0, height: int = 100) -> DimensionsReport:
    """(dim V, dim W, dim X, fiber dim) for the family, in every convention."""
    dim_w = ambient_dimension(family.n, family.c)
    conventions: dict[str, tuple[int, int, int, int]] = {}

    def measure(spec: FamilySpec, name: str, tag):
        rng = derived_rng("dimension", seed, spec.label, tag)
        rank = jacobian_rank(spec, rng, height=height)
        conventions[name] = (spec.nparams, dim_w, rank, spec.nparams - rank)

    measure(family, "raw", 0)
    primary = "raw"
    if family.kind == "symmetroid" and not family.meta.get("sliced"):
        sliced = symmetroid_family(family.meta["m"], family.n, sliced=True)
        measure(sliced, "sliced", 1)
        primary = "sliced"
    return DimensionsReport(
        label=family.label, dim_W=dim_w, conventions=conventions, primary=primary
    )

"""Exact isotypic decomposition of vanishing ideals of GL-invariant families.

The pipeline: enumerate isobaric semistandard tableaux for each weight,
expand them into highest weight polynomials over the monomial basis of the
symmetric power (Gray-coded signed summation with equivariant hashing),
evaluate the expansions at exact random points of a family, and read off
the kernel of the evaluation matrix weight by weight.
"""

from .dimension import DimensionsReport, dimensions
from .equations import (
    IsotypicReport,
    ideal_slice,
    isotypic_kernel,
    plethysm_multiplicity,
    select_basis,
)
from .evaluation import (
    FormSample,
    block_coordinate,
    evaluate_hwp,
    evaluate_hwp_mod,
    read_form_file,
    write_form_file,
)
from .expander import expand_hwv, sign_of, word_class_of
from .families import (
    FamilySpec,
    jacobian_rank,
    read_generic_family,
    sample,
    symmetroid_family,
    veronese_family,
)
from .hashing import HashChain, HashScheme, build_hash_chain, verify_hash_scheme
from .hwp import (
    HighestWeightPolynomial,
    combine_hwps,
    read_hwp_file,
    write_hwp_file,
)
from .monomials import MonomialClass, canonical_monomial, enumerate_weight_monomials
from .tableaux import (
    IsobaricTableau,
    Partition,
    column_lengths,
    count_assignments,
    count_isobaric_tableaux,
    enumerate_isobaric_tableaux,
    irrep_dimension,
    tableau_from_rows,
    unrank_isobaric_tableau,
)

__version__ = "0.1.0"

__all__ = [
    "DimensionsReport",
    "FamilySpec",
    "FormSample",
    "HashChain",
    "HashScheme",
    "HighestWeightPolynomial",
    "IsobaricTableau",
    "IsotypicReport",
    "MonomialClass",
    "Partition",
    "block_coordinate",
    "build_hash_chain",
    "canonical_monomial",
    "column_lengths",
    "combine_hwps",
    "count_assignments",
    "count_isobaric_tableaux",
    "dimensions",
    "enumerate_isobaric_tableaux",
    "enumerate_weight_monomials",
    "evaluate_hwp",
    "evaluate_hwp_mod",
    "expand_hwv",
    "ideal_slice",
    "irrep_dimension",
    "isotypic_kernel",
    "jacobian_rank",
    "plethysm_multiplicity",
    "read_form_file",
    "read_generic_family",
    "read_hwp_file",
    "sample",
    "select_basis",
    "sign_of",
    "symmetroid_family",
    "tableau_from_rows",
    "unrank_isobaric_tableau",
    "veronese_family",
    "verify_hash_scheme",
    "word_class_of",
    "write_form_file",
    "write_hwp_file",
]

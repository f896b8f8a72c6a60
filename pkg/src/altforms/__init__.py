"""Exact computations with alternating multilinear forms over GF(p) and QQ."""

from .errors import (
    AltFormsError,
    BudgetExceeded,
    Degenerate,
    DimensionTooSmall,
    No2SingularSubspace,
    NonExactDivision,
    NoSingularLineFound,
    NotBinomialDimension,
    ParseError,
    SingularMatrix,
    SymbolicBoundExceeded,
)
from .exterior import (
    FormVector,
    Multivector,
    divided_power,
    map_power,
    pair,
    pair_reference,
    pfaffian,
    vector_contract_volume,
    wedge,
)
from .fileformat import parse_form, serialize_form
from .forms import (
    AltForm,
    builtin,
    example_n6,
    fano7,
    gl_act,
    is_nondegenerate,
    is_singular_subspace,
    killing_sl,
    radical,
    random_form,
    triple_sum,
)
from .linalg import Matrix, Subspace, kernel, random_invertible, span
from .rings import GF, QQ, FieldSpec, HomogPoly, ModP, PolyRing
from .singular import (
    enumerate_singular_lines,
    f_eval,
    f_poly,
    find_singular_line,
    find_singular_space,
    quadratic_definiteness,
)
from .twosingular import (
    canonical_form,
    codim_bound,
    enumerate_2_singular,
    is_2_singular,
    normalize,
    predicted_singular_lines,
)

__version__ = "0.1.0"

__all__ = [
    "parse_form",
    "serialize_form",
    "Matrix",
    "Subspace",
    "kernel",
    "random_invertible",
    "span",
    "GF",
    "QQ",
    "FieldSpec",
    "HomogPoly",
    "ModP",
    "PolyRing",
    "AltFormsError",
    "BudgetExceeded",
    "Degenerate",
    "DimensionTooSmall",
    "No2SingularSubspace",
    "NonExactDivision",
    "NoSingularLineFound",
    "NotBinomialDimension",
    "ParseError",
    "SingularMatrix",
    "SymbolicBoundExceeded",
    "FormVector",
    "Multivector",
    "divided_power",
    "map_power",
    "pair",
    "pair_reference",
    "pfaffian",
    "vector_contract_volume",
    "wedge",
    "AltForm",
    "builtin",
    "example_n6",
    "fano7",
    "gl_act",
    "is_nondegenerate",
    "is_singular_subspace",
    "killing_sl",
    "radical",
    "random_form",
    "triple_sum",
    "enumerate_singular_lines",
    "f_eval",
    "f_poly",
    "find_singular_line",
    "find_singular_space",
    "quadratic_definiteness",
    "canonical_form",
    "codim_bound",
    "enumerate_2_singular",
    "is_2_singular",
    "normalize",
    "predicted_singular_lines",
]

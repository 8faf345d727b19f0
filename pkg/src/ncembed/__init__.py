"""Exact workbench for reduction systems on free algebras: Diamond Lemma
certification, few-generator embedding builders, semigroup word certificates,
integer tensor-ring constructions, coproduct normal forms, and operator
realizations."""

from .rings import CoeffRing, QPoly
from .freealg import (
    Alphabet,
    FreePoly,
    MonomialOrder,
    ParseError,
    format_poly,
    format_word,
    parse_poly,
    poly_add,
    poly_mul,
    word_from_text,
)
from .rewrite import (
    Ambiguity,
    DiamondReport,
    FuelExhausted,
    ReductionSystem,
    Rule,
    check_diamond,
    find_ambiguities,
    irreducible_words,
    normal_form,
    reduce_at,
    subalgebra_span,
)
from .embed import (
    AlgebraPresentation,
    AssociativityError,
    EmbeddingReport,
    FamilyVerdict,
    build_central,
    build_nonunital,
    build_three_gen,
    build_two_gen,
    check_word_family,
    verify_embedding,
)
from .semigroup import (
    Factorization,
    IdealExtVerdict,
    IsolationVerdict,
    WordFamily,
    check_ideal_extension,
    factorize_xy_family,
    is_isolated,
    unique_factorization_check,
)
from .tensorring import (
    FgAbGroup,
    GradedElement,
    PairEmbedding,
    TensorPower,
    ZAlgebra,
    ZModuleMap,
    build_pair_embedding,
    graded_component,
    reduce_graded,
    reduction_map,
    smith_normal_form,
    tensor_product,
)
from .coproduct import (
    Coproduct,
    CoproductElement,
    DecomposedAlgebra,
    alternating_word_count,
    check_ideal_extension_in_coproduct,
    coproduct_mul,
    summand_closure_check,
    tensor_subalgebra,
)
from .operators import (
    ShiftRealization,
    TruncatedDirectSum,
    build_shift_operators,
    check_relations,
    cross_validate,
    matrix_two_generators,
    regular_action,
)

__version__ = "0.1.0"

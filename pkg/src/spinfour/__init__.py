"""spinfour: rank-4 bundles over the 4-sphere and 4-manifold parallelizability.

The pipeline, bottom to top: quaternion arithmetic identifies R^4 with the
quaternions; left multiplication and conjugation by unit quaternions generate
clutching maps of the 3-sphere into SO(4); the double cover by pairs of unit
quaternions lifts such maps to pairs of sphere self-maps; their mapping
degrees (exact for words, quadrature or preimage counting for black boxes)
produce the Euler and Pontryagin numbers classifying the bundle; and those
same two integers plus the Stiefel-Whitney flag decide whether a closed
orientable 4-manifold admits a trivial tangent bundle.
"""

from .bundles import (
    BundleClass,
    class_from_degrees,
    classify_numeric,
    classify_word,
    tangent_bundle_word,
)
from .degree import (
    CallableMap,
    DegreeMethod,
    DegreeResult,
    PowerMap,
    ProductMap,
    degree_exact,
    degree_integral,
    degree_preimage,
    find_preimages,
    product_map,
)
from .errors import (
    DecompositionError,
    GridCoarseError,
    ManifoldInputError,
    MethodDisagreementError,
    NonRegularValueError,
    NumericalFailure,
    ObstructionError,
    ResolutionError,
    ValidationError,
    WordParseError,
)
from .hopf import HopfGrid
from .manifolds import (
    IntersectionFormInput,
    ManifoldData,
    ParallelizabilityDecision,
    Provenance,
    UnimodularityWarning,
    catalog,
    catalog_entry,
    characteristic_from_form,
    e8_form,
    hyperbolic_form,
    is_parallelizable,
    load_manifolds,
    obstruction_degrees,
)
from .maps import (
    BlackBoxMap,
    LiftedPair,
    MapToSO4,
    WordMap,
    evaluate,
    lift_numeric,
    lift_word,
    pointwise_inverse,
    pointwise_product,
)
from .quaternions import (
    QI,
    QJ,
    QK,
    QONE,
    as_vec4,
    from_vec4,
    qconj,
    qinv,
    qmul,
    qnorm,
    qnormalize,
    qpow,
    random_unit,
)
from .rotations import (
    conjugation_matrix,
    double_cover,
    is_so4,
    isoclinic_decompose,
    left_mult_matrix,
    require_so4,
    right_mult_matrix,
)
from .verify import run_verification
from .words import EMPTY_WORD, Generator, GeneratorWord, Letter, format_word, parse_word

__version__ = "0.1.0"

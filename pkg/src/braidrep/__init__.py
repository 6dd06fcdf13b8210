"""Exact braid group representations built from multiset-permutation orbits."""

__version__ = "0.1.0"

from .scalars import GaussianRational, Scalar, parse_scalar, T, I, ONE, ZERO  # noqa: E402
from .orbit import orbit_generate, orbit_cardinality, sigma_k, complement_tuple  # noqa: E402
from .monomial import MonomialMatrix, DenseMatrix, dense_rank  # noqa: E402
from .rep import (  # noqa: E402
    QTable,
    Representation,
    BraidWord,
    build_generic,
    build_phi_m,
    build_standard,
    build_standard_orbit,
    verify_braid_relations,
    classify_adjointness,
    parse_braid_word,
    evaluate_word,
)
from .analysis import (  # noqa: E402
    separation_check,
    certify_irreducible,
    commutant_dimension,
    corank,
    corank_closed_form,
    check_standard_equivalence,
)

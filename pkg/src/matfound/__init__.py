"""Matroid foundation decompositions over pastures, with a brute-force
representation oracle.

The public surface re-exports the main operations of each module; see the
module docstrings for details.
"""

from .errors import GuardError, IntegrityError
from .smallfield import FieldTable, make_field, mat_rank
from .matroids import (
    EmbeddedMinorSite,
    ExchangeError,
    Matroid,
    catalog,
    fano_minor_presence,
    from_bases,
    from_matrix,
    is_isomorphic_small,
)
from .pastures import (
    FinitePasture,
    InfiniteTarget,
    admits_morphism,
    hom_count_factor,
    hom_enumerate,
    is_isomorphic,
    named_pasture,
    pasture_of_field,
    product,
    quotient,
    resolve_target,
    tensor,
)
from .crossratio import (
    Chirotope,
    GPFunction,
    Hexagon,
    HexSym,
    build_hexagons,
    eval_cross_ratio,
    gp_from_matrix,
    hexsym_from_anchor,
    omega_status,
    validate_chirotope,
)
from .foundation import (
    DyadicLift,
    FoundationDecomposition,
    RelationEdge,
    RepresentationClass,
    check_positive_orientation,
    classify,
    foundation,
    harvest_relations,
    hom_count,
    lift_orientation,
    monodromy_components,
    representable_over,
)
from .oracle import enumerate_representations, rescaling_classes

__all__ = [name for name in dir() if not name.startswith("_")]

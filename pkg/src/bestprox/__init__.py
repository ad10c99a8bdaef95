"""Best proximity points of cyclic contractions, convexity moduli and UC-type property searches."""
from .errors import (
    BestProxError, BudgetError, CatalogError, DomainError, MapIntegrityError, NormPointMismatch,
    PreconditionError, UnestimableRegion,
)
from .geometry import (
    L1, L2, LINF, PRODUCT, Blocks, Norm, Planar, lp, metric, norm_eval, parse_norm, sum_metric,
)
from .regions import (
    DistanceEstimate, ProductRegion, Region, corpus_pair, corpus_region, midpoint_ball_inclusion,
    point_to_set_distance, set_distance,
)
from .convexity import (
    ModulusCurve, PhiFunction, check_positive_property, check_uc_about_phi,
    check_uniformly_convex_set, directional_modulus, example39_phi, modulus_curve,
    modulus_of_convexity,
)
from .ucprops import (
    FalsificationVerdict, SequenceFamily, boundedness_harness, buc_falsify, cauchy_criterion_check,
    corpus_family, limit_norm_harness, uc_falsify, ucstar_falsify,
)
from .solver import (
    CoupledMapDef, CyclicMapDef, IterationTrace, best_proximity_point, check_iterate_bounds,
    corpus_coupled, corpus_map, coupled_solve, coupled_to_cyclic, iterate, verify_contraction,
    verify_cyclic,
)

__version__ = "0.1.0"

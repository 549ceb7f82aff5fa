"""Plan projection over convex sets of distributions represented as affine-trees."""

from .abstraction import (
    BranchGroup,
    bundle_branches,
    combine_branches,
    compose_branches,
    inter_abstract,
    intra_abstract,
    seq_abstract,
)
from .actions import (
    AbstractAction,
    AbstractBranch,
    AbstractEffect,
    PrimitiveAction,
    PrimitiveBranch,
    PrimitiveEffect,
    action_instantiates,
    apply_primitive_dist,
    apply_primitive_state,
    effect_compose,
    effect_instantiates,
    effect_union,
    normalize_conditions,
    sample_instantiation,
    to_abstract,
    validate_abstract,
    validate_primitive,
)
from .credal import (
    Distribution,
    EUInterval,
    Interval,
    StateSpace,
    UtilityFunction,
    dist_mix,
    interval_add,
    interval_mul,
    interval_subsumes,
    parse_rational,
)
from .errors import (
    ActionValidationError,
    AffinePlannerError,
    AffineVectorError,
    DomainError,
    InstantiationError,
    NotStandardizableError,
    OracleSizeError,
    PairingError,
    TreeValidationError,
    UnsupportedRuleError,
    ValidationReport,
)
from .projection import (
    FiniteProjection,
    Plan,
    indicator_set,
    indicator_state,
    pr1,
    pr2,
    pr3,
    project_plan,
)
from .tree import (
    FiniteLeaf,
    IntervalMassAssignment,
    MassAssignment,
    SetLeaf,
    Star,
    StateLeaf,
    depth,
    flatten,
    from_belief,
    from_distribution,
    from_ima,
    leaf_count,
    merge_branches,
    merge_stars,
    sample_member,
    standardize,
    validate,
)
from .valuation import dominates, eliminate_dominated, eui

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Exact best-proximity-pair computations on finite ultrametric spaces."""

from .core import (
    BallNode,
    Space,
    Violation,
    ball_tree,
    closed_ball,
    diameter,
    dist_point_set,
    dist_set_set,
    find_violations,
    is_ball,
    load_space,
    open_ball,
    space_from_json,
    sphere,
    subspace,
    validate_ultrametric,
)
from .errors import (
    DomainMismatch,
    EmptySetError,
    GenerationExhausted,
    LemmaViolation,
    NoProperBall,
    PoolTooShallow,
    PreconditionFailed,
    RatParseError,
    SpaceFormatError,
    TheoremViolation,
    UltrametricError,
    UmxError,
    UnknownLabelError,
)
from .kernels import BACKEND
from .rat import format_rat, parse_rat

__version__ = "0.1.0"

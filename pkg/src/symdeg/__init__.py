"""Symmetric degenerations of representations of symmetric type-A quivers.

The combinatorial core works with isoclasses only: interval modules, the
Auslander-Reiten quiver, Hom and Ext dimensions and the Hom order.  On top of
it, :func:`build_chain` produces explicit chains of isotropic reductions
between ε-classes, and :mod:`symdeg.oracle` re-checks everything on matrices.
"""

__version__ = "0.1.0"

from .arquiver import ARQuiver, ar_quiver
from .chain import Chain, ChainStep, HasseDiagram, StepKind, build_chain, hasse, validate_chain
from .errors import (
    IncompatibleOrientation,
    InconsistentPoint,
    InternalError,
    NegativeWeightEntry,
    NoRealPoint,
    NoSurjection,
    NotDegeneration,
    NotEmbeddable,
    NotIsotropic,
    ParseError,
    PreconditionViolated,
    SymdegError,
)
from .generic import (
    Embeddability,
    GenericQuotient,
    can_embed_isotropically,
    generic_epsilon_subquotient,
    generic_kernel,
    generic_quotient,
)
from .quiver import Direction, Interval, SymmetricQuiver, compatible_orientations
from .rep import (
    EpsilonContext,
    RepClass,
    delta,
    ext_dim,
    hom_dim,
    is_delta_fixed,
    is_epsilon_admissible,
    leq_hom,
    multiplicity,
    nabla_rep,
)

__all__ = [
    "ARQuiver",
    "Chain",
    "ChainStep",
    "Direction",
    "Embeddability",
    "EpsilonContext",
    "GenericQuotient",
    "HasseDiagram",
    "IncompatibleOrientation",
    "InconsistentPoint",
    "InternalError",
    "Interval",
    "NegativeWeightEntry",
    "NoRealPoint",
    "NoSurjection",
    "NotDegeneration",
    "NotEmbeddable",
    "NotIsotropic",
    "ParseError",
    "PreconditionViolated",
    "RepClass",
    "StepKind",
    "SymdegError",
    "SymmetricQuiver",
    "ar_quiver",
    "build_chain",
    "can_embed_isotropically",
    "compatible_orientations",
    "delta",
    "ext_dim",
    "generic_epsilon_subquotient",
    "generic_kernel",
    "generic_quotient",
    "hasse",
    "hom_dim",
    "is_delta_fixed",
    "is_epsilon_admissible",
    "leq_hom",
    "multiplicity",
    "nabla_rep",
    "validate_chain",
]

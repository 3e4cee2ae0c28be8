"""Exact computations in the birational automorphism group of a nodal quartic threefold."""

__version__ = "0.1.0"

from .dynamics import (  # noqa: E402
    Aut,
    DegreeVector,
    Line,
    PairPoint,
    Point,
    action_matrix,
    apply,
    apply_word,
    compose,
)
from .incidence import QuarticIncidence, clusters, make_config, validate  # noqa: E402
from .untwist import detect_centers, check_admissible, untwist, untwist_step  # noqa: E402
from .words import ClusterElement, cluster_normal_form, equal, free_reduce  # noqa: E402

__all__ = [
    "Aut",
    "ClusterElement",
    "DegreeVector",
    "Line",
    "PairPoint",
    "Point",
    "QuarticIncidence",
    "action_matrix",
    "apply",
    "apply_word",
    "check_admissible",
    "cluster_normal_form",
    "clusters",
    "compose",
    "detect_centers",
    "equal",
    "free_reduce",
    "make_config",
    "untwist",
    "untwist_step",
    "validate",
]

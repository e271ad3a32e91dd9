"""Exact Hall algebra computations for quiver representations over small
prime fields: the classical Hall algebra of the module category, its
derived counterpart with rational structure constants, and the supporting
calculus of finitely supported functions on locally finite homotopy types.
"""

__version__ = "0.1.0"

from .backend import BACKEND
from .config import Bounds, QuiverConfig, load_quiver_config, parse_quiver_config
from .derived import ChainMap, Complex, DerivedCategory, GradedObject
from .errors import (
    ConfigError,
    HallAlgError,
    LabelError,
    MismatchError,
    ResourceBoundError,
)
from .fpmatrix import PrimeField, kernel_basis, rank, solve
from .hall_classical import ClassicalHall, HallElement
from .hall_derived import DerivedHall
from .homotopy import (
    FiberPresentation,
    LFMap,
    LFType,
    is_proper,
    pullback,
    pushforward,
    pushforward_via_fibers,
)
from .labels import parse_class, parse_graded, parse_label
from .quiver import Quiver, linear_quiver
from .reps import (
    Heart,
    IsoClass,
    Rep,
    RepMorphism,
    aut_order,
    direct_sum,
    ext1_dim,
    euler_form,
    hom_basis,
    indecomposables,
    is_indecomposable,
    simple_rep,
    subreps,
    zero_rep,
)

"""Quaternion-valued positive definite functions on abelian groups.

Positive definiteness is decided through the complex adjoint of the Gram
matrix; the extreme points (quaternionic characters) are sampled into a
dictionary from which representing measures are synthesised and
recovered.
"""

from .characters import QCharacter, dual_dictionary, is_character, slice_of_range
from .errors import QPDError
from .group import FiniteGroup, ZWindow, parse_group
from .measures import (
    AtomicMeasure,
    measure_distance,
    nonuniqueness_witness,
    recover,
    synthesize,
    unique_representation_exp2,
)
from .pdf import PDVerdict, QFunction, is_positive_definite, project_pdf
from .quat import I1, I2, I3, ImaginaryUnit, Quaternion

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "FiniteGroup",
    "I1",
    "I2",
    "I3",
    "ImaginaryUnit",
    "PDVerdict",
    "QCharacter",
    "QFunction",
    "QPDError",
    "Quaternion",
    "ZWindow",
    "dual_dictionary",
    "is_character",
    "is_positive_definite",
    "measure_distance",
    "nonuniqueness_witness",
    "parse_group",
    "project_pdf",
    "recover",
    "slice_of_range",
    "synthesize",
    "unique_representation_exp2",
]

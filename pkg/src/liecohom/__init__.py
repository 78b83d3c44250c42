"""Second cohomology, central extensions and Schur multipliers of finite Lie rings."""

__version__ = "0.1.0"

from .abgroup import AbHom, FinAbGroup, Subgroup, invariant_factors, snf
from .cohomology import Cocycle, H2Group, class_of, coboundary_from, h2, is_cocycle
from .extensions import (CentralExtension, are_equivalent, brute_equivalent, classify_extensions,
                         cocycle_from_extension, extension_from_cocycle, is_split, section_of)
from .fiveterm import check_five_term
from .liering import LieIdeal, LieRing, abelian, center, derived, heisenberg, lie_new
from .schur import exterior_square, schur_multiplier

"""Finite groups that act freely and isometrically on spheres.

Build them from invariant tuples, recognise them from Cayley tables, and
certify a fixed-point-free orthogonal representation.
"""

from __future__ import annotations

from .builders import (
    StructuredGroup,
    binary_dihedral,
    build_tuple,
    cyclic,
    find_outer_involution,
    quaternion,
    sl2_3,
    sl2_5,
)
from .constructions import adjoin_order4, direct_product, semidirect_product
from .group import (
    Group,
    GroupHom,
    Subgroup,
    center,
    centralizer,
    derived_subgroup,
    group_from_table,
    normalizer,
    odd_core,
    quotient_group,
    subgroup_generated,
    sylow_subgroup,
)
from .isomorphism import is_isomorphic
from .recognition import ClassificationResult, MetacyclicDecomposition, classify, invariants_equal, metacyclic_decompose, necessary_conditions
from .representations import RealRep, free_representation, induce_rep, verify_free
from .structure import ClassEquationSolution, is_binary_dihedral, shape_of_2group, solve_class_equation
from .tables import format_table, parse_table, read_table, write_table
from .tuples import SpaceFormTuple, enumerate_tuples, format_tuple, parse_tuple, validate_tuple
from .units import UnitGroup, UnitSubgroup, all_subgroups, parse_unit_subgroup, unit_group
from .wolf import WolfTypeIIParams, build_wolf_II, duplication_report

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]

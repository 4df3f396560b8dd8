"""Equivariant Segal objects and classifying diagrams of finite G-categories, checked by enumeration."""

__version__ = "0.1.0"

from .cat import (EquivalenceReport, FinCat, Functor, Groupoid, check_equivalence, codiscrete_groupoid,
                  groupoid_pullback, maximal_subgroupoid, one_object, poset_chain, power_category,
                  walking_isomorphism)
from .errors import LevelOutOfRange, TruncationExceeded, ValidationError
from .gcat import GCategory, GFunctor, fixed_category, g_objects_category, trivial_action, validate_gcategory
from .group import (FiniteGroup, GSet, Subgroup, adjunction_check, coset_gset, cyclic_group, enumerate_gmaps,
                    fixed_points, subgroups, symmetric_group, validate_group)
from .segal import (RelativeGCategory, SegalGObject, check_complete, check_segal, classification_diagram,
                    classifying_diagram, homotopy_category, homotopy_equivalences, mapping_gspace, segal_map)
from .simplicial import TruncatedSGSet, TruncatedSSet, nerve, spine, standard_simplex
from .cellular import CellularityReport, check_filtered_colimit, check_fixed_tensor, check_pushout

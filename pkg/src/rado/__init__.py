"""Count critical points of piecewise-linear functions on triangulated surfaces.

Valences come from sign changes around vertex links; the counting identities
relating them to Euler characteristics, boundary behaviour and level-set
topology are checked exactly with rational arithmetic.
"""

from .classify import (BoundaryRestriction, ClassificationSummary, Kind, VertexClassification,
                       classify_all, classify_vertex, hopf_index, valence)
from .errors import RadoError
from .field import GenericityMode, ScalarField, SignRule, TiePolicy, attach_field, double_field
from .mesh import Mesh, build_mesh, double, euler_characteristic, homology_z2
from .network import counting_identity, extract_level_network, network_euler, slice_bound
from .regions import annulus_check, clip, quotient_constant_boundary, region_euler
from .verify import (TheoremReport, verify_all, verify_boundary_valence, verify_closed,
                     verify_general, verify_inequality, verify_interval, verify_interval_limit,
                     verify_maxwell, verify_perturbation_stability, verify_quotient, verify_slices)

__version__ = "0.1.0"

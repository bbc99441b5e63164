"""Exact polyhedral computations around minimal faces, Motzkin decompositions
and generalized Minkowski sets, with piecewise-linear convex functions handled
through their epigraphs."""

from .epigraph import (PLFunction, SubdifferentialRange, SubdifferentialSet, epi,
                       from_epigraph, lin_f, polar_epi_sublinear, recession_function,
                       subdifferential_at, subdifferential_range, sublinear_shift,
                       verify_motzkin_function_criteria, verify_sublinear_shift_criterion)
from .errors import (AffineFlat, DimensionMismatch, DomainNotConeAt, EmptyPolyhedron,
                     InvariantViolation, NotACone, NotAFace, NotAMember, NotInDomain,
                     NotSublinear, NotSupplementary, PolyconvexError, PreconditionError,
                     TooLarge)
from .linalg import Q, Subspace, qvec
from .lp import Infeasible, Optimal, Unbounded, lp_maximize
from .polyhedron import (Face, canonicalize, dd_h_to_v, dd_v_to_h, enumerate_faces_oracle,
                         set_equal, subset)
from .report import Report
from .representation import HPolyhedron, VPolyhedron
from .structure import (ConeUnion, MinimalFaceSet, MotzkinDecomposition, face_equivalence_report,
                        gm_synthesize, is_generalized_minkowski, lineality_space, minimal_faces,
                        motzkin_decompose, normal_cone_at, pareto_membership, polar_cone,
                        project_onto, rbd_slice_check, recession_cone, slice, total_normal_cone,
                        translated_cone_apex, verify_motzkin_normal_criteria)

__version__ = "0.1.0"

__all__ = [
    "AffineFlat",
    "ConeUnion",
    "DimensionMismatch",
    "DomainNotConeAt",
    "EmptyPolyhedron",
    "Face",
    "HPolyhedron",
    "Infeasible",
    "InvariantViolation",
    "MinimalFaceSet",
    "MotzkinDecomposition",
    "NotACone",
    "NotAFace",
    "NotAMember",
    "NotInDomain",
    "NotSublinear",
    "NotSupplementary",
    "Optimal",
    "PLFunction",
    "PolyconvexError",
    "PreconditionError",
    "Q",
    "Report",
    "SubdifferentialRange",
    "SubdifferentialSet",
    "Subspace",
    "TooLarge",
    "Unbounded",
    "VPolyhedron",
    "canonicalize",
    "dd_h_to_v",
    "dd_v_to_h",
    "enumerate_faces_oracle",
    "epi",
    "face_equivalence_report",
    "from_epigraph",
    "gm_synthesize",
    "is_generalized_minkowski",
    "lin_f",
    "lineality_space",
    "lp_maximize",
    "minimal_faces",
    "motzkin_decompose",
    "normal_cone_at",
    "pareto_membership",
    "polar_cone",
    "polar_epi_sublinear",
    "project_onto",
    "qvec",
    "rbd_slice_check",
    "recession_cone",
    "recession_function",
    "set_equal",
    "slice",
    "subdifferential_at",
    "subdifferential_range",
    "sublinear_shift",
    "subset",
    "total_normal_cone",
    "translated_cone_apex",
    "verify_motzkin_function_criteria",
    "verify_motzkin_normal_criteria",
    "verify_sublinear_shift_criterion",
]

"""Exact-arithmetic machinery for affine metric geometry.

Quadratic forms over small finite fields and the rationals, their
orthogonal and weak orthogonal groups, rank-one maps (transvections and
dilatations), the homogeneous dual model of the affine group, the lift and
drop between forms on V and forms on F x V*, and exhaustive verification
sweeps for the classification of which lifted forms' weak groups realise
the motion groups.

Everything is exact: finite fields use small-int tables, the rationals use
`fractions.Fraction`; enumeration sizes are guarded by a budget
(`METRIC_AFFINE_BUDGET`).
"""

from .fields import GF2, GF3, GF4, GF5, GF7, QQ, Field, field_make
from .linalg import (Mat, Singular, annihilator, kernel_basis, mat_invert,
                     outer, pairing, rank, rref, span_contains,
                     transpose_map, unit_vector, vec)
from .quadform import (NotReflectable, QForm, all_vectors, enumerate_forms,
                       form_from_text, form_to_text, is_isometry,
                       is_nondegenerate, poly_str, polar, polar_inverse,
                       polar_map, qf_equal, qf_eval, qf_proportional,
                       qf_pullback, qf_rank, qf_scale, radical_basis,
                       reflection)
from .groups import (BudgetExceeded, DEFAULT_BUDGET, GroupSet,
                     HARD_BUDGET_CEILING, closure, congruence_orbit,
                     enumerate_gl, group_budget, group_equal, is_subgroup,
                     order_gl, orthogonal_group, ReflectionStatus,
                     reflection_generation_status, weak_orthogonal_group)
from .transvect import (DeltaMap, DirectionCase, KIND_DILATATION,
                        KIND_IDENTITY, KIND_TRANSVECTION, NotInvertible,
                        annihilator_transvections_in_weak, classify_direction,
                        delta_group, delta_make, delta_orth,
                        scaled_transvection_never_weak)
from .homog import (AffineMap, DegeneratePolarForm, HomogModel, NotDroppable,
                    RoundtripReport, affine_reflection, drop, dual_matrix,
                    dual_matrix_preimage, homog_model, lift,
                    motion_group_beta, motion_group_dual, point_matrix,
                    reflection_correspondence, roundtrip_checks)
from .classify import (DyadReport, MODE_MOTION, MODE_WEAK, MainPropReport,
                       ProjectiveReport, QuadricReport, TableReport,
                       SUPPORTED_TABLES, dyad_report, dyad_satisfies,
                       projective_reduce, quadric_duality_check,
                       quadric_points, reproduce_table, solve_for_qtilde,
                       verify_main_prop, verify_projective_theorem)

__version__ = "0.1.0"

"""Exact-arithmetic toolkit for homogeneous structures on symplectic manifolds.

Everything is computed over Q or Q(x1, ..., xm): invariant-class
decompositions of torsion- and cotorsion-like tensors, infinitesimal-model
verification with the Nomizu and transvection constructions, Bianchi
classification of the resulting 3-dimensional algebras, and symbolic
chart-level verification of Fedosov and parallelism conditions.
"""

from .rationals import ParseError, PoleError, Polynomial, Rational, RationalFunction, parse_ratfun
from .reporting import Check, Report
from .symplectic import (
    COV, CON, SymplecticSpace, Tensor,
    change_basis, contract_s13, contract_t12, contract_t13,
    cotorsion_lower, cotorsion_raise, cyclic_sum,
    is_symplectic_matrix, musical_flat, musical_sharp,
    tensor_from_json, tensor_to_json, torsion_lower, torsion_raise,
)
from .decomposition import (
    COTORSION_LABELS, SUBMODULE_LABELS, TORSION_LABELS,
    DecompositionResult, SubmoduleBasis,
    ambient_dimension, build_basis, class_predicate, closed_form_dimension,
    cotorsion_to_torsion, covector_contraction, covector_to_cotorsion,
    cyclic_symmetrization, decompose_cotorsion, decompose_torsion,
    dimension_table, expected_dimension, omega_wedge, omega_wedge_section_scale,
    submodule_dimension, symplectify_torsion, threeform_part,
)
from .models import (
    BianchiType, InfinitesimalModel, LieAlgebraPresentation, ModelError,
    bianchi_classify, check_model_axioms, derivation_action,
    model_from_json, model_from_pair, model_stabilizer_algebra, model_to_json,
    nomizu_algebra, pair_from_model, presentation_from_json, presentation_to_json,
    push_tensor, standard_omega_tensor, transvection_algebra,
    transvection_subalgebra, trivial_model, verify_model_isomorphism,
)
from .charts import (
    Chart, ChartFormatError, HamiltonianReport, NotLinearTypeError,
    ObstructionVerdict, chart_curvature, chart_from_json, chart_to_json,
    chart_torsion, covariant_derivative, emend_chart_signs, evaluate_matrix,
    evaluate_tensor, hamiltonian_oneform, integrability_check, lie_bracket,
    lie_derivative_omega, linear_type_structure, load_chart_file,
    load_example, make_chart, metric_obstruction, model_at_point,
    omega_is_closed, omega_tensor, symplectic_basis_matrix,
    verify_as_conditions, verify_chart_structure, verify_linear_type_suite,
    xi_perp_field,
)

__version__ = "0.1.0"

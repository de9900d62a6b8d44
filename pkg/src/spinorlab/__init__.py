"""spinorlab: exact Clifford algebra arithmetic, spin groups, and the
spinor coordinatization of the plane generators of neutral quadrics."""

from .blades import (
    INTERLEAVED,
    PLAIN,
    Multivector,
    Signature,
    blade_grade,
    blade_indices,
    blade_product,
    mask_from_indices,
    volume_element,
    volume_square,
)
from .atlas import (
    AlgebraClass,
    QuaternionUnitPair,
    center_structure,
    classify,
    descriptor,
    even_subalgebra_signature,
    karoubi_factorization,
    quaternion_split,
    tensor_class,
    unit_pair_for,
)
from .spin import (
    RelationReport,
    SpinElement,
    apply_rotation,
    check_relations,
    is_lipschitz,
    is_spin,
    is_spin_plus,
    pfaffian,
    random_spin_element,
    reconstruct_from_low_grade,
    spin_from_vectors,
    spin_norm,
)
from .matrices import (
    XiMatrix,
    build_xi,
    build_xi_symbolic,
    neutral_signature,
    point_element,
    quadratic_form,
    rep_even_element,
    rep_multivector,
    xi_square_check,
)
from .geometry import (
    NormalizeResult,
    PlaneGenerator,
    PointClass,
    ReductionReport,
    SpinorCoords,
    classify_point,
    generator_to_spinor,
    independent_system,
    kernel_spinors,
    motion_on_points,
    motion_on_spinors,
    normalize,
    reduction_identities,
)
from .errors import InvariantViolation

__version__ = "0.1.0"

__all__ = [
    "AlgebraClass",
    "INTERLEAVED",
    "InvariantViolation",
    "Multivector",
    "NormalizeResult",
    "PLAIN",
    "PlaneGenerator",
    "PointClass",
    "QuaternionUnitPair",
    "RelationReport",
    "ReductionReport",
    "Signature",
    "SpinElement",
    "SpinorCoords",
    "XiMatrix",
    "apply_rotation",
    "blade_grade",
    "blade_indices",
    "blade_product",
    "build_xi",
    "build_xi_symbolic",
    "center_structure",
    "check_relations",
    "classify",
    "classify_point",
    "descriptor",
    "even_subalgebra_signature",
    "generator_to_spinor",
    "independent_system",
    "is_lipschitz",
    "is_spin",
    "is_spin_plus",
    "karoubi_factorization",
    "kernel_spinors",
    "mask_from_indices",
    "motion_on_points",
    "motion_on_spinors",
    "neutral_signature",
    "normalize",
    "pfaffian",
    "point_element",
    "quadratic_form",
    "quaternion_split",
    "random_spin_element",
    "reconstruct_from_low_grade",
    "reduction_identities",
    "rep_even_element",
    "rep_multivector",
    "spin_from_vectors",
    "spin_norm",
    "tensor_class",
    "unit_pair_for",
    "volume_element",
    "volume_square",
    "xi_square_check",
]

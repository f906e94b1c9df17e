"""Support posets, product-coprimality, and rank recovery for class-data models."""

from .claborn import (
    RelationSet,
    claborn_model,
    d1_relations,
    d2_relations,
    d3_relations,
    gen_d1,
    gen_d2,
    gen_d3,
)
from .cones import (
    GeneratorSet,
    extract_positive_basis,
    is_positive_basis,
    max_weak_reay,
)
from .errors import (
    DimensionError,
    ModelFormatError,
    PreconditionError,
    ResourceLimitError,
    StructureError,
)
from .model import (
    Model,
    ValidationReport,
    dumps_model,
    enumerate_v,
    load_model,
    loads_model,
    model_from_dict,
    model_to_dict,
    save_model,
    sort_supports,
    transform,
    v_membership,
    validate,
)
from .rank import (
    ReayChain,
    find_inverse_basis,
    inv_cone,
    inv_enum,
    is_self_inverse,
    max_reay_chain,
    recover_rank,
)
from .ratlin import (
    cone_member,
    determinant,
    format_rational,
    format_vector,
    linear_rank,
    lp_feasible,
    parse_rational,
    parse_vector,
    smith_normal_form,
    strict_zero_combination,
)
from .semilattice import (
    divides,
    extend_iso,
    find_iso,
    is_product_proper,
    meet,
    mprop,
    nu,
    product_coprime_raw,
    product_coprime_supports,
    theta,
)

__version__ = "0.1.0"

__all__ = [
    "DimensionError",
    "GeneratorSet",
    "Model",
    "ModelFormatError",
    "PreconditionError",
    "ReayChain",
    "RelationSet",
    "ResourceLimitError",
    "StructureError",
    "ValidationReport",
    "claborn_model",
    "cone_member",
    "d1_relations",
    "d2_relations",
    "d3_relations",
    "determinant",
    "divides",
    "dumps_model",
    "enumerate_v",
    "extend_iso",
    "extract_positive_basis",
    "find_inverse_basis",
    "find_iso",
    "format_rational",
    "format_vector",
    "gen_d1",
    "gen_d2",
    "gen_d3",
    "inv_cone",
    "inv_enum",
    "is_positive_basis",
    "is_product_proper",
    "is_self_inverse",
    "linear_rank",
    "load_model",
    "loads_model",
    "lp_feasible",
    "max_reay_chain",
    "max_weak_reay",
    "meet",
    "model_from_dict",
    "model_to_dict",
    "mprop",
    "nu",
    "parse_rational",
    "parse_vector",
    "product_coprime_raw",
    "product_coprime_supports",
    "recover_rank",
    "save_model",
    "smith_normal_form",
    "sort_supports",
    "strict_zero_combination",
    "theta",
    "transform",
    "v_membership",
    "validate",
]

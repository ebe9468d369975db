"""Brute-force King stability for representations of quivers with potential."""
from .presentation import (
    Arrow,
    QuiverPresentation,
    cyclic_derivative,
    delete_vertices,
    format_polynomial,
    format_quiver,
    make_presentation,
    parse_quiver,
)
from .modules import (
    FIELDS,
    Field,
    ModuleRep,
    StabilityVerdict,
    check_module,
    cokernel,
    direct_sum,
    enumerate_modules,
    enumerate_stables,
    homomorphisms,
    is_semistable,
    is_stable,
    isomorphic,
    kernel,
    load_module,
    module_to_json,
    stability,
    submodules,
    theta_pairing,
)

__all__ = [
    "Arrow",
    "QuiverPresentation",
    "cyclic_derivative",
    "delete_vertices",
    "format_polynomial",
    "format_quiver",
    "make_presentation",
    "parse_quiver",
    "FIELDS",
    "Field",
    "ModuleRep",
    "StabilityVerdict",
    "check_module",
    "cokernel",
    "direct_sum",
    "enumerate_modules",
    "enumerate_stables",
    "homomorphisms",
    "is_semistable",
    "is_stable",
    "isomorphic",
    "kernel",
    "load_module",
    "module_to_json",
    "stability",
    "submodules",
    "theta_pairing",
]

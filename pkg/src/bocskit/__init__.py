"""Directed bocses over quivers: structure maps, representations, duals and classification."""

from .algebra import Arrow, Path, PathAlgebra, Quiver, TensorAlgebra, build_path_algebra, trivial
from .bocs import (
    OMEGA,
    Bocs,
    BocsParseError,
    DiffBiquiver,
    ValidationReport,
    check_coalgebra,
    format_biquiver,
    opposite,
    parse_biquiver,
    structure_maps,
    validate,
)
from .classify import (
    ClassificationReport,
    CurvelikeCandidate,
    NormalizationMove,
    apply_constraints,
    canonical_biquiver,
    classify,
    enumerate_candidates,
    normalize_class,
    ringel_pairing,
)
from .koszul import (
    DimReport,
    DualConstructionError,
    DualPresentation,
    hom_ext_matrices,
    koszul_dual,
    regularize,
    right_algebra_dim,
    ringel_dual,
)
from .rep import (
    BocsComplex,
    BocsModule,
    BocsMorphism,
    LModule,
    box_complex,
    check_morphism,
    check_N_morphism,
    check_N_object,
    check_R_morphism,
    check_R_object,
    compose,
    diamond_complex,
    phi,
    psi,
    verify_complex,
    xi_expand,
)

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "Bocs",
    "BocsComplex",
    "BocsModule",
    "BocsMorphism",
    "BocsParseError",
    "ClassificationReport",
    "CurvelikeCandidate",
    "DiffBiquiver",
    "DimReport",
    "DualConstructionError",
    "DualPresentation",
    "LModule",
    "NormalizationMove",
    "OMEGA",
    "Path",
    "PathAlgebra",
    "Quiver",
    "TensorAlgebra",
    "ValidationReport",
    "apply_constraints",
    "box_complex",
    "build_path_algebra",
    "canonical_biquiver",
    "check_N_morphism",
    "check_N_object",
    "check_R_morphism",
    "check_R_object",
    "check_coalgebra",
    "check_morphism",
    "classify",
    "compose",
    "diamond_complex",
    "enumerate_candidates",
    "format_biquiver",
    "hom_ext_matrices",
    "koszul_dual",
    "normalize_class",
    "opposite",
    "parse_biquiver",
    "phi",
    "psi",
    "regularize",
    "right_algebra_dim",
    "ringel_dual",
    "ringel_pairing",
    "structure_maps",
    "trivial",
    "validate",
    "verify_complex",
    "xi_expand",
    "data_path",
]


def data_path(name: str) -> str:
    """Path of a bundled example file such as ``run2C.bocs``."""
    from importlib.resources import files

    return str(files(__name__) / "data" / name)

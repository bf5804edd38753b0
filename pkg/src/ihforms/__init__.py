"""Exact discrete Hodge theory on triangulated manifolds.

Decides intrinsic harmonicity of closed cochains, finds integral
cross-sections of divergence-free fluxes and tests flatness of circle
bundles.  All arithmetic is exact; every verdict carries a certificate that
is re-checked before it is returned.
"""

from ._kernels import BACKEND
from .bundles import (
    CircleBundle,
    FlatnessReport,
    FlatnessWitness,
    NotFlat,
    decide_flat,
    euler_cochain,
    flatness_report,
    gysin_betti,
    nonorientable_check,
)
from .complex import (
    CORPUS,
    Cochain,
    ComplexError,
    SimplicialComplex,
    build_complex,
    dual_structure,
    generate,
)
from .dec import DiagonalStar, harmonic_representative, hodge_split, laplacian_kernel_dim
from .dynamics import cross_section, cycle_decomposition, flux_from_form, total_asymptotic_cycle
from .exact_linalg import VerificationError, lp_feasible, rational_solve, smith
from .harmonic import duality_bridge, ih_by_weights, transversal_certificate
from .homology import (
    betti_numbers,
    class_of,
    cohomology_group,
    cup,
    homology_group,
    is_torsion,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CORPUS", "CircleBundle", "Cochain", "ComplexError", "DiagonalStar", "FlatnessReport",
    "FlatnessWitness", "NotFlat", "SimplicialComplex", "VerificationError", "betti_numbers",
    "build_complex", "class_of", "cohomology_group", "cross_section", "cup", "cycle_decomposition",
    "decide_flat", "dual_structure", "duality_bridge", "euler_cochain", "flatness_report",
    "flux_from_form", "generate", "gysin_betti", "harmonic_representative", "hodge_split",
    "homology_group", "ih_by_weights", "is_torsion", "laplacian_kernel_dim", "lp_feasible",
    "nonorientable_check", "rational_solve", "smith", "total_asymptotic_cycle",
    "transversal_certificate",
]

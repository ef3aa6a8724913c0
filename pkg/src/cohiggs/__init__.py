"""Exact co-Higgs determinant computations on rank-2 Schwarzenberger bundles over P^2."""
from .classification import (
    QSym2,
    RhoSym2,
    SymTangent,
    ZeroImage,
    canonicalize_pm,
    canonicalize_qc,
    canonicalize_rho,
    complete_square,
    decompose_linear_product,
    image_equal,
    image_point,
)
from .fields import (
    CoHiggsK0,
    CoHiggsK1,
    CoHiggsK2,
    CoHiggsKBig,
    determinant,
    integrable,
    phi0_for_target,
    schwarz_info,
)
from .geometry import Bundle, PointP2, SectionOk, SectionT, SectionTm1, Sym2Triple, transition
from .poly import HomogeneousForm3, Poly
from .scalars import GaussianRational, QuadExt, exact_sqrt, scalar
from .suites import THEOREMS, VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "Bundle", "CoHiggsK0", "CoHiggsK1", "CoHiggsK2", "CoHiggsKBig", "GaussianRational",
    "HomogeneousForm3", "PointP2", "Poly", "QSym2", "QuadExt", "RhoSym2", "SectionOk",
    "SectionT", "SectionTm1", "Sym2Triple", "SymTangent", "THEOREMS", "VerificationReport",
    "ZeroImage", "canonicalize_pm", "canonicalize_qc", "canonicalize_rho", "complete_square",
    "decompose_linear_product", "determinant", "exact_sqrt", "image_equal", "image_point",
    "integrable", "phi0_for_target", "run_suite", "scalar", "schwarz_info", "transition",
]

"""Desk-scale quiver Hecke algebra of type A_infinity: normal forms, segment
modules, convolution products, intertwiners and renormalized R-matrices."""

from .algebra import KLRAlgebra, a_infinity
from .modules import KLRModule, convolution, deform, segment_module, check_relations, graded_dim
from .rmatrix import (
    RMatrixResult,
    composition_report,
    renormalized_r,
    rmatrix_unnormalized,
    yang_baxter_check,
    zero_order_s,
)

__all__ = [
    "KLRAlgebra",
    "a_infinity",
    "KLRModule",
    "convolution",
    "deform",
    "segment_module",
    "check_relations",
    "graded_dim",
    "RMatrixResult",
    "rmatrix_unnormalized",
    "zero_order_s",
    "renormalized_r",
    "composition_report",
    "yang_baxter_check",
]

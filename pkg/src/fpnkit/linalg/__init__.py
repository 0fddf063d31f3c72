"""Exact linear algebra over Z, Z/n, U and SQ[k]."""

from .gf2 import gf2_in_span, gf2_rank, gf2_solve
from .homology import HomologyResult, PresentedGroup, group_invariants, homology
from .howell import howell_form, howell_rows
from .rational import q_kernel, q_rank, q_solve
from .matrix import RingMatrix, parse_matrix, parse_matrix_lines
from .smith import SmithDecomposition, int_kernel, int_solve, lattice_basis, smith, smith_normal_form
from .solve import (
    KernelAnalysis,
    SolutionSet,
    kernel_analysis,
    kernel_basis,
    kernel_generator_count,
    prune_generators,
    solve_linear,
)

__all__ = [
    "HomologyResult", "KernelAnalysis", "PresentedGroup", "RingMatrix", "SmithDecomposition",
    "SolutionSet", "gf2_in_span", "gf2_rank", "gf2_solve", "group_invariants", "homology", "howell_form", "howell_rows", "int_kernel", "int_solve",
    "kernel_analysis", "kernel_basis", "kernel_generator_count", "lattice_basis", "parse_matrix",
    "parse_matrix_lines", "prune_generators", "q_kernel", "q_rank", "q_solve", "smith", "smith_normal_form", "solve_linear",
]

# HBG - abelian invariants
from hbg.abelian.snf import (
    IntMatrix,
    SnfResult,
    abelian_hom_count,
    abelianize,
    format_snf,
    hermite_normal_form,
    in_row_lattice,
    invariants,
    smith_normal_form,
)

__all__ = [
    "IntMatrix",
    "SnfResult",
    "abelian_hom_count",
    "abelianize",
    "format_snf",
    "hermite_normal_form",
    "in_row_lattice",
    "invariants",
    "smith_normal_form",
]

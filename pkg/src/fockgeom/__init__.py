"""Vertex operators on the equivariant cohomology of framed sheaf moduli, checked exactly.

The package builds two presentations of the r-colored fermionic and bosonic
Fock spaces, one algebraic and one from fixed-point localization on the
moduli of framed torsion-free sheaves on the projective plane, and compares
them block by block in exact rational arithmetic.
"""

from .blocks import BlockMatrix, Op, block_basis, parse_source
from .fock import BosonVector, FermionVector, FixedPoint, fixed_points, inner_product
from .geometry import GeometryContext, TruncationWindow, WindowError, build_block
from .partitions import EMPTY, Partition, partitions_of
from .polynomial import ExpandedPoly, FactoredClass, LinearForm, exact_ratio

__all__ = [
    "BlockMatrix",
    "BosonVector",
    "EMPTY",
    "ExpandedPoly",
    "FactoredClass",
    "FermionVector",
    "FixedPoint",
    "GeometryContext",
    "LinearForm",
    "Op",
    "Partition",
    "TruncationWindow",
    "WindowError",
    "block_basis",
    "build_block",
    "exact_ratio",
    "fixed_points",
    "inner_product",
    "parse_source",
    "partitions_of",
]

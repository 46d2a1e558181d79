"""Equivariant mod 2 cohomology of simplicial complexes with an involution."""

from .equivariant import (
    brauer_obstruction,
    build_double_complex,
    component_map_rank,
    krasnov_test,
    spectral_pages,
    total_equivariant_dims,
)
from .gf2 import BitMatrix, Quotient, Subspace
from .simplicial import (
    InvolutiveComplex,
    SimplicialComplex,
    barycentric_subdivision,
    fixed_subcomplex,
    mod2_cohomology,
    quotient_complex,
    regularize,
)
from .smith import build_smith_sequence, harnack_thom, image_criterion, lefschetz_check
from .surfaces import (
    EnriquesLatticeInvariants,
    HodgeInput,
    SurfaceCohomologyProfile,
    brauer_dim_kummer,
    brauer_dim_surface,
    cross_check_surface,
    enriques_brauer_bounds,
    enriques_formulas,
    etale_dims_formula,
    lefschetz_euler,
)

__all__ = [
    "BitMatrix",
    "EnriquesLatticeInvariants",
    "HodgeInput",
    "InvolutiveComplex",
    "Quotient",
    "SimplicialComplex",
    "Subspace",
    "SurfaceCohomologyProfile",
    "barycentric_subdivision",
    "brauer_dim_kummer",
    "brauer_dim_surface",
    "brauer_obstruction",
    "build_double_complex",
    "build_smith_sequence",
    "component_map_rank",
    "cross_check_surface",
    "enriques_brauer_bounds",
    "enriques_formulas",
    "etale_dims_formula",
    "fixed_subcomplex",
    "harnack_thom",
    "image_criterion",
    "krasnov_test",
    "lefschetz_check",
    "lefschetz_euler",
    "mod2_cohomology",
    "quotient_complex",
    "regularize",
    "spectral_pages",
    "total_equivariant_dims",
]

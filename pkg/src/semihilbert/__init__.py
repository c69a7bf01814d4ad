"""Finite-dimensional semi-Hilbertian operator toolkit.

A positive semidefinite weight ``A`` induces the semi-inner product
``<x, y>_A = <Ax, y>``. This package computes A-adjoints, A-seminorms,
A-numerical and A-spectral radii, 2x2 block liftings, and checks a catalog
of inequalities between them on seeded random ensembles.
"""
from .block import BlockOperator, assemble, block_sharp_check, lift_weight
from .catalog import BoundReport, Operands, evaluate, list_cases, tightness
from .ensembles import EnsembleSpec, gen_operator, gen_unit_a_vector, gen_weight
from .errors import *  # noqa: F401,F403
from .radii import (
    RadiusResult,
    a_numerical_radius,
    a_spectral_radius,
    op_seminorm,
    theta_sup_product,
)
from .structure import (
    SemiOperator,
    Weight,
    bind,
    compression,
    in_BA,
    in_BA_half,
    make_weight,
    predicates,
    re_a,
    semi_inner,
    sharp,
    vec_seminorm,
)
from .suite import compare, run_suite, search_extremal

__version__ = "0.1.0"
